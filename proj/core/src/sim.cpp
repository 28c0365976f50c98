#include "gsmsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsmsim {

double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double received_power(double tx_power_watts, double distance_meters, double exponent) {
    double d = std::max(distance_meters, 1.0);
    return tx_power_watts / std::pow(d, exponent);
}

double calibrated_sensitivity(double exponent) {
    return received_power(kCalibrationTxPowerWatts, kCalibrationRangeMeters, exponent);
}

std::vector<std::pair<EntityId, double>> audible_cells(const RadioEnvironment& env,
                                                       Position receiver,
                                                       std::span<const AirFrame> broadcasts) {
    std::vector<std::pair<EntityId, double>> heard;
    for (const AirFrame& b : broadcasts) {
        double rx = env.received_power(b.tx_power, distance(receiver, b.tx_position));
        if (rx >= env.sensitivity) heard.emplace_back(b.source, rx);
    }
    std::sort(heard.begin(), heard.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return heard;
}

void Medium::add_beacon(const Beacon& b) {
    remove_beacon(b.cell);
    beacons_.push_back(b);
}

void Medium::remove_beacon(EntityId cell) {
    std::erase_if(beacons_, [cell](const Beacon& b) { return b.cell == cell; });
}

const Beacon* Medium::beacon_of(EntityId cell) const {
    for (const Beacon& b : beacons_) {
        if (b.cell == cell) return &b;
    }
    return nullptr;
}

std::vector<AirFrame> Medium::broadcast_frames() const {
    std::vector<AirFrame> frames;
    frames.reserve(beacons_.size());
    for (const Beacon& b : beacons_) {
        AirFrame f;
        f.source = b.cell;
        f.carrier = b.arfcn;
        f.tx_power = b.tx_power;
        f.tx_position = b.position;
        f.payload = lai_bytes(b.lai);
        frames.push_back(std::move(f));
    }
    return frames;
}

std::vector<Medium::Sighting> Medium::scan(const RadioEnvironment& env, Position receiver) const {
    auto frames = broadcast_frames();
    auto heard = audible_cells(env, receiver, frames);
    std::vector<Sighting> out;
    out.reserve(heard.size());
    for (const auto& [cell, rx] : heard) {
        const Beacon* b = beacon_of(cell);
        out.push_back(Sighting{cell, rx, b->arfcn, b->lai});
    }
    return out;
}

void DetRng::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t word = gen_();
        for (int b = 7; b >= 0 && i < out.size(); --b) {
            out[i++] = static_cast<std::uint8_t>(word >> (8 * b));
        }
    }
}

Simulation::Simulation(std::uint64_t seed, RadioEnvironment env) : env_(env), rng_(seed) {}

EntityId Simulation::add_entity(Entity* e) {
    e->id_ = static_cast<EntityId>(entities_.size() + 1);
    entities_.push_back(e);
    return e->id_;
}

Entity* Simulation::entity(EntityId id) const {
    if (id == 0 || id > entities_.size()) return nullptr;
    return entities_[id - 1];
}

void Simulation::schedule(Event ev) {
    if (ev.due_frame < frame_)
        throw std::invalid_argument("schedule: due_frame precedes the current frame");
    queue_.push(Queued{ev.due_frame, next_seq_++, std::move(ev)});
}

void Simulation::schedule_timer(std::uint64_t delay, EntityId target, TimerToken token) {
    schedule(Event{frame_ + delay, target, EventKind::TimerExpiry, token});
}

void Simulation::transmit(AirFrame frame, EntityId receiver) {
    frame.frame_sent = frame_;
    Entity* rx = entity(receiver);
    bool deliverable = false;
    if (rx && rx->listens_on(frame.carrier)) {
        double d = distance(frame.tx_position, rx->position());
        deliverable = env_.audible(frame.tx_power, d);
    }
    frame_log_.push_back(SentFrame{frame, receiver, deliverable});
    if (deliverable) {
        schedule(Event{frame_ + 1, receiver, EventKind::AirFrameDelivery, std::move(frame)});
    }
}

std::vector<TranscriptEvent> Simulation::run_until(std::uint64_t until) {
    std::size_t first_new = transcript_.size();
    while (!queue_.empty() && queue_.top().due <= until) {
        Queued q = queue_.top();
        queue_.pop();
        frame_ = q.due;
        Entity* target = entity(q.ev.target);
        if (target) target->handle_event(*this, q.ev);
    }
    frame_ = std::max(frame_, until);
    return {transcript_.begin() + static_cast<std::ptrdiff_t>(first_new), transcript_.end()};
}

void Simulation::emit(const Entity& who, Procedure procedure,
                      std::vector<std::pair<std::string, std::string>> attrs) {
    transcript_.push_back(TranscriptEvent{frame_, who.name(), procedure, std::move(attrs)});
}

}  // namespace gsmsim

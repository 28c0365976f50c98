#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gsmsim/bytes.hpp"
#include "gsmsim/crypto.hpp"
#include "gsmsim/l3.hpp"
#include "gsmsim/transcript.hpp"

namespace gsmsim {

using EntityId = std::uint32_t;

struct Position {
    double x = 0;
    double y = 0;
};
double distance(Position a, Position b);

// ---------------------------------------------------------------------------
// Propagation model: P_rx = P_tx / d^n, no fading. Two (power, range) data
// points pin the defaults: 0.1 W decodes out to 45.72 m (150 ft), and the
// same exponent puts the 1 kW range at ~1.5 km. Distances below 1 m are
// clamped to 1 m.

constexpr double kDefaultPathLossExponent = 2.638;
constexpr double kCalibrationTxPowerWatts = 0.1;
constexpr double kCalibrationRangeMeters = 45.72;

double received_power(double tx_power_watts, double distance_meters, double exponent);

/// Sensitivity that makes kCalibrationRangeMeters the exact maximum range
/// at kCalibrationTxPowerWatts for the given exponent.
double calibrated_sensitivity(double exponent = kDefaultPathLossExponent);

struct RadioEnvironment {
    double path_loss_exponent = kDefaultPathLossExponent;
    double sensitivity = calibrated_sensitivity(kDefaultPathLossExponent);

    double received_power(double tx_power_watts, double distance_meters) const {
        return gsmsim::received_power(tx_power_watts, distance_meters, path_loss_exponent);
    }
    bool audible(double tx_power_watts, double distance_meters) const {
        return received_power(tx_power_watts, distance_meters) >= sensitivity;
    }
};

// ---------------------------------------------------------------------------

/// Cipher state of a transmission: algorithm plus the frame number that
/// keyed the keystream. A relay that forwards ciphertext verbatim keeps
/// this intact so the far end still deciphers correctly.
struct CipherSpec {
    CipherAlgoId algo = CipherAlgoId::A5_0;
    std::uint32_t fn = 0;
    bool operator==(const CipherSpec&) const = default;
};

struct AirFrame {
    EntityId source = 0;
    std::uint32_t carrier = 0;  // ARFCN
    double tx_power = 0;        // link-budget watts (serving-cell power on uplink)
    Position tx_position;
    Bytes payload;  // encoded L3Message, possibly ciphered
    std::uint64_t frame_sent = 0;
    std::optional<CipherSpec> cipher;
};

/// Standing downlink broadcast of one cell.
struct Beacon {
    EntityId cell = 0;
    std::uint32_t arfcn = 0;
    double tx_power = 0;
    Position position;
    Lai lai;
};

/// Cells audible at a receiver position: every broadcast whose received
/// power clears the sensitivity floor, strongest first, ties broken by
/// lower entity id.
std::vector<std::pair<EntityId, double>> audible_cells(const RadioEnvironment& env,
                                                       Position receiver,
                                                       std::span<const AirFrame> broadcasts);

class Medium {
public:
    void add_beacon(const Beacon& b);
    void remove_beacon(EntityId cell);
    const Beacon* beacon_of(EntityId cell) const;

    struct Sighting {
        EntityId cell = 0;
        double rx_power = 0;
        std::uint32_t arfcn = 0;
        Lai lai;
    };
    std::vector<Sighting> scan(const RadioEnvironment& env, Position receiver) const;

    /// Beacons rendered as broadcast air frames (payload = encoded LAI).
    std::vector<AirFrame> broadcast_frames() const;

private:
    std::vector<Beacon> beacons_;  // registration order
};

// ---------------------------------------------------------------------------

struct TimerToken {
    std::uint64_t value = 0;
};
struct ActionIndex {
    std::uint64_t value = 0;
};

enum class EventKind { AirFrameDelivery, TimerExpiry, TimelineAction };

struct Event {
    std::uint64_t due_frame = 0;
    EntityId target = 0;
    EventKind kind = EventKind::TimerExpiry;
    std::variant<AirFrame, TimerToken, ActionIndex> payload;
};

class Simulation;

class Entity {
public:
    explicit Entity(std::string name) : name_(std::move(name)) {}
    virtual ~Entity() = default;

    EntityId id() const { return id_; }
    const std::string& name() const { return name_; }

    virtual void handle_event(Simulation& sim, const Event& ev) = 0;
    virtual bool listens_on(std::uint32_t /*carrier*/) const { return false; }
    virtual Position position() const { return {}; }

private:
    friend class Simulation;
    EntityId id_ = 0;
    std::string name_;
};

/// Deterministic byte/integer source: all scenario randomness flows
/// through one seeded mt19937_64 whose output sequence is pinned by the
/// standard, so runs are reproducible across platforms.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }
    std::uint32_t next_u32() { return static_cast<std::uint32_t>(gen_() >> 32); }
    void fill(std::span<std::uint8_t> out);

private:
    std::mt19937_64 gen_;
};

/// Single-threaded event loop; one instance per scenario run. Events fire
/// in (due_frame, insertion order), which is what makes two runs of the
/// same scenario byte-identical.
class Simulation {
public:
    explicit Simulation(std::uint64_t seed, RadioEnvironment env = {});

    std::uint64_t frame() const { return frame_; }
    /// GSM frame number used as cipher salt; wraps at 2^22.
    std::uint32_t fn() const { return static_cast<std::uint32_t>(frame_ % kFnModulus); }

    RadioEnvironment& environment() { return env_; }
    const RadioEnvironment& environment() const { return env_; }
    Medium& medium() { return medium_; }
    DetRng& rng() { return rng_; }

    /// Registers a non-owned entity and assigns its id.
    EntityId add_entity(Entity* e);
    Entity* entity(EntityId id) const;

    /// Throws std::invalid_argument when due_frame is in the past.
    void schedule(Event ev);
    void schedule_timer(std::uint64_t delay, EntityId target, TimerToken token);

    /// Radio transmission toward one receiver: delivered next frame when
    /// the receiver is tuned to the carrier and the received power clears
    /// the sensitivity floor; silently lost otherwise.
    void transmit(AirFrame frame, EntityId receiver);

    /// Runs every event due at or before `until`; the clock ends at
    /// `until`. Returns the transcript events emitted during this call.
    std::vector<TranscriptEvent> run_until(std::uint64_t until);

    void emit(const Entity& who, Procedure procedure,
              std::vector<std::pair<std::string, std::string>> attrs);

    const std::vector<TranscriptEvent>& transcript() const { return transcript_; }

    struct SentFrame {
        AirFrame frame;
        EntityId receiver = 0;
        bool delivered = false;
    };
    /// Every transmission attempted, delivered or not.
    const std::vector<SentFrame>& frame_log() const { return frame_log_; }

private:
    struct Queued {
        std::uint64_t due;
        std::uint64_t seq;
        Event ev;
        bool operator>(const Queued& o) const {
            return due != o.due ? due > o.due : seq > o.seq;
        }
    };

    std::uint64_t frame_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<Queued, std::vector<Queued>, std::greater<>> queue_;
    RadioEnvironment env_;
    Medium medium_;
    DetRng rng_;
    std::vector<Entity*> entities_;
    std::vector<TranscriptEvent> transcript_;
    std::vector<SentFrame> frame_log_;
};

}  // namespace gsmsim

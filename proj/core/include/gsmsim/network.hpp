#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsmsim/crypto.hpp"
#include "gsmsim/l3.hpp"
#include "gsmsim/sim.hpp"

namespace gsmsim {

struct SubscriberRecord {
    std::string imsi;  // 15 digits
    Ki ki;
    std::string msisdn;
    std::optional<AppKey> app_layer_psk;
};

/// Home register + authentication centre: permanent subscriber records,
/// one per IMSI, each with its Ki.
class Hlr {
public:
    /// Throws std::invalid_argument on duplicate IMSI or MSISDN.
    void add(SubscriberRecord rec);
    const SubscriberRecord* find_by_imsi(const std::string& imsi) const;
    const SubscriberRecord* find_by_msisdn(const std::string& msisdn) const;

private:
    std::map<std::string, SubscriberRecord> by_imsi_;
    std::map<std::string, std::string> imsi_by_msisdn_;
};

struct RegistrationPolicy {
    enum class Mode { OpenRegistration, Whitelist };
    enum class CipherPolicy { AllowA5_0, RequireA5Sim };
    Mode mode = Mode::OpenRegistration;
    std::vector<std::string> whitelist;  // IMSI prefixes, consulted in Whitelist mode only
    CipherPolicy cipher_policy = CipherPolicy::AllowA5_0;
};

bool whitelist_permits(const RegistrationPolicy& policy, std::string_view imsi);

/// Cipher negotiation from policy and handset capability; nullopt means
/// the registration is rejected with CIPHER_UNSUPPORTED.
std::optional<CipherAlgoId> select_cipher(const RegistrationPolicy& policy, const Classmark& cm);

enum class RegState { Detached, AuthPending, Registered };

struct VlrRecord {
    std::string imsi;
    std::optional<std::uint32_t> tmsi;
    Lai lai;
    std::optional<Kc> kc;  // set only in Registered
    RegState state = RegState::Detached;
    std::uint64_t last_seen_frame = 0;
    EntityId ms_entity = 0;
    EntityId serving_cell = 0;
};

struct NetworkConfig {
    Lai lai;
    RegistrationPolicy policy;
    KcInput kc_input = KcInput::Sres;
    std::string welcome_text = "Welcome";
};

class Msc;

/// Radio head of the network: owns one ARFCN, forwards uplink traffic to
/// the MSC over the wired side and transmits what the MSC hands back.
class Bts final : public Entity {
public:
    Bts(std::string name, std::uint32_t arfcn, double tx_power, Position pos)
        : Entity(std::move(name)), arfcn_(arfcn), tx_power_(tx_power), pos_(pos) {}

    void set_msc(Msc* msc) { msc_ = msc; }
    std::uint32_t arfcn() const { return arfcn_; }
    double tx_power() const { return tx_power_; }

    /// Starts broadcasting the given LAI.
    void start(Simulation& sim, const Lai& lai);

    void transmit_payload(Simulation& sim, EntityId ms, Bytes payload,
                          std::optional<CipherSpec> cipher);

    void handle_event(Simulation& sim, const Event& ev) override;
    bool listens_on(std::uint32_t carrier) const override { return carrier == arfcn_; }
    Position position() const override { return pos_; }

private:
    std::uint32_t arfcn_;
    double tx_power_;
    Position pos_;
    Msc* msc_ = nullptr;
};

/// MSC with its VLR folded in: location updating, authentication,
/// ciphering, TMSI reallocation and both SMS legs.
class Msc final : public Entity {
public:
    Msc(std::string name, Hlr& hlr, NetworkConfig cfg)
        : Entity(std::move(name)), hlr_(hlr), cfg_(std::move(cfg)) {}

    void attach_cell(Bts* bts);
    const NetworkConfig& config() const { return cfg_; }

    void on_uplink(Simulation& sim, Bts& via, const AirFrame& frame);

    /// Fresh TMSI, unique among live VLR records.
    std::uint32_t allocate_tmsi(Simulation& sim);

    const VlrRecord* vlr_record(const std::string& imsi) const;
    const std::map<std::string, VlrRecord>& vlr() const { return vlr_; }

    void handle_event(Simulation& sim, const Event& ev) override;

private:
    struct Transaction {
        enum class Phase { AwaitIdentity, AwaitAuth, AwaitCipherComplete };
        Phase phase = Phase::AwaitIdentity;
        EntityId ms = 0;
        EntityId via_cell = 0;
        LocationUpdatingRequest lur;
        std::string imsi;
        Rand rand;
        Sres expected;
        Kc kc;
        CipherAlgoId algo = CipherAlgoId::A5_0;
    };
    struct CipherCtx {
        CipherAlgoId algo = CipherAlgoId::A5_0;
        Kc kc;
    };

    void handle_lur(Simulation& sim, Bts& via, EntityId ms, const LocationUpdatingRequest& lur);
    void proceed_with_identity(Simulation& sim, Transaction& t);
    void handle_auth_response(Simulation& sim, Transaction& t, const AuthenticationResponse& resp);
    void handle_cipher_complete(Simulation& sim, Transaction& t, bool was_ciphered);
    void handle_mo_cpdata(Simulation& sim, Bts& via, EntityId ms, const CpData& cp);
    void handle_cpack(Simulation& sim, EntityId ms, const CpAck& ack);
    void reject(Simulation& sim, Transaction t, RejectCause cause);
    void send_to_ms(Simulation& sim, EntityId ms, EntityId via_cell, const L3Message& msg,
                    bool ciphered);
    Bts* cell(EntityId id) const;

    Hlr& hlr_;
    NetworkConfig cfg_;
    std::map<EntityId, Bts*> cells_;
    std::map<std::string, VlrRecord> vlr_;                 // by IMSI
    std::map<std::uint32_t, std::string> tmsi_index_;      // live TMSIs
    std::map<EntityId, std::string> imsi_by_entity_;
    std::map<EntityId, Transaction> transactions_;
    std::map<EntityId, CipherCtx> cipher_ctx_;
    std::map<EntityId, std::uint8_t> mt_next_ti_;
    std::map<std::pair<EntityId, std::uint8_t>, bool> pending_mt_;
};

/// Handset-side state visible to scenarios and tests.
struct MsState {
    std::string imsi;
    Ki ki;
    Classmark classmark;
    std::optional<EntityId> camped_cell;
    std::optional<std::uint32_t> tmsi;
    std::optional<Kc> kc;
    std::optional<CipherAlgoId> cipher;
    Position position;
    std::optional<AppKey> app_layer_psk;
};

class MobileStation final : public Entity {
public:
    static constexpr std::uint64_t kRescanToken = 1;

    MobileStation(std::string name, MsState initial, std::string msisdn,
                  KcInput kc_input = KcInput::Sres)
        : Entity(std::move(name)), st_(std::move(initial)), msisdn_(std::move(msisdn)),
          kc_input_(kc_input) {}

    const MsState& state() const { return st_; }
    const std::string& msisdn() const { return msisdn_; }
    bool powered() const { return powered_; }
    bool registered() const { return reg_ == Reg::Registered; }

    void power_on(Simulation& sim);
    void move_to(Simulation& sim, Position pos);
    /// Picks (or confirms) the strongest audible cell; a new cell triggers
    /// a location update, no audible cell detaches.
    void rescan(Simulation& sim);
    void send_sms(Simulation& sim, const std::string& dest_msisdn, const std::string& text);

    struct ReceivedSms {
        std::uint64_t frame = 0;
        std::string from;
        std::string text;
    };
    const std::vector<ReceivedSms>& inbox() const { return inbox_; }
    int welcome_count() const { return welcomes_; }

    void handle_event(Simulation& sim, const Event& ev) override;
    bool listens_on(std::uint32_t carrier) const override {
        return powered_ && camped_arfcn_ && carrier == *camped_arfcn_;
    }
    Position position() const override { return st_.position; }

private:
    enum class Reg { Idle, Registering, Registered };

    void on_air(Simulation& sim, const AirFrame& frame);
    void handle_message(Simulation& sim, const L3Message& msg);
    void start_location_update(Simulation& sim);
    void transmit(Simulation& sim, const L3Message& msg, bool ciphered);

    MsState st_;
    std::string msisdn_;
    KcInput kc_input_;
    bool powered_ = false;
    std::optional<std::uint32_t> camped_arfcn_;
    double camped_budget_power_ = 0;  // serving beacon watts; reciprocal uplink budget
    Lai camped_lai_;
    Reg reg_ = Reg::Idle;
    std::uint8_t next_mo_ti_ = 0;
    std::vector<ReceivedSms> inbox_;
    int welcomes_ = 0;
};

}  // namespace gsmsim

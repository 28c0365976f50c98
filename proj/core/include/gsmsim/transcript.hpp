#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gsmsim {

enum class Procedure {
    CellSelected,
    Detached,
    LurReceived,
    WhitelistCheck,
    IdentityRequested,
    AuthChallenge,
    AuthResponse,
    CipherMode,
    TmsiAssign,
    RegistrationDecision,
    WelcomeSent,
    MoSms,
    CpDataSent,
    CpAckSent,
    SmsDelivered,
    SmsFailed,
    Capture,
    AttackBlocked,
    RelayRewrite,
    DroppedUpstream,
    ImpersonationSent,
    ImpersonationFailed,
};

const char* procedure_name(Procedure p);

/// One log-worthy protocol step. The rendered line is produced from
/// (procedure, attrs) by the transcript grammar; attrs keep insertion
/// order so output is reproducible.
struct TranscriptEvent {
    std::uint64_t frame = 0;
    std::string entity;
    Procedure procedure = Procedure::CellSelected;
    std::vector<std::pair<std::string, std::string>> attrs;

    const std::string* attr(std::string_view key) const;
};

}  // namespace gsmsim

#include "gsmsim/transcript.hpp"

namespace gsmsim {

const char* procedure_name(Procedure p) {
    switch (p) {
        case Procedure::CellSelected: return "CELL_SELECTED";
        case Procedure::Detached: return "DETACHED";
        case Procedure::LurReceived: return "LUR_RECEIVED";
        case Procedure::WhitelistCheck: return "WHITELIST_CHECK";
        case Procedure::IdentityRequested: return "IDENTITY_REQUEST";
        case Procedure::AuthChallenge: return "AUTH_CHALLENGE";
        case Procedure::AuthResponse: return "AUTH_RESPONSE";
        case Procedure::CipherMode: return "CIPHER_MODE";
        case Procedure::TmsiAssign: return "TMSI_ASSIGN";
        case Procedure::RegistrationDecision: return "REGISTRATION_DECISION";
        case Procedure::WelcomeSent: return "WELCOME_SENT";
        case Procedure::MoSms: return "MO_SMS";
        case Procedure::CpDataSent: return "CP_DATA_SENT";
        case Procedure::CpAckSent: return "CP_ACK_SENT";
        case Procedure::SmsDelivered: return "SMS_DELIVERED";
        case Procedure::SmsFailed: return "SMS_FAILED";
        case Procedure::Capture: return "CAPTURE";
        case Procedure::AttackBlocked: return "ATTACK_BLOCKED";
        case Procedure::RelayRewrite: return "RELAY_REWRITE";
        case Procedure::DroppedUpstream: return "DROPPED_UPSTREAM";
        case Procedure::ImpersonationSent: return "IMPERSONATION_SENT";
        case Procedure::ImpersonationFailed: return "IMPERSONATION_FAILED";
    }
    return "UNKNOWN";
}

const std::string* TranscriptEvent::attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
        if (k == key) return &v;
    }
    return nullptr;
}

}  // namespace gsmsim

#include "gsmsim/l3.hpp"

#include <stdexcept>

namespace gsmsim {

namespace {

enum class Tag : std::uint8_t {
    Lur = 0x01,
    IdentityReq = 0x02,
    IdentityResp = 0x03,
    AuthReq = 0x04,
    AuthResp = 0x05,
    CipherCmd = 0x06,
    CipherDone = 0x07,
    LuAccept = 0x08,
    LuReject = 0x09,
    Welcome = 0x0a,
    CpDataTag = 0x0b,
    CpAckTag = 0x0c,
    RpDataTag = 0x0d,
    SmsTpduTag = 0x0e,
};

// --- BCD digit strings ---------------------------------------------------

void put_bcd(Bytes& out, std::string_view digits) {
    for (std::size_t i = 0; i < digits.size(); i += 2) {
        std::uint8_t hi = static_cast<std::uint8_t>(digits[i] - '0');
        std::uint8_t lo = (i + 1 < digits.size())
                              ? static_cast<std::uint8_t>(digits[i + 1] - '0')
                              : 0x0f;
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
}

// --- bounded reader ------------------------------------------------------

class Reader {
public:
    explicit Reader(ByteView b) : data_(b) {}

    std::size_t offset() const { return pos_; }
    bool done() const { return pos_ == data_.size(); }

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = get_u16_be(data_.data() + pos_);
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = get_u32_be(data_.data() + pos_);
        pos_ += 4;
        return v;
    }
    Bytes bytes(std::size_t n) {
        need(n);
        Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += n;
        return out;
    }

    std::string bcd(std::size_t digit_count) {
        std::size_t nbytes = (digit_count + 1) / 2;
        need(nbytes);
        std::string out;
        out.reserve(digit_count);
        for (std::size_t i = 0; i < digit_count; ++i) {
            std::uint8_t byte = data_[pos_ + i / 2];
            std::uint8_t nib = (i % 2 == 0) ? (byte >> 4) : (byte & 0x0f);
            if (nib > 9) fail(pos_ + i / 2, "invalid BCD digit");
            out.push_back(static_cast<char>('0' + nib));
        }
        if (digit_count % 2 == 1) {
            std::uint8_t padding = data_[pos_ + nbytes - 1] & 0x0f;
            if (padding != 0x0f) fail(pos_ + nbytes - 1, "invalid BCD pad nibble");
        }
        pos_ += nbytes;
        return out;
    }

    [[noreturn]] void fail(std::size_t offset, std::string reason) const {
        throw DecodeError{offset, std::move(reason)};
    }
    [[noreturn]] void fail(std::string reason) const { fail(pos_, std::move(reason)); }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) fail("truncated");
    }

    ByteView data_;
    std::size_t pos_ = 0;
};

// --- field-level encode/decode -------------------------------------------

void encode_identity(Bytes& out, const MobileIdentity& id) {
    out.push_back(static_cast<std::uint8_t>(id.kind));
    if (id.kind == MobileIdentity::Kind::Imsi) {
        put_bcd(out, id.imsi);  // 15 digits -> 8 bytes
    } else {
        put_u32_be(out, id.tmsi);
    }
}

MobileIdentity decode_identity(Reader& r) {
    std::size_t at = r.offset();
    std::uint8_t kind = r.u8();
    if (kind == static_cast<std::uint8_t>(MobileIdentity::Kind::Imsi))
        return MobileIdentity::from_imsi(r.bcd(15));
    if (kind == static_cast<std::uint8_t>(MobileIdentity::Kind::Tmsi))
        return MobileIdentity::from_tmsi(r.u32());
    r.fail(at, "invalid identity kind");
}

void encode_lai(Bytes& out, const Lai& lai) {
    put_bcd(out, lai.mcc + lai.mnc);  // 5 digits -> 3 bytes
    put_u16_be(out, lai.lac);
}

Lai decode_lai(Reader& r) {
    std::string digits = r.bcd(5);
    Lai lai;
    lai.mcc = digits.substr(0, 3);
    lai.mnc = digits.substr(3, 2);
    lai.lac = r.u16();
    return lai;
}

void encode_classmark(Bytes& out, const Classmark& cm) {
    out.push_back(cm.revision);
    out.push_back(cm.es_ind);
    out.push_back(cm.a5_1_supported);
    out.push_back(cm.power_cap);
}

Classmark decode_classmark(Reader& r) {
    Classmark cm;
    cm.revision = r.u8();
    std::size_t at = r.offset();
    cm.es_ind = r.u8();
    if (cm.es_ind > 1) r.fail(at, "classmark ES-IND not a bit");
    at = r.offset();
    cm.a5_1_supported = r.u8();
    if (cm.a5_1_supported > 1) r.fail(at, "classmark A5/1 not a bit");
    cm.power_cap = r.u8();
    return cm;
}

void encode_digits(Bytes& out, const std::string& digits) {
    out.push_back(static_cast<std::uint8_t>(digits.size()));
    put_bcd(out, digits);
}

std::string decode_digits(Reader& r) {
    std::uint8_t n = r.u8();
    return r.bcd(n);
}

void encode_blob16(Bytes& out, const Bytes& blob) {
    put_u16_be(out, static_cast<std::uint16_t>(blob.size()));
    out.insert(out.end(), blob.begin(), blob.end());
}

Bytes decode_blob16(Reader& r) {
    std::uint16_t n = r.u16();
    return r.bytes(n);
}

CipherAlgoId decode_algo(Reader& r) {
    std::size_t at = r.offset();
    std::uint8_t v = r.u8();
    if (v > static_cast<std::uint8_t>(CipherAlgoId::A5_SIM)) r.fail(at, "unknown cipher algorithm");
    return static_cast<CipherAlgoId>(v);
}

std::uint8_t decode_ti(Reader& r) {
    std::size_t at = r.offset();
    std::uint8_t ti = r.u8();
    if (ti > 7) r.fail(at, "transaction id out of range");
    return ti;
}

L3Message decode_message(Reader& r) {
    std::size_t at = r.offset();
    std::uint8_t tag = r.u8();
    switch (static_cast<Tag>(tag)) {
        case Tag::Lur: {
            LocationUpdatingRequest m;
            m.update_type = r.u8();
            m.lai = decode_lai(r);
            m.identity = decode_identity(r);
            m.classmark = decode_classmark(r);
            return m;
        }
        case Tag::IdentityReq: {
            std::size_t kind_at = r.offset();
            std::uint8_t kind = r.u8();
            if (kind != 1 && kind != 2) r.fail(kind_at, "invalid identity kind");
            return IdentityRequest{static_cast<MobileIdentity::Kind>(kind)};
        }
        case Tag::IdentityResp: return IdentityResponse{decode_identity(r)};
        case Tag::AuthReq: {
            AuthenticationRequest m;
            Bytes b = r.bytes(m.rand.bytes.size());
            std::copy(b.begin(), b.end(), m.rand.bytes.begin());
            return m;
        }
        case Tag::AuthResp: {
            AuthenticationResponse m;
            Bytes b = r.bytes(m.sres.bytes.size());
            std::copy(b.begin(), b.end(), m.sres.bytes.begin());
            return m;
        }
        case Tag::CipherCmd: return CipherModeCommand{decode_algo(r)};
        case Tag::CipherDone: return CipherModeComplete{};
        case Tag::LuAccept: {
            LocationUpdatingAccept m;
            m.lai = decode_lai(r);
            std::size_t flag_at = r.offset();
            std::uint8_t present = r.u8();
            if (present > 1) r.fail(flag_at, "invalid optional-TMSI flag");
            if (present) m.new_tmsi = r.u32();
            return m;
        }
        case Tag::LuReject: {
            std::size_t cause_at = r.offset();
            std::uint8_t cause = r.u8();
            if (cause < 1 || cause > 5) r.fail(cause_at, "unknown reject cause");
            return LocationUpdatingReject{static_cast<RejectCause>(cause)};
        }
        case Tag::Welcome: {
            Bytes text = decode_blob16(r);
            return WelcomeMessage{std::string(text.begin(), text.end())};
        }
        case Tag::CpDataTag: {
            CpData m;
            m.ti = decode_ti(r);
            m.rpdu = decode_blob16(r);
            return m;
        }
        case Tag::CpAckTag: return CpAck{decode_ti(r)};
        case Tag::RpDataTag: {
            RpData m;
            m.msisdn = decode_digits(r);
            m.tpdu = decode_blob16(r);
            return m;
        }
        case Tag::SmsTpduTag: {
            SmsTpdu m;
            m.sender = decode_digits(r);
            std::size_t count_at = r.offset();
            m.septet_count = r.u8();
            if (m.septet_count > kMaxSmsSeptets) r.fail(count_at, "septet count too large");
            m.user_data = r.bytes(packed_7bit_size(m.septet_count));
            return m;
        }
    }
    r.fail(at, "unknown tag");
}

}  // namespace

MobileIdentity MobileIdentity::from_imsi(std::string digits) {
    if (digits.size() != 15 || !all_digits(digits))
        throw std::invalid_argument("IMSI must be exactly 15 digits");
    MobileIdentity id;
    id.kind = Kind::Imsi;
    id.imsi = std::move(digits);
    return id;
}

MobileIdentity MobileIdentity::from_tmsi(std::uint32_t tmsi) {
    MobileIdentity id;
    id.kind = Kind::Tmsi;
    id.tmsi = tmsi;
    return id;
}

const char* cause_name(RejectCause cause) {
    switch (cause) {
        case RejectCause::AuthFailed: return "AUTH_FAILED";
        case RejectCause::NotAllowed: return "NOT_ALLOWED";
        case RejectCause::UnknownSubscriber: return "UNKNOWN_SUBSCRIBER";
        case RejectCause::CipherUnsupported: return "CIPHER_UNSUPPORTED";
        case RejectCause::ProtocolError: return "PROTOCOL_ERROR";
    }
    return "UNKNOWN";
}

SmsTpdu SmsTpdu::from_text(const std::string& sender, std::string_view text) {
    auto packed = pack_7bit(text);
    if (!packed) throw std::invalid_argument("SMS text contains characters outside the alphabet");
    if (text.size() > kMaxSmsSeptets) throw std::invalid_argument("SMS text longer than 160");
    SmsTpdu tpdu;
    tpdu.sender = sender;
    tpdu.septet_count = static_cast<std::uint8_t>(text.size());
    tpdu.user_data = std::move(*packed);
    return tpdu;
}

std::string SmsTpdu::text() const {
    return unpack_7bit(user_data, septet_count);
}

Bytes encode(const L3Message& m) {
    Bytes out;
    std::visit(
        [&out](const auto& msg) {
            using T = std::decay_t<decltype(msg)>;
            if constexpr (std::is_same_v<T, LocationUpdatingRequest>) {
                out.push_back(static_cast<std::uint8_t>(Tag::Lur));
                out.push_back(msg.update_type);
                encode_lai(out, msg.lai);
                encode_identity(out, msg.identity);
                encode_classmark(out, msg.classmark);
            } else if constexpr (std::is_same_v<T, IdentityRequest>) {
                out.push_back(static_cast<std::uint8_t>(Tag::IdentityReq));
                out.push_back(static_cast<std::uint8_t>(msg.requested));
            } else if constexpr (std::is_same_v<T, IdentityResponse>) {
                out.push_back(static_cast<std::uint8_t>(Tag::IdentityResp));
                encode_identity(out, msg.identity);
            } else if constexpr (std::is_same_v<T, AuthenticationRequest>) {
                out.push_back(static_cast<std::uint8_t>(Tag::AuthReq));
                out.insert(out.end(), msg.rand.bytes.begin(), msg.rand.bytes.end());
            } else if constexpr (std::is_same_v<T, AuthenticationResponse>) {
                out.push_back(static_cast<std::uint8_t>(Tag::AuthResp));
                out.insert(out.end(), msg.sres.bytes.begin(), msg.sres.bytes.end());
            } else if constexpr (std::is_same_v<T, CipherModeCommand>) {
                out.push_back(static_cast<std::uint8_t>(Tag::CipherCmd));
                out.push_back(static_cast<std::uint8_t>(msg.algo));
            } else if constexpr (std::is_same_v<T, CipherModeComplete>) {
                out.push_back(static_cast<std::uint8_t>(Tag::CipherDone));
            } else if constexpr (std::is_same_v<T, LocationUpdatingAccept>) {
                out.push_back(static_cast<std::uint8_t>(Tag::LuAccept));
                encode_lai(out, msg.lai);
                out.push_back(msg.new_tmsi ? 1 : 0);
                if (msg.new_tmsi) put_u32_be(out, *msg.new_tmsi);
            } else if constexpr (std::is_same_v<T, LocationUpdatingReject>) {
                out.push_back(static_cast<std::uint8_t>(Tag::LuReject));
                out.push_back(static_cast<std::uint8_t>(msg.cause));
            } else if constexpr (std::is_same_v<T, WelcomeMessage>) {
                out.push_back(static_cast<std::uint8_t>(Tag::Welcome));
                Bytes text(msg.text.begin(), msg.text.end());
                encode_blob16(out, text);
            } else if constexpr (std::is_same_v<T, CpData>) {
                out.push_back(static_cast<std::uint8_t>(Tag::CpDataTag));
                out.push_back(msg.ti);
                encode_blob16(out, msg.rpdu);
            } else if constexpr (std::is_same_v<T, CpAck>) {
                out.push_back(static_cast<std::uint8_t>(Tag::CpAckTag));
                out.push_back(msg.ti);
            } else if constexpr (std::is_same_v<T, RpData>) {
                out.push_back(static_cast<std::uint8_t>(Tag::RpDataTag));
                encode_digits(out, msg.msisdn);
                encode_blob16(out, msg.tpdu);
            } else if constexpr (std::is_same_v<T, SmsTpdu>) {
                out.push_back(static_cast<std::uint8_t>(Tag::SmsTpduTag));
                encode_digits(out, msg.sender);
                out.push_back(msg.septet_count);
                out.insert(out.end(), msg.user_data.begin(), msg.user_data.end());
            }
        },
        m);
    return out;
}

DecodeResult decode(ByteView b) {
    if (b.empty()) return DecodeError{0, "truncated"};
    Reader r(b);
    try {
        L3Message m = decode_message(r);
        if (!r.done()) return DecodeError{r.offset(), "trailing bytes"};
        return m;
    } catch (const DecodeError& e) {
        return e;
    }
}

std::string to_string(const L3Message& m) {
    auto identity_str = [](const MobileIdentity& id) {
        return id.kind == MobileIdentity::Kind::Imsi ? strfmt("IMSI=%s", id.imsi.c_str())
                                                     : strfmt("TMSI=0x%08x", id.tmsi);
    };
    auto lai_str = [](const Lai& lai) {
        return strfmt("LAI(%s,%s,0x%04x)", lai.mcc.c_str(), lai.mnc.c_str(), lai.lac);
    };
    return std::visit(
        [&](const auto& msg) -> std::string {
            using T = std::decay_t<decltype(msg)>;
            if constexpr (std::is_same_v<T, LocationUpdatingRequest>) {
                return strfmt("LocationUpdatingRequest{update_type=%u, lai=%s, identity=%s, "
                              "classmark=(%u,%u,%u,%u)}",
                              msg.update_type, lai_str(msg.lai).c_str(),
                              identity_str(msg.identity).c_str(), msg.classmark.revision,
                              msg.classmark.es_ind, msg.classmark.a5_1_supported,
                              msg.classmark.power_cap);
            } else if constexpr (std::is_same_v<T, IdentityRequest>) {
                return strfmt("IdentityRequest{requested=%s}",
                              msg.requested == MobileIdentity::Kind::Imsi ? "IMSI" : "TMSI");
            } else if constexpr (std::is_same_v<T, IdentityResponse>) {
                return strfmt("IdentityResponse{identity=%s}", identity_str(msg.identity).c_str());
            } else if constexpr (std::is_same_v<T, AuthenticationRequest>) {
                return strfmt("AuthenticationRequest{rand=%s}",
                              hex_dump(ByteView(msg.rand.bytes)).c_str());
            } else if constexpr (std::is_same_v<T, AuthenticationResponse>) {
                return strfmt("AuthenticationResponse{sres=%s}",
                              hex_dump(ByteView(msg.sres.bytes)).c_str());
            } else if constexpr (std::is_same_v<T, CipherModeCommand>) {
                return strfmt("CipherModeCommand{algo=%s}", cipher_name(msg.algo));
            } else if constexpr (std::is_same_v<T, CipherModeComplete>) {
                return "CipherModeComplete{}";
            } else if constexpr (std::is_same_v<T, LocationUpdatingAccept>) {
                return msg.new_tmsi
                           ? strfmt("LocationUpdatingAccept{lai=%s, new_tmsi=0x%08x}",
                                    lai_str(msg.lai).c_str(), *msg.new_tmsi)
                           : strfmt("LocationUpdatingAccept{lai=%s}", lai_str(msg.lai).c_str());
            } else if constexpr (std::is_same_v<T, LocationUpdatingReject>) {
                return strfmt("LocationUpdatingReject{cause=%s}", cause_name(msg.cause));
            } else if constexpr (std::is_same_v<T, WelcomeMessage>) {
                return strfmt("WelcomeMessage{text=\"%s\"}", escape_text(msg.text).c_str());
            } else if constexpr (std::is_same_v<T, CpData>) {
                return strfmt("CpData{ti=%u, rpdu=%s}", msg.ti, hex_dump(msg.rpdu).c_str());
            } else if constexpr (std::is_same_v<T, CpAck>) {
                return strfmt("CpAck{ti=%u}", msg.ti);
            } else if constexpr (std::is_same_v<T, RpData>) {
                return strfmt("RpData{msisdn=%s, tpdu=%s}", msg.msisdn.c_str(),
                              hex_dump(msg.tpdu).c_str());
            } else {
                static_assert(std::is_same_v<T, SmsTpdu>);
                return strfmt("SmsTpdu{sender=%s, septets=%u, text=\"%s\"}", msg.sender.c_str(),
                              msg.septet_count, escape_text(msg.text()).c_str());
            }
        },
        m);
}

Bytes lai_bytes(const Lai& lai) {
    Bytes out;
    encode_lai(out, lai);
    return out;
}

// --- 7-bit septet packing -------------------------------------------------

bool is_gsm_text(std::string_view text) {
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u > 0x7e) return false;
        // printable ASCII that the basic GSM alphabet lacks
        switch (c) {
            case '^': case '{': case '}': case '\\':
            case '[': case ']': case '~': case '|': case '`':
                return false;
            default: break;
        }
    }
    return true;
}

std::optional<Bytes> pack_7bit(std::string_view text) {
    if (!is_gsm_text(text)) return std::nullopt;
    Bytes out;
    out.reserve(packed_7bit_size(text.size()));
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        acc |= static_cast<std::uint32_t>(static_cast<unsigned char>(c) & 0x7f) << bits;
        bits += 7;
        while (bits >= 8) {
            out.push_back(static_cast<std::uint8_t>(acc & 0xff));
            acc >>= 8;
            bits -= 8;
        }
    }
    if (bits > 0) out.push_back(static_cast<std::uint8_t>(acc & 0xff));
    return out;
}

std::string unpack_7bit(ByteView packed, std::size_t septets) {
    std::string out;
    out.reserve(septets);
    std::uint32_t acc = 0;
    int bits = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < septets; ++i) {
        while (bits < 7 && pos < packed.size()) {
            acc |= static_cast<std::uint32_t>(packed[pos++]) << bits;
            bits += 8;
        }
        if (bits < 7) break;  // input shorter than the septet count
        out.push_back(static_cast<char>(acc & 0x7f));
        acc >>= 7;
        bits -= 7;
    }
    return out;
}

}  // namespace gsmsim

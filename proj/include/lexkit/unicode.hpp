#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "errors.hpp"

namespace lexkit::uni {

/// True iff every byte is plain ASCII. ASCII text is NFC by definition, so
/// this is the fast path for normalization.
inline bool is_ascii(std::string_view s) noexcept {
    for (unsigned char c : s)
        if (c >= 0x80) return false;
    return true;
}

/// Validates UTF-8 well-formedness (RFC 3629: no overlongs, no surrogates,
/// max U+10FFFF).
inline bool valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0, n = s.size();
    while (i < n) {
        unsigned char c = s[i];
        if (c < 0x80) { ++i; continue; }
        int len;
        unsigned cp;
        if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
        else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
        else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
        else return false;
        if (i + len > n) return false;
        for (int k = 1; k < len; ++k) {
            unsigned char cc = s[i + k];
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) return false;
        if (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) return false;
        i += len;
    }
    return true;
}

/// Canonical composition (NFC) of a UTF-8 string.
inline std::string nfc(std::string_view s) {
    if (is_ascii(s)) return std::string(s);
    if (!valid_utf8(s)) raise(errc::parse_error, "invalid UTF-8 byte sequence");
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) raise(errc::io_error, "ICU NFC normalizer unavailable");
    icu::UnicodeString input = icu::UnicodeString::fromUTF8(
        icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    icu::UnicodeString normalized = norm->normalize(input, status);
    if (U_FAILURE(status)) raise(errc::parse_error, "Unicode normalization failed");
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

/// Token check: non-empty, no ASCII whitespace, no control characters.
inline bool is_token(std::string_view s) noexcept {
    if (s.empty()) return false;
    for (unsigned char c : s)
        if (c <= 0x20 || c == 0x7F) return false;
    return true;
}

} // namespace lexkit::uni

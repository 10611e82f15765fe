#pragma once
// Minimal UTF-8 decoding. Invalid byte sequences decode to U+FFFD and
// advance one byte; callers treat U+FFFD as a separator.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace samas::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the scalar starting at s[i] and advances i past it.
inline char32_t decode(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xC0) == 0x80;
    };

    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    if (b0 >= 0xC2 && b0 <= 0xDF && cont(i + 1)) {
        const char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(i + 1) & 0x3Fu);
        i += 2;
        return cp;
    }
    if (b0 >= 0xE0 && b0 <= 0xEF && cont(i + 1) && cont(i + 2)) {
        const char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) |
                            (byte(i + 2) & 0x3Fu);
        const bool overlong = b0 == 0xE0 && byte(i + 1) < 0xA0;
        const bool surrogate = cp >= 0xD800 && cp <= 0xDFFF;
        if (!overlong && !surrogate) {
            i += 3;
            return cp;
        }
    }
    if (b0 >= 0xF0 && b0 <= 0xF4 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        const char32_t cp = ((b0 & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                            ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
        if (cp >= 0x10000 && cp <= 0x10FFFF) {
            i += 4;
            return cp;
        }
    }
    ++i;
    return kReplacement;
}

// Number of Unicode scalar values in s.
inline std::size_t count_scalars(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++n) decode(s, i);
    return n;
}

} // namespace samas::utf8

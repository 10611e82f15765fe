#pragma once
// Turns raw text segments into word-length signals.
//
// A "word" is a maximal run of word-forming Unicode scalars; punctuation and
// whitespace separate. Scripts written without word delimiters (Han, kana,
// Thai, ...) degrade to one token per scalar. Word length is counted in
// Unicode scalar values.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "samas/errors.hpp"
#include "samas/style.hpp"
#include "samas/utf8.hpp"

namespace samas {

// Segments shorter than this many words are rejected from analysis: below 8
// words the deepest sub-bands carry only padding.
inline constexpr std::size_t kMinAnalyzableWords = 8;

struct TextSegment {
    std::string id;
    std::string text;
    std::string source_lang;
    std::string target_lang; // empty = not set
    std::optional<StyleClass> style_label;
};

struct WordLengthSignal {
    std::vector<int> values;   // one word length per word, each >= 1
    std::size_t original_len = 0; // word count before any padding
    std::string segment_id;
};

namespace detail {

struct ScalarRange {
    char32_t lo;
    char32_t hi;
    bool unsegmented; // script without word delimiters: one token per scalar
};

// Word-forming scalars, block-level approximation of the major scripts.
// Sorted by lo for binary search.
inline constexpr ScalarRange kWordRanges[] = {
    {0x0030, 0x0039, false},   // ASCII digits
    {0x0041, 0x005A, false},   // A-Z
    {0x0061, 0x007A, false},   // a-z
    {0x00C0, 0x00D6, false},   // Latin-1 letters
    {0x00D8, 0x00F6, false},
    {0x00F8, 0x02AF, false},   // Latin extended + IPA
    {0x0370, 0x03FF, false},   // Greek
    {0x0400, 0x052F, false},   // Cyrillic + supplement
    {0x0531, 0x0588, false},   // Armenian
    {0x05D0, 0x05EA, false},   // Hebrew
    {0x0620, 0x064A, false},   // Arabic letters
    {0x0660, 0x0669, false},   // Arabic-Indic digits
    {0x066E, 0x06D3, false},
    {0x0900, 0x097F, false},   // Devanagari
    {0x0E01, 0x0E3A, true},    // Thai
    {0x0E40, 0x0E4E, true},
    {0x0E81, 0x0EC6, true},    // Lao
    {0x1000, 0x109F, true},    // Myanmar
    {0x1100, 0x11FF, false},   // Hangul jamo
    {0x1780, 0x17B3, true},    // Khmer
    {0x1E00, 0x1FFF, false},   // Latin ext. additional, Greek extended
    {0x3040, 0x309F, true},    // Hiragana
    {0x30A0, 0x30FF, true},    // Katakana
    {0x3400, 0x4DBF, true},    // CJK ext A
    {0x4E00, 0x9FFF, true},    // CJK unified
    {0xAC00, 0xD7A3, false},   // Hangul syllables (Korean spaces its words)
    {0xF900, 0xFAFF, true},    // CJK compatibility
    {0xFF10, 0xFF19, false},   // fullwidth digits
    {0xFF21, 0xFF3A, false},   // fullwidth A-Z
    {0xFF41, 0xFF5A, false},   // fullwidth a-z
    {0x20000, 0x2A6DF, true},  // CJK ext B
};

enum class ScalarClass { Separator, Word, UnsegmentedWord };

inline ScalarClass classify_scalar(char32_t cp) {
    const auto* begin = std::begin(kWordRanges);
    const auto* end = std::end(kWordRanges);
    const auto* it = std::upper_bound(begin, end, cp,
        [](char32_t v, const ScalarRange& r) { return v < r.lo; });
    if (it == begin) return ScalarClass::Separator;
    --it;
    if (cp > it->hi) return ScalarClass::Separator;
    return it->unsegmented ? ScalarClass::UnsegmentedWord : ScalarClass::Word;
}

inline bool is_blank(std::string_view s) {
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v')
            return false;
    }
    return true;
}

} // namespace detail

// Splits segment text into word tokens. Deterministic; throws EmptySegment
// when nothing word-like remains.
inline std::vector<std::string> tokenize(const TextSegment& segment) {
    std::vector<std::string> tokens;
    std::string run;
    const std::string_view text = segment.text;

    auto flush = [&] {
        if (!run.empty()) {
            tokens.push_back(run);
            run.clear();
        }
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const char32_t cp = utf8::decode(text, i);
        switch (detail::classify_scalar(cp)) {
            case detail::ScalarClass::Separator:
                flush();
                break;
            case detail::ScalarClass::UnsegmentedWord:
                flush();
                tokens.emplace_back(text.substr(start, i - start));
                break;
            case detail::ScalarClass::Word:
                run.append(text.substr(start, i - start));
                break;
        }
    }
    flush();

    if (tokens.empty())
        throw Error(ErrorCode::EmptySegment,
                    "segment '" + segment.id + "' contains no word tokens");
    return tokens;
}

inline WordLengthSignal to_signal(const std::vector<std::string>& tokens,
                                  std::string segment_id) {
    if (tokens.empty())
        throw Error(ErrorCode::EmptySegment, "no tokens for segment '" + segment_id + "'");
    WordLengthSignal signal;
    signal.segment_id = std::move(segment_id);
    signal.values.reserve(tokens.size());
    for (const auto& token : tokens)
        signal.values.push_back(static_cast<int>(utf8::count_scalars(token)));
    signal.original_len = signal.values.size();
    return signal;
}

// Extends values to the smallest multiple of 2^level that is >= max(length,
// 2^level), mirroring the tail (half-sample symmetric, ping-pong when the
// padding exceeds the signal). original_len is preserved.
inline WordLengthSignal prepare_for_wpt(WordLengthSignal signal, int level) {
    if (level < 1)
        throw Error(ErrorCode::UnsupportedLevel, "level must be >= 1");
    if (signal.values.empty())
        throw Error(ErrorCode::EmptyInput, "empty signal");
    if (signal.original_len < kMinAnalyzableWords)
        throw Error(ErrorCode::SignalTooShort,
                    "segment '" + signal.segment_id + "' has " +
                        std::to_string(signal.original_len) +
                        " words; minimum is " + std::to_string(kMinAnalyzableWords));

    const std::size_t block = std::size_t{1} << level;
    const std::size_t n = signal.values.size();
    std::size_t target = std::max(n, block);
    target = (target + block - 1) / block * block;

    const std::size_t period = 2 * n;
    for (std::size_t i = n; i < target; ++i) {
        const std::size_t j = i % period;
        signal.values.push_back(signal.values[j < n ? j : period - 1 - j]);
    }
    return signal;
}

} // namespace samas

#pragma once
// chrF: character n-gram F-beta score in [0, 100]. Precision and recall are
// averaged across n-gram orders 1..max_n, then combined; orders missing from
// both texts are skipped, orders missing from one count as zero. N-grams are
// sequences of Unicode scalars, with whitespace stripped by default.

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "samas/errors.hpp"
#include "samas/utf8.hpp"

namespace samas {

struct ChrfParams {
    int max_n = 6;
    double beta = 2.0;
    bool include_whitespace = false;
};

namespace detail {

inline bool chrf_whitespace(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
           cp == U'\v' || cp == 0x00A0 || cp == 0x3000;
}

inline std::u32string chrf_scalars(std::string_view text, bool include_whitespace) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = utf8::decode(text, i);
        if (!include_whitespace && chrf_whitespace(cp)) continue;
        out.push_back(cp);
    }
    return out;
}

inline std::unordered_map<std::u32string, long> ngram_counts(const std::u32string& s,
                                                             std::size_t n) {
    std::unordered_map<std::u32string, long> counts;
    if (s.size() < n) return counts;
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[s.substr(i, n)];
    return counts;
}

} // namespace detail

inline double chrf(std::string_view hypothesis, std::string_view reference,
                   const ChrfParams& params = {}) {
    if (params.max_n < 1)
        throw Error(ErrorCode::ConfigError, "chrF max_n must be >= 1");
    if (!(params.beta > 0.0))
        throw Error(ErrorCode::ConfigError, "chrF beta must be > 0");
    if (reference.empty())
        throw Error(ErrorCode::EmptyReference, "reference text is empty");

    const std::u32string ref = detail::chrf_scalars(reference, params.include_whitespace);
    if (ref.empty())
        throw Error(ErrorCode::EmptyReference, "reference is whitespace only");
    const std::u32string hyp = detail::chrf_scalars(hypothesis, params.include_whitespace);
    if (hyp.empty()) return 0.0;

    double precision_sum = 0.0;
    double recall_sum = 0.0;
    int counted_orders = 0;
    for (int n = 1; n <= params.max_n; ++n) {
        const auto hyp_counts = detail::ngram_counts(hyp, static_cast<std::size_t>(n));
        const auto ref_counts = detail::ngram_counts(ref, static_cast<std::size_t>(n));
        long hyp_total = 0;
        for (const auto& [gram, count] : hyp_counts) hyp_total += count;
        long ref_total = 0;
        for (const auto& [gram, count] : ref_counts) ref_total += count;

        if (hyp_total == 0 && ref_total == 0) continue; // order absent from both
        ++counted_orders;
        if (hyp_total == 0 || ref_total == 0) continue; // counts as P = R = 0

        long matched = 0;
        for (const auto& [gram, count] : hyp_counts) {
            const auto it = ref_counts.find(gram);
            if (it != ref_counts.end())
                matched += count < it->second ? count : it->second;
        }
        precision_sum += static_cast<double>(matched) / static_cast<double>(hyp_total);
        recall_sum += static_cast<double>(matched) / static_cast<double>(ref_total);
    }

    if (counted_orders == 0) return 0.0;
    const double precision = precision_sum / counted_orders;
    const double recall = recall_sum / counted_orders;
    if (precision + recall <= 0.0) return 0.0;

    const double b2 = params.beta * params.beta;
    return 100.0 * (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

} // namespace samas

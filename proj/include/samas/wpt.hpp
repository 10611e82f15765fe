#pragma once
// Wavelet packet transform: the full binary filter-bank tree. Both branches
// are split recursively, so level L yields 2^L equal-width sub-bands.
//
// Boundary handling is periodic (circular), which keeps the transform
// exactly orthogonal for any even section length, hence exact Parseval and
// exact coefficient counts.
//
// Sub-bands are stored in ascending-frequency order. The natural recursion
// order differs because the decimated highpass branch mirrors its spectrum;
// the fix is the binary-reflected Gray code: frequency slot f holds natural
// leaf f ^ (f >> 1).

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "samas/errors.hpp"
#include "samas/wavelet.hpp"

namespace samas {

struct WptDecomposition {
    int level = 0;
    std::vector<std::vector<double>> subbands; // ascending frequency, 2^level entries
    std::size_t signal_len = 0;                // padded input length
    std::string filter_name;
};

// One analysis step: correlate with lowpass/highpass on even shifts, with
// circular wraparound. Output halves the input length.
inline std::pair<std::vector<double>, std::vector<double>>
analysis_step(std::span<const double> signal, const WaveletFilter& filter) {
    const std::size_t n = signal.size();
    if (n == 0) throw Error(ErrorCode::EmptyInput, "empty signal");
    if (n % 2 != 0)
        throw Error(ErrorCode::OddLength, "signal length " + std::to_string(n) + " is odd");

    const std::size_t half = n / 2;
    const std::size_t m = filter.lowpass.size();
    std::vector<double> approx(half, 0.0);
    std::vector<double> detail(half, 0.0);
    for (std::size_t out = 0; out < half; ++out) {
        double a = 0.0;
        double d = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double x = signal[(2 * out + k) % n];
            a += filter.lowpass[k] * x;
            d += filter.highpass[k] * x;
        }
        approx[out] = a;
        detail[out] = d;
    }
    return {std::move(approx), std::move(detail)};
}

// Adjoint of analysis_step; for orthonormal filters this is the exact inverse.
inline std::vector<double> synthesis_step(std::span<const double> approx,
                                          std::span<const double> detail,
                                          const WaveletFilter& filter) {
    if (approx.size() != detail.size())
        throw Error(ErrorCode::ShapeMismatch, "approx/detail length mismatch");
    if (approx.empty()) throw Error(ErrorCode::EmptyInput, "empty sub-bands");

    const std::size_t half = approx.size();
    const std::size_t n = 2 * half;
    const std::size_t m = filter.lowpass.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t pos = 0; pos < half; ++pos) {
        for (std::size_t k = 0; k < m; ++k) {
            out[(2 * pos + k) % n] += approx[pos] * filter.lowpass[k] +
                                      detail[pos] * filter.highpass[k];
        }
    }
    return out;
}

inline WptDecomposition wpt_decompose(std::span<const double> signal,
                                      const WaveletFilter& filter, int level) {
    if (level < 1 || level > 30)
        throw Error(ErrorCode::UnsupportedLevel, "level must be in [1, 30]");
    const std::size_t n = signal.size();
    const std::size_t bands = std::size_t{1} << level;
    if (bands > n)
        throw Error(ErrorCode::UnsupportedLevel,
                    "2^level = " + std::to_string(bands) + " exceeds signal length " +
                        std::to_string(n));
    if (n % bands != 0)
        throw Error(ErrorCode::IndivisibleLength,
                    "signal length " + std::to_string(n) + " not divisible by " +
                        std::to_string(bands));

    std::vector<std::vector<double>> nodes;
    nodes.emplace_back(signal.begin(), signal.end());
    for (int l = 0; l < level; ++l) {
        std::vector<std::vector<double>> next;
        next.reserve(nodes.size() * 2);
        for (const auto& node : nodes) {
            auto [approx, detail] = analysis_step(node, filter);
            next.push_back(std::move(approx));
            next.push_back(std::move(detail));
        }
        nodes = std::move(next);
    }

    WptDecomposition dec;
    dec.level = level;
    dec.signal_len = n;
    dec.filter_name = filter.name;
    dec.subbands.resize(bands);
    for (std::size_t f = 0; f < bands; ++f)
        dec.subbands[f] = std::move(nodes[f ^ (f >> 1)]);
    return dec;
}

inline void validate_decomposition(const WptDecomposition& dec) {
    const std::size_t bands = std::size_t{1} << dec.level;
    if (dec.level < 1 || dec.subbands.size() != bands)
        throw Error(ErrorCode::ShapeMismatch,
                    "expected " + std::to_string(bands) + " sub-bands, have " +
                        std::to_string(dec.subbands.size()));
    if (dec.signal_len == 0 || dec.signal_len % bands != 0)
        throw Error(ErrorCode::ShapeMismatch, "signal_len inconsistent with level");
    const std::size_t width = dec.signal_len / bands;
    for (const auto& band : dec.subbands)
        if (band.size() != width)
            throw Error(ErrorCode::ShapeMismatch,
                        "sub-band width " + std::to_string(band.size()) + ", expected " +
                            std::to_string(width));
}

inline std::vector<double> wpt_reconstruct(const WptDecomposition& dec,
                                           const WaveletFilter& filter) {
    validate_decomposition(dec);
    if (filter.name != dec.filter_name)
        throw Error(ErrorCode::ConfigError,
                    "decomposition used filter '" + dec.filter_name +
                        "', reconstruction given '" + filter.name + "'");

    const std::size_t bands = std::size_t{1} << dec.level;
    std::vector<std::vector<double>> nodes(bands);
    for (std::size_t f = 0; f < bands; ++f)
        nodes[f ^ (f >> 1)] = dec.subbands[f]; // undo the frequency ordering

    for (int l = dec.level; l > 0; --l) {
        std::vector<std::vector<double>> merged;
        merged.reserve(nodes.size() / 2);
        for (std::size_t i = 0; i + 1 < nodes.size(); i += 2)
            merged.push_back(synthesis_step(nodes[i], nodes[i + 1], filter));
        nodes = std::move(merged);
    }
    return nodes.front();
}

// Unnormalized per-band energies, ascending frequency.
inline std::vector<double> subband_energies(const WptDecomposition& dec) {
    validate_decomposition(dec);
    std::vector<double> energies;
    energies.reserve(dec.subbands.size());
    for (const auto& band : dec.subbands) {
        double e = 0.0;
        for (double c : band) e += c * c;
        energies.push_back(e);
    }
    return energies;
}

} // namespace samas

#pragma once
// Synthetic word-length corpora with controlled stylistic signatures; the
// stand-in for a labeled two-author corpus in calibration tests and demos.
//
// The generator is closed-loop: every emitted signal is analyzed with the
// default filter/level and must classify to its target class under default
// thresholds, otherwise the recipe's amplitudes are adjusted and the draw is
// retried (up to 10 attempts). Early attempts also insist on a comfortable
// margin from the thresholds so generated clusters stay cleanly separated.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "samas/errors.hpp"
#include "samas/rng.hpp"
#include "samas/router.hpp"
#include "samas/sfs.hpp"
#include "samas/style.hpp"
#include "samas/text_signal.hpp"
#include "samas/wavelet.hpp"

namespace samas {

struct StyleProfile {
    StyleClass target_class;
    double mean_word_len;
    double len_variance;
    int sentence_period;  // dominant rhythm wavelength, in words
    double noise_level;   // [0, 1]
    std::uint64_t seed;
};

inline StyleProfile default_profile(StyleClass cls, std::uint64_t seed) {
    if (cls == StyleClass::FaulknerEsque)
        return {cls, 2.5, 30.0, 12, 0.6, seed};
    return {cls, 4.5, 1.6, 4, 0.25, seed};
}

namespace detail {

inline constexpr int kMaxGenerationAttempts = 10;
inline constexpr int kMaxWordLen = 60;

struct GenTargets {
    // margins the early attempts aim for, inside the default thresholds
    double faulkner_h = 0.865;
    double faulkner_e = 0.615;
    double hemingway_h_max = 0.70;
};

inline int clamp_word_len(double v) {
    const int w = static_cast<int>(std::lround(v));
    return std::clamp(w, 1, kMaxWordLen);
}

// Bursty long-wavelength structure: rectified sum of four slow tones (one
// per low-frequency band at level 4) plus broadband noise. Rectification
// keeps word lengths positive and sprays harmonics across the high bands,
// which is exactly what pushes the normalized entropy up.
inline std::vector<int> faulkner_raw(const StyleProfile& profile, std::size_t length,
                                     SplitMix64& rng, double slow_amp, double broad_amp) {
    const double sp = static_cast<double>(profile.sentence_period);
    const double periods[4] = {4.0 * sp, (5.0 / 3.0) * sp, sp, 0.75 * sp};
    double phases[4];
    for (double& p : phases) p = rng.uniform() * 6.283185307179586;

    const double base = std::max(1.0, profile.mean_word_len - 1.5);
    std::vector<int> values(length);
    for (std::size_t i = 0; i < length; ++i) {
        double slow = 0.0;
        for (int j = 0; j < 4; ++j)
            slow += std::sin(6.283185307179586 * static_cast<double>(i) / periods[j] +
                             phases[j]);
        const double bump = slow_amp * slow / 2.0 + broad_amp * rng.gaussian() - slow_amp * 0.55;
        values[i] = clamp_word_len(1.0 + (base - 1.0) * rng.uniform() + std::max(0.0, bump));
    }
    return values;
}

// Short-period, low-variance rhythm riding on a steady mean: the dominant
// DC keeps E_low high and the entropy low.
inline std::vector<int> hemingway_raw(const StyleProfile& profile, std::size_t length,
                                      SplitMix64& rng, double tone_amp, double noise_amp) {
    const double period = std::max(2, profile.sentence_period);
    const double phase = rng.uniform() * 6.283185307179586;
    std::vector<int> values(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double tone =
            tone_amp * std::sin(6.283185307179586 * static_cast<double>(i) / period + phase);
        values[i] = clamp_word_len(profile.mean_word_len + tone + noise_amp * rng.gaussian());
    }
    return values;
}

} // namespace detail

// Deterministic per (profile, length, profile.seed). Throws
// ProfileUnachievable when 10 adjusted attempts never classify to the
// profile's target class.
inline WordLengthSignal generate_signal(const StyleProfile& profile, std::size_t length) {
    if (length < 16)
        throw Error(ErrorCode::ConfigError, "synthetic signals need length >= 16");
    if (profile.mean_word_len < 1.0)
        throw Error(ErrorCode::ConfigError, "mean_word_len must be >= 1");
    if (profile.sentence_period < 2)
        throw Error(ErrorCode::ConfigError, "sentence_period must be >= 2");

    const WaveletFilter filter = filters::db4();
    const RoutingThresholds thresholds{};
    const detail::GenTargets targets{};
    const bool faulkner = profile.target_class == StyleClass::FaulknerEsque;

    const double sigma = std::sqrt(std::max(0.25, profile.len_variance));
    double primary = faulkner ? 1.35 * sigma : std::sqrt(2.0 * profile.len_variance);
    double secondary = faulkner ? (0.55 + profile.noise_level) * sigma
                                : std::max(0.05, profile.noise_level);

    for (int attempt = 0; attempt < detail::kMaxGenerationAttempts; ++attempt) {
        SplitMix64 rng = SplitMix64::stream(profile.seed, static_cast<std::uint64_t>(attempt));
        WordLengthSignal signal;
        signal.values = faulkner
                            ? detail::faulkner_raw(profile, length, rng, primary, secondary)
                            : detail::hemingway_raw(profile, length, rng, primary, secondary);
        signal.original_len = signal.values.size();

        const auto sfs = compute_sfs(prepare_for_wpt(signal, 4), filter, 4);
        const double h = sfs.global_entropy;
        const double e = low_frequency_energy(sfs);
        const bool classified = classify(sfs, thresholds) == profile.target_class;
        const bool margin_ok = faulkner
                                   ? (h >= targets.faulkner_h && e >= targets.faulkner_e)
                                   : (h <= targets.hemingway_h_max);
        if (classified && (margin_ok || attempt >= detail::kMaxGenerationAttempts - 2))
            return signal;

        if (faulkner) {
            if (e <= targets.faulkner_e) {
                primary *= 1.22;
                secondary *= 0.90;
            }
            if (h <= targets.faulkner_h) {
                secondary *= 1.20;
                primary *= 0.97;
            }
        } else {
            // entropy too high: damp the noise, let the mean dominate more
            secondary *= 0.65;
            primary *= 0.90;
        }
    }
    throw Error(ErrorCode::ProfileUnachievable,
                "profile (seed " + std::to_string(profile.seed) +
                    ") never classified as " + style_name(profile.target_class));
}

// Balanced labeled corpus: 2 * n_per_class signals, deterministic per seed,
// interleaved faulkner/hemingway. Every signal classifies to its label by
// construction.
inline std::vector<std::pair<WordLengthSignal, StyleClass>>
generate_corpus(int n_per_class, std::uint64_t seed, std::size_t length = 256) {
    if (n_per_class < 1)
        throw Error(ErrorCode::ConfigError, "n_per_class must be >= 1");

    std::vector<std::pair<WordLengthSignal, StyleClass>> corpus;
    corpus.reserve(2 * static_cast<std::size_t>(n_per_class));
    char id_buf[32];
    for (int i = 0; i < n_per_class; ++i) {
        for (StyleClass cls : {StyleClass::FaulknerEsque, StyleClass::HemingwayEsque}) {
            const std::uint64_t stream =
                2 * static_cast<std::uint64_t>(i) + (cls == StyleClass::HemingwayEsque);
            StyleProfile profile = default_profile(cls, SplitMix64::stream(seed, stream).next());
            WordLengthSignal signal = generate_signal(profile, length);
            std::snprintf(id_buf, sizeof(id_buf), "syn-%.3s-%04d", style_name(cls), i);
            signal.segment_id = id_buf;
            corpus.emplace_back(std::move(signal), cls);
        }
    }
    return corpus;
}

} // namespace samas

#pragma once
// Stylistic Feature Spectrum: per-sub-band {relative energy, mean, std,
// skewness, kurtosis} plus one global entropy over the band energy
// distribution. At level 4 that is 16*5 + 1 = 81 dimensions.
//
// The global entropy is normalized by log2(#bands) so it lives in [0, 1];
// the routing threshold (0.85) only makes sense on that scale. The
// distribution it is taken over is the relative band energies {E_j}.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "samas/errors.hpp"
#include "samas/text_signal.hpp"
#include "samas/wpt.hpp"

namespace samas {

inline constexpr int kSfsSchemaVersion = 1;

struct StylisticFeatureSpectrum {
    std::vector<double> rwe;      // relative wavelet energy per band, sums to 1
    std::vector<double> means;
    std::vector<double> stds;
    std::vector<double> skewness;
    std::vector<double> kurtosis; // excess kurtosis
    double global_entropy = 0.0;  // in [0, 1]
    int level = 0;
    std::string filter_name;
    std::string segment_id;

    std::size_t band_count() const { return rwe.size(); }

    // Fixed layout: [rwe | means | stds | skewness | kurtosis | H].
    std::vector<double> flatten() const {
        std::vector<double> flat;
        flat.reserve(5 * rwe.size() + 1);
        for (const auto* part : {&rwe, &means, &stds, &skewness, &kurtosis})
            flat.insert(flat.end(), part->begin(), part->end());
        flat.push_back(global_entropy);
        return flat;
    }
};

inline std::vector<double> relative_wavelet_energy(const std::vector<double>& energies) {
    if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energies");
    double total = 0.0;
    for (double e : energies) {
        if (e < 0.0)
            throw Error(ErrorCode::InvalidDistribution, "negative sub-band energy");
        total += e;
    }
    if (total <= 0.0)
        throw Error(ErrorCode::ZeroEnergy, "all-zero signal has no style");
    std::vector<double> rwe;
    rwe.reserve(energies.size());
    for (double e : energies) rwe.push_back(e / total);
    return rwe;
}

// Shannon entropy (bits) of one sub-band's normalized coefficient energies.
// All-zero sub-bands return 0 by convention. Not part of the flattened SFS;
// exposed for inspection.
inline double subband_entropy(std::span<const double> coeffs) {
    if (coeffs.empty()) throw Error(ErrorCode::EmptyInput, "empty sub-band");
    double total = 0.0;
    for (double c : coeffs) total += c * c;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : coeffs) {
        const double p = c * c / total;
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

// Entropy of the band energy distribution, normalized to [0, 1] by
// log2(#bands). 0 = single-band concentration, 1 = uniform spread.
inline double global_wavelet_entropy(const std::vector<double>& rwe) {
    if (rwe.size() < 2) throw Error(ErrorCode::EmptyInput, "need at least 2 bands");
    double sum = 0.0;
    for (double p : rwe) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw Error(ErrorCode::InvalidDistribution,
                    "rwe sums to " + std::to_string(sum) + ", expected 1");
    double raw = 0.0;
    for (double p : rwe)
        if (p > 0.0) raw -= p * std::log2(p);
    const double h = raw / std::log2(static_cast<double>(rwe.size()));
    return h < 0.0 ? 0.0 : (h > 1.0 ? 1.0 : h);
}

struct SubbandMoments {
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0; // excess
};

// Population moments (divisor N). Degenerate sub-bands (std < 1e-12) report
// skewness = kurtosis = 0 so padded constants never produce NaN.
inline SubbandMoments subband_moments(std::span<const double> coeffs) {
    if (coeffs.empty()) throw Error(ErrorCode::EmptyInput, "empty sub-band");
    const double n = static_cast<double>(coeffs.size());
    double mean = 0.0;
    for (double c : coeffs) mean += c;
    mean /= n;

    double m2 = 0.0;
    for (double c : coeffs) {
        const double d = c - mean;
        m2 += d * d;
    }
    m2 /= n;
    const double sd = std::sqrt(m2);
    if (sd < 1e-12) return {mean, sd, 0.0, 0.0};

    double skew = 0.0;
    double kurt = 0.0;
    for (double c : coeffs) {
        const double z = (c - mean) / sd;
        skew += z * z * z;
        kurt += z * z * z * z;
    }
    return {mean, sd, skew / n, kurt / n - 3.0};
}

inline StylisticFeatureSpectrum compute_sfs(const WordLengthSignal& signal,
                                            const WaveletFilter& filter, int level) {
    std::vector<double> x(signal.values.begin(), signal.values.end());
    const WptDecomposition dec = wpt_decompose(x, filter, level);

    StylisticFeatureSpectrum sfs;
    sfs.level = level;
    sfs.filter_name = filter.name;
    sfs.segment_id = signal.segment_id;
    sfs.rwe = relative_wavelet_energy(subband_energies(dec));
    sfs.global_entropy = global_wavelet_entropy(sfs.rwe);

    sfs.means.reserve(dec.subbands.size());
    sfs.stds.reserve(dec.subbands.size());
    sfs.skewness.reserve(dec.subbands.size());
    sfs.kurtosis.reserve(dec.subbands.size());
    for (const auto& band : dec.subbands) {
        const SubbandMoments m = subband_moments(band);
        sfs.means.push_back(m.mean);
        sfs.stds.push_back(m.std_dev);
        sfs.skewness.push_back(m.skewness);
        sfs.kurtosis.push_back(m.kurtosis);
    }
    return sfs;
}

// Cumulative energy of the four lowest-frequency bands (fewer if the
// decomposition has fewer bands).
inline double low_frequency_energy(const StylisticFeatureSpectrum& sfs) {
    const std::size_t k = sfs.rwe.size() < 4 ? sfs.rwe.size() : 4;
    return std::accumulate(sfs.rwe.begin(), sfs.rwe.begin() + k, 0.0);
}

inline nlohmann::json sfs_to_json(const StylisticFeatureSpectrum& sfs) {
    return nlohmann::json{
        {"segment_id", sfs.segment_id},
        {"level", sfs.level},
        {"filter", sfs.filter_name},
        {"rwe", sfs.rwe},
        {"means", sfs.means},
        {"stds", sfs.stds},
        {"skewness", sfs.skewness},
        {"kurtosis", sfs.kurtosis},
        {"global_entropy", sfs.global_entropy},
        {"schema_version", kSfsSchemaVersion},
        {"flat", sfs.flatten()},
    };
}

inline StylisticFeatureSpectrum sfs_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSfsSchemaVersion)
            throw Error(ErrorCode::ParseError, "unsupported SFS schema version");
        StylisticFeatureSpectrum sfs;
        sfs.segment_id = j.at("segment_id").get<std::string>();
        sfs.level = j.at("level").get<int>();
        sfs.filter_name = j.at("filter").get<std::string>();
        sfs.rwe = j.at("rwe").get<std::vector<double>>();
        sfs.means = j.at("means").get<std::vector<double>>();
        sfs.stds = j.at("stds").get<std::vector<double>>();
        sfs.skewness = j.at("skewness").get<std::vector<double>>();
        sfs.kurtosis = j.at("kurtosis").get<std::vector<double>>();
        sfs.global_entropy = j.at("global_entropy").get<double>();
        const std::size_t bands = sfs.rwe.size();
        if (sfs.means.size() != bands || sfs.stds.size() != bands ||
            sfs.skewness.size() != bands || sfs.kurtosis.size() != bands)
            throw Error(ErrorCode::ParseError, "SFS feature arrays disagree on band count");
        return sfs;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad SFS record: ") + e.what());
    }
}

} // namespace samas

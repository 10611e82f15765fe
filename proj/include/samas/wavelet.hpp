#pragma once
// Orthonormal wavelet filter bank. The highpass is always derived from the
// lowpass by the quadrature-mirror relation g[k] = (-1)^k h[M-1-k], so the
// two filters cannot drift apart.

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "samas/errors.hpp"

namespace samas {

struct WaveletFilter {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

inline WaveletFilter make_orthonormal_filter(std::string name, std::vector<double> lowpass) {
    if (lowpass.empty() || lowpass.size() % 2 != 0)
        throw Error(ErrorCode::ConfigError,
                    "filter '" + name + "' must have even, non-zero tap count");
    const std::size_t m = lowpass.size();
    std::vector<double> highpass(m);
    for (std::size_t k = 0; k < m; ++k)
        highpass[k] = (k % 2 == 0 ? 1.0 : -1.0) * lowpass[m - 1 - k];
    return WaveletFilter{std::move(name), std::move(lowpass), std::move(highpass)};
}

namespace filters {

inline WaveletFilter haar() {
    // 1/sqrt(2)
    const double h = 0.707106781186547524400844362104849;
    return make_orthonormal_filter("haar", {h, h});
}

inline WaveletFilter db4() {
    // Daubechies-4 scaling coefficients (8 taps), sum = sqrt(2).
    return make_orthonormal_filter("db4", {
        0.23037781330885523,
        0.7148465705525415,
        0.6308807679295904,
        -0.02798376941698385,
        -0.18703481171888114,
        0.030841381835986965,
        0.032883011666982945,
        -0.010597401784997278,
    });
}

inline WaveletFilter by_name(std::string_view name) {
    if (name == "haar" || name == "db1") return haar();
    if (name == "db4") return db4();
    throw Error(ErrorCode::UnknownFilter,
                "unknown wavelet filter '" + std::string(name) + "' (supported: haar, db4)");
}

} // namespace filters

} // namespace samas

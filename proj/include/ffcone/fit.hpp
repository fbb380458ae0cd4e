#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace ffcone {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int n = 0;
};

/// Least squares on (ln q, ln v): the fitted slope is the empirical
/// q-exponent of the measured quantity.
inline SlopeFit fit_log_slope(std::span<const double> qs, std::span<const double> values) {
    if (qs.size() != values.size() || qs.size() < 2)
        throw std::invalid_argument("fit_log_slope needs >= 2 matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(qs.size());
    for (int i = 0; i < n; ++i) {
        const double x = std::log(qs[i]);
        const double y = std::log(std::max(values[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    SlopeFit fit;
    fit.n = n;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace ffcone

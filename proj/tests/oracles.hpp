// Independent brute-force oracles for the transform and operator paths.
// Everything here is written against the definitions directly (naive
// O(q^{2d}) double loops) and must stay independent of the fast
// implementations it checks.
#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "ffcone/function.hpp"
#include "ffcone/variety.hpp"

namespace oracles {

using ffcone::cplx;
using ffcone::FieldSpec;
using ffcone::FunctionOnSpace;
using ffcone::Side;

// chi(a) from scratch, using only the field's trace table.
inline cplx chi_oracle(const FieldSpec& F, int a) {
    const double angle = 2.0 * std::numbers::pi * F.trace(a) / F.p();
    return {std::cos(angle), std::sin(angle)};
}

// m.x summed in F_q.
inline int dot(const FieldSpec& F, const std::vector<int>& m, const std::vector<int>& x) {
    int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s = F.add(s, F.mul(m[i], x[i]));
    return s;
}

// g_hat(x) = sum_m chi(-m.x) g(m), naive double loop.
inline FunctionOnSpace fourier_hat_naive(const FunctionOnSpace& g) {
    const FieldSpec& F = g.field();
    const int d = g.dim();
    const std::uint64_t n = g.size();
    FunctionOnSpace out(F, d, Side::SpaceDX);
    for (std::uint64_t xi = 0; xi < n; ++xi) {
        const auto x = ffcone::decode_point(F, d, xi);
        cplx acc{0.0, 0.0};
        for (std::uint64_t mi = 0; mi < n; ++mi) {
            const auto m = ffcone::decode_point(F, d, mi);
            acc += chi_oracle(F, F.neg(dot(F, m, x))) * g[mi];
        }
        out[xi] = acc;
    }
    return out;
}

// f_vee(m) = q^{-d} sum_x chi(m.x) f(x).
inline FunctionOnSpace inverse_fourier_naive(const FunctionOnSpace& f) {
    const FieldSpec& F = f.field();
    const int d = f.dim();
    const std::uint64_t n = f.size();
    FunctionOnSpace out(F, d, Side::DualDM);
    for (std::uint64_t mi = 0; mi < n; ++mi) {
        const auto m = ffcone::decode_point(F, d, mi);
        cplx acc{0.0, 0.0};
        for (std::uint64_t xi = 0; xi < n; ++xi) {
            const auto x = ffcone::decode_point(F, d, xi);
            acc += chi_oracle(F, dot(F, m, x)) * f[xi];
        }
        out[mi] = acc / static_cast<double>(n);
    }
    return out;
}

// (f*h)(y) = q^{-d} sum_x f(y-x) h(x).
inline FunctionOnSpace convolve_naive(const FunctionOnSpace& f, const FunctionOnSpace& h) {
    const FieldSpec& F = f.field();
    const int d = f.dim();
    const std::uint64_t n = f.size();
    FunctionOnSpace out(F, d, Side::SpaceDX);
    std::vector<int> diff(d);
    for (std::uint64_t yi = 0; yi < n; ++yi) {
        const auto y = ffcone::decode_point(F, d, yi);
        cplx acc{0.0, 0.0};
        for (std::uint64_t xi = 0; xi < n; ++xi) {
            const auto x = ffcone::decode_point(F, d, xi);
            for (int i = 0; i < d; ++i) diff[i] = F.sub(y[i], x[i]);
            acc += f[ffcone::encode_point(F, diff)] * h[xi];
        }
        out[yi] = acc / static_cast<double>(n);
    }
    return out;
}

// A_C f(y) = |C|^{-1} sum_{x in C} f(y-x), direct sum, y over C.
inline std::vector<cplx> restricted_average_naive(const FunctionOnSpace& f,
                                                  const ffcone::Variety& cone) {
    const FieldSpec& F = f.field();
    const int d = f.dim();
    std::vector<cplx> out;
    std::vector<int> diff(d);
    for (std::uint64_t yi : cone.points()) {
        const auto y = ffcone::decode_point(F, d, yi);
        cplx acc{0.0, 0.0};
        for (std::uint64_t xi : cone.points()) {
            const auto x = ffcone::decode_point(F, d, xi);
            for (int i = 0; i < d; ++i) diff[i] = F.sub(y[i], x[i]);
            acc += f[ffcone::encode_point(F, diff)];
        }
        out.push_back(acc / static_cast<double>(cone.cardinality()));
    }
    return out;
}

// A_C^* h(y) = (q^d/|C|^2) sum_{x in C} C(x-y) h(x), direct sum.
inline FunctionOnSpace adjoint_naive(const FunctionOnSpace& h, const ffcone::Variety& cone) {
    const FieldSpec& F = h.field();
    const int d = h.dim();
    const std::uint64_t n = h.size();
    const double card = static_cast<double>(cone.cardinality());
    const double scale = std::pow(static_cast<double>(F.q()), d) / (card * card);
    FunctionOnSpace out(F, d, Side::SpaceDX);
    std::vector<int> diff(d);
    for (std::uint64_t yi = 0; yi < n; ++yi) {
        const auto y = ffcone::decode_point(F, d, yi);
        cplx acc{0.0, 0.0};
        for (std::uint64_t xi : cone.points()) {
            const auto x = ffcone::decode_point(F, d, xi);
            for (int i = 0; i < d; ++i) diff[i] = F.sub(x[i], y[i]);
            if (cone.contains(ffcone::encode_point(F, diff))) acc += h[xi];
        }
        out[yi] = acc * scale;
    }
    return out;
}

inline double max_gap(const FunctionOnSpace& a, const FunctionOnSpace& b) {
    double m = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracles

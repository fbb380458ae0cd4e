#pragma once

#include "ffcone/function.hpp"

namespace ffcone {

/// The fixed nontrivial additive character chi(a) = exp(2 pi i Tr(a)/p).
cplx chi(const FieldSpec& field, int a);

/// Fourier transform of g on (F_q^d, dm):
///   g_hat(x) = sum_m chi(-m.x) g(m), defined on (F_q^d, dx).
/// Implemented as e*d passes of length-p transforms over the digit axes
/// followed by the trace-form index remap, O(q^d e d p) total.
/// Throws std::invalid_argument ("WrongSide") if g lives on dx.
FunctionOnSpace fourier_hat(const FunctionOnSpace& g);

/// Inverse transform of f on (F_q^d, dx):
///   f_vee(m) = q^{-d} sum_x chi(m.x) f(x), defined on (F_q^d, dm).
FunctionOnSpace inverse_fourier(const FunctionOnSpace& f);

/// Normalized convolution on (F_q^d, dx):
///   (f*h)(y) = q^{-d} sum_x f(y-x) h(x),
/// computed by transform-multiply-transform.
FunctionOnSpace convolve(const FunctionOnSpace& f, const FunctionOnSpace& h);

/// Weighted L^p norm; weight q^{-d} on dx, 1 on dm; p may be infinity.
/// Throws std::invalid_argument ("BadExponent") for p < 1.
double lp_norm(const FunctionOnSpace& f, double p);

/// Weighted inner products <f,g> = integral f conj(g).
cplx inner_product(const FunctionOnSpace& f, const FunctionOnSpace& g);

double max_abs(const FunctionOnSpace& f);

}  // namespace ffcone

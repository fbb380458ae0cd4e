#include "ffcone/harmonic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ffcone {

cplx chi(const FieldSpec& field, int a) {
    const double angle = 2.0 * std::numbers::pi * field.trace(a) / field.p();
    return {std::cos(angle), std::sin(angle)};
}

namespace {

// In-place transform over (Z/p)^axes on the flat base-p digit index:
//   v[nu] <- sum_mu exp(sign 2 pi i (mu.nu)/p) v[mu].
// Per axis a length-p butterfly is applied to every line; lines are
// swept in ascending order and each butterfly sums in ascending digit,
// so results are bit-reproducible.
void digit_transform(std::vector<cplx>& v, int p, int axes, int sign) {
    const std::uint64_t n = v.size();
    std::vector<cplx> w(static_cast<std::size_t>(p) * p);
    for (int k = 0; k < p; ++k)
        for (int l = 0; l < p; ++l) {
            const double angle = sign * 2.0 * std::numbers::pi * ((k * l) % p) / p;
            w[static_cast<std::size_t>(k) * p + l] = {std::cos(angle), std::sin(angle)};
        }

    std::vector<cplx> line(p);
    std::uint64_t stride = 1;
    for (int axis = 0; axis < axes; ++axis, stride *= p) {
        const std::uint64_t block = stride * p;
        for (std::uint64_t base = 0; base < n; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                cplx* cell = v.data() + base + off;
                for (int l = 0; l < p; ++l) line[l] = cell[l * stride];
                for (int k = 0; k < p; ++k) {
                    const cplx* wk = w.data() + static_cast<std::size_t>(k) * p;
                    cplx acc{0.0, 0.0};
                    for (int l = 0; l < p; ++l) acc += wk[l] * line[l];
                    cell[k * stride] = acc;
                }
            }
        }
    }
}

// Applies the per-coordinate trace-form permutation to a whole point
// index: out[x] = in[remap(x)]. Identity on prime fields.
std::vector<cplx> apply_dual_permutation(const std::vector<cplx>& in, const FieldSpec& field,
                                         int d) {
    const auto& perm = field.dual_permutation();
    bool identity = true;
    for (std::size_t a = 0; a < perm.size(); ++a)
        if (perm[a] != a) {
            identity = false;
            break;
        }
    if (identity) return in;

    const int q = field.q();
    std::vector<cplx> out(in.size());
    std::vector<int> digitsv(d, 0);
    for (std::uint64_t x = 0; x < in.size(); ++x) {
        std::uint64_t src = 0;
        std::uint64_t scale = 1;
        for (int i = 0; i < d; ++i) {
            src += static_cast<std::uint64_t>(perm[digitsv[i]]) * scale;
            scale *= q;
        }
        out[x] = in[src];
        for (int i = 0; i < d; ++i) {
            if (++digitsv[i] < q) break;
            digitsv[i] = 0;
        }
    }
    return out;
}

}  // namespace

FunctionOnSpace fourier_hat(const FunctionOnSpace& g) {
    if (g.side() != Side::DualDM)
        throw std::invalid_argument("WrongSide: fourier_hat expects a function on dm");
    const FieldSpec& F = g.field();
    std::vector<cplx> core(g.values().begin(), g.values().end());
    digit_transform(core, F.p(), F.e() * g.dim(), -1);
    core = apply_dual_permutation(core, F, g.dim());

    FunctionOnSpace out(F, g.dim(), Side::SpaceDX);
    std::copy(core.begin(), core.end(), out.values().begin());
    return out;
}

FunctionOnSpace inverse_fourier(const FunctionOnSpace& f) {
    if (f.side() != Side::SpaceDX)
        throw std::invalid_argument("WrongSide: inverse_fourier expects a function on dx");
    const FieldSpec& F = f.field();
    std::vector<cplx> core(f.values().begin(), f.values().end());
    digit_transform(core, F.p(), F.e() * f.dim(), +1);
    core = apply_dual_permutation(core, F, f.dim());

    FunctionOnSpace out(F, f.dim(), Side::DualDM);
    const double scale = std::pow(static_cast<double>(F.q()), -f.dim());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = core[i] * scale;
    return out;
}

FunctionOnSpace convolve(const FunctionOnSpace& f, const FunctionOnSpace& h) {
    if (f.side() != Side::SpaceDX || h.side() != Side::SpaceDX)
        throw std::invalid_argument("SideMismatch: convolve expects both functions on dx");
    if (!(f.field() == h.field()) || f.dim() != h.dim())
        throw std::invalid_argument("SpecMismatch: convolve expects matching field and dimension");
    FunctionOnSpace fv = inverse_fourier(f);
    const FunctionOnSpace hv = inverse_fourier(h);
    for (std::uint64_t i = 0; i < fv.size(); ++i) fv[i] *= hv[i];
    return fourier_hat(fv);
}

double lp_norm(const FunctionOnSpace& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    if (!(p >= 1.0)) throw std::invalid_argument("BadExponent: p must be >= 1");
    const double w = f.point_weight();
    double acc = 0.0;
    if (p == 2.0) {
        for (const cplx& v : f.values()) acc += std::norm(v);
        return std::sqrt(w * acc);
    }
    if (p == 1.0) {
        for (const cplx& v : f.values()) acc += std::abs(v);
        return w * acc;
    }
    for (const cplx& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(w * acc, 1.0 / p);
}

cplx inner_product(const FunctionOnSpace& f, const FunctionOnSpace& g) {
    if (f.side() != g.side() || f.size() != g.size())
        throw std::invalid_argument("SideMismatch: inner product expects matching sides");
    cplx acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
    return acc * f.point_weight();
}

double max_abs(const FunctionOnSpace& f) {
    double m = 0.0;
    for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ffcone

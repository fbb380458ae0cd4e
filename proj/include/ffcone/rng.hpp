#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ffcone/function.hpp"

namespace ffcone {

/// splitmix64 fold, for deriving independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Thin deterministic wrapper: raw mt19937_64 draws only, no
/// implementation-defined distributions, so identical seeds give
/// identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * unit() - 1.0; }
    cplx unit_complex() { return {symmetric(), symmetric()}; }

private:
    std::mt19937_64 eng_;
};

/// k distinct draws from [0, n).
inline std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> out;
    if (k >= n) {
        out.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
        return out;
    }
    std::vector<std::uint8_t> taken(n, 0);
    out.reserve(k);
    while (out.size() < k) {
        const std::uint64_t v = rng.below(n);
        if (!taken[v]) {
            taken[v] = 1;
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline FunctionOnSpace random_function(const FieldSpec& field, int d, Side side,
                                       std::uint64_t seed) {
    Rng rng(seed);
    FunctionOnSpace f(field, d, side);
    for (std::uint64_t i = 0; i < f.size(); ++i) f[i] = rng.unit_complex();
    return f;
}

}  // namespace ffcone

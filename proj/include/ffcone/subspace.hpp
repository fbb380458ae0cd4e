#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffcone/variety.hpp"

namespace ffcone {

/// A linear subspace of F_q^d given by an independent basis together
/// with all q^dim spanned point indices (sorted).
struct Subspace {
    std::vector<std::vector<int>> basis;
    int dim = 0;
    std::vector<std::uint64_t> points;
};

/// Rank of a set of vectors over F_q.
int basis_rank(const FieldSpec& field, const std::vector<std::vector<int>>& vectors);

/// All q^dim points spanned by an independent basis.
std::vector<std::uint64_t> span_points(const FieldSpec& field, int d,
                                       const std::vector<std::vector<int>>& basis);

/// Number of t-dimensional subspaces of F_q^d (Gaussian binomial),
/// saturating at cap.
std::uint64_t count_subspaces(int q, int d, int t, std::uint64_t cap);

/// Walks every t-dimensional subspace of F_q^d exactly once via
/// reduced-row-echelon canonical bases. Returns the number visited;
/// stops early when the callback returns false.
std::uint64_t enumerate_subspaces(const FieldSpec& field, int d, int t,
                                  const std::function<bool(const std::vector<std::vector<int>>&)>& visit);

/// Maximal isotropic dimension predicted by the eta(-1) dichotomy for
/// even d: d/2 when eta(-1) = eta(-1)^{d/2}, else (d-2)/2.
int predicted_max_isotropic_dim(const FieldSpec& field, int d);

struct SubspaceSearchResult {
    Subspace subspace;
    int predicted_dim = 0;
    /// True when maximality was certified by enumerating every
    /// (dim+1)-subspace within budget.
    bool exhaustive = false;
    bool budget_exceeded = false;
    std::string method;  // structured | exhaustive | greedy
};

/// Finds a largest subspace contained in the cone, via the structured
/// pairing construction, exhaustive enumeration when affordable, and a
/// randomized greedy probe otherwise. The returned subspace is verified
/// point-by-point against the cone equation. Requires even d >= 4.
SubspaceSearchResult max_subspace_in_cone(const FieldSpec& field, int d,
                                          std::uint64_t budget = 200000, std::uint64_t seed = 1);

}  // namespace ffcone

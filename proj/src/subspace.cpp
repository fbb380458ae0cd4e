#include "ffcone/subspace.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ffcone {

namespace {

std::vector<int> scaled_vector(const FieldSpec& F, int c, const std::vector<int>& v) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.mul(c, v[i]);
    return out;
}

void add_into(const FieldSpec& F, std::vector<int>& acc, const std::vector<int>& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = F.add(acc[i], v[i]);
}

}  // namespace

int basis_rank(const FieldSpec& F, const std::vector<std::vector<int>>& vectors) {
    if (vectors.empty()) return 0;
    std::vector<std::vector<int>> rows = vectors;
    const int d = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        const int scale = F.inv(rows[rank][col]);
        for (int j = 0; j < d; ++j) rows[rank][j] = F.mul(scale, rows[rank][j]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const int c = rows[r][col];
            for (int j = 0; j < d; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

std::vector<std::uint64_t> span_points(const FieldSpec& F, int d,
                                       const std::vector<std::vector<int>>& basis) {
    const int t = static_cast<int>(basis.size());
    if (basis_rank(F, basis) != t)
        throw std::invalid_argument("DependentBasis: span_points needs an independent basis");
    // scaled[i][c] = c * basis[i], so each combination is t vector adds
    std::vector<std::vector<std::vector<int>>> scaled(t);
    for (int i = 0; i < t; ++i) {
        scaled[i].resize(F.q());
        for (int c = 0; c < F.q(); ++c) scaled[i][c] = scaled_vector(F, c, basis[i]);
    }
    std::uint64_t total = 1;
    for (int i = 0; i < t; ++i) total *= static_cast<std::uint64_t>(F.q());

    std::vector<std::uint64_t> out;
    out.reserve(total);
    std::vector<int> coeff(t, 0);
    std::vector<int> point(d, 0);
    for (std::uint64_t k = 0; k < total; ++k) {
        std::fill(point.begin(), point.end(), 0);
        for (int i = 0; i < t; ++i) add_into(F, point, scaled[i][coeff[i]]);
        out.push_back(encode_point(F, point));
        for (int i = 0; i < t; ++i) {
            if (++coeff[i] < F.q()) break;
            coeff[i] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::logic_error("span produced duplicate points");
    return out;
}

std::uint64_t count_subspaces(int q, int d, int t, std::uint64_t cap) {
    if (t < 0 || t > d) return 0;
    // Gaussian binomial via [n k] = [n-1 k-1] + q^k [n-1 k], saturating.
    std::vector<std::vector<unsigned __int128>> g(d + 1,
                                                  std::vector<unsigned __int128>(t + 1, 0));
    const unsigned __int128 lim = static_cast<unsigned __int128>(cap) * 4 + 16;
    for (int n = 0; n <= d; ++n) g[n][0] = 1;
    for (int n = 1; n <= d; ++n) {
        for (int k = 1; k <= std::min(n, t); ++k) {
            unsigned __int128 qk = 1;
            for (int i = 0; i < k; ++i) {
                qk *= static_cast<unsigned>(q);
                if (qk > lim) {
                    qk = lim;
                    break;
                }
            }
            unsigned __int128 v = g[n - 1][k - 1] + qk * g[n - 1][k];
            g[n][k] = v > lim ? lim : v;
        }
    }
    const unsigned __int128 res = g[d][t];
    return res > cap ? cap + 1 : static_cast<std::uint64_t>(res);
}

std::uint64_t enumerate_subspaces(
    const FieldSpec& F, int d, int t,
    const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
    if (t < 1 || t > d) return 0;
    std::uint64_t visited = 0;
    std::vector<int> pivots(t);
    // iterate pivot column combinations in lexicographic order
    for (int i = 0; i < t; ++i) pivots[i] = i;
    bool more = true;
    std::vector<std::vector<int>> rows(t, std::vector<int>(d, 0));
    while (more) {
        std::vector<char> is_pivot(d, 0);
        for (int c : pivots) is_pivot[c] = 1;
        std::vector<std::pair<int, int>> free_cells;
        for (int i = 0; i < t; ++i)
            for (int j = pivots[i] + 1; j < d; ++j)
                if (!is_pivot[j]) free_cells.emplace_back(i, j);

        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < free_cells.size(); ++i)
            combos *= static_cast<std::uint64_t>(F.q());

        std::vector<int> fill(free_cells.size(), 0);
        for (std::uint64_t k = 0; k < combos; ++k) {
            for (auto& row : rows) std::fill(row.begin(), row.end(), 0);
            for (int i = 0; i < t; ++i) rows[i][pivots[i]] = 1;
            for (std::size_t c = 0; c < free_cells.size(); ++c)
                rows[free_cells[c].first][free_cells[c].second] = fill[c];
            ++visited;
            if (!visit(rows)) return visited;
            for (std::size_t c = 0; c < free_cells.size(); ++c) {
                if (++fill[c] < F.q()) break;
                fill[c] = 0;
            }
        }

        // next pivot combination
        int i = t - 1;
        while (i >= 0 && pivots[i] == d - t + i) --i;
        if (i < 0) {
            more = false;
        } else {
            ++pivots[i];
            for (int j = i + 1; j < t; ++j) pivots[j] = pivots[j - 1] + 1;
        }
    }
    return visited;
}

int predicted_max_isotropic_dim(const FieldSpec& F, int d) {
    if (d < 4 || d % 2 != 0)
        throw std::invalid_argument("ParityMismatch: the dichotomy needs even d >= 4");
    const int eta_minus_one = F.eta(F.neg(1));
    const bool full = (d / 2) % 2 == 1 || eta_minus_one == 1;
    return full ? d / 2 : (d - 2) / 2;
}

namespace {

// Solves a^2 + b^2 = -1; exists whenever -1 is a nonsquare.
std::pair<int, int> sum_of_squares_minus_one(const FieldSpec& F) {
    const int minus_one = F.neg(1);
    for (int a = 0; a < F.q(); ++a) {
        const int rest = F.sub(minus_one, F.mul(a, a));
        for (int b = 0; b < F.q(); ++b)
            if (F.mul(b, b) == rest) return {a, b};
    }
    throw std::logic_error("no representation of -1 as a sum of two squares");
}

int square_root_of_minus_one(const FieldSpec& F) {
    const int minus_one = F.neg(1);
    for (int i = 0; i < F.q(); ++i)
        if (F.mul(i, i) == minus_one) return i;
    throw std::logic_error("-1 is not a square");
}

// The pairing construction: pairs (x_{2k-1}, x_{2k}) carry isotropic
// vectors of x^2 + y^2 when -1 is a square, otherwise 4-blocks carry a
// hyperbolic pair of x^2+y^2+z^2+w^2; e_{d-1} closes the x_{d-1} x_d
// plane. Achieves the predicted dimension in every case.
std::vector<std::vector<int>> structured_basis(const FieldSpec& F, int d) {
    std::vector<std::vector<int>> basis;
    if (F.eta(F.neg(1)) == 1) {
        const int i = square_root_of_minus_one(F);
        for (int k = 0; 2 * k + 1 < d - 1; ++k) {
            std::vector<int> v(d, 0);
            v[2 * k] = 1;
            v[2 * k + 1] = i;
            basis.push_back(std::move(v));
        }
    } else {
        const auto [a, b] = sum_of_squares_minus_one(F);
        const int blocks = (d - 2) / 4;
        for (int k = 0; k < blocks; ++k) {
            std::vector<int> v(d, 0), w(d, 0);
            v[4 * k] = 1;
            v[4 * k + 2] = a;
            v[4 * k + 3] = b;
            w[4 * k + 1] = 1;
            w[4 * k + 2] = b;
            w[4 * k + 3] = F.neg(a);
            basis.push_back(std::move(v));
            basis.push_back(std::move(w));
        }
    }
    std::vector<int> last(d, 0);
    last[d - 2] = 1;  // e_{d-1}
    basis.push_back(std::move(last));
    return basis;
}

bool all_points_in_cone(const Variety& cone, const std::vector<std::uint64_t>& pts) {
    for (std::uint64_t idx : pts)
        if (!cone.contains(idx)) return false;
    return true;
}

Subspace make_subspace(const FieldSpec& F, int d, std::vector<std::vector<int>> basis) {
    Subspace s;
    s.dim = static_cast<int>(basis.size());
    s.points = span_points(F, d, basis);
    s.basis = std::move(basis);
    return s;
}

// Randomized greedy extension over cone points. Returns the best basis
// found with dimension > start_dim, or empty.
std::vector<std::vector<int>> greedy_probe(const FieldSpec& F, int d, const Variety& cone,
                                           int target_dim, std::uint64_t budget,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& pts = cone.points();
    if (pts.size() <= 1) return {};
    std::uint64_t spent = 0;
    std::vector<std::vector<int>> best;
    while (spent < budget) {
        std::vector<std::vector<int>> basis;
        for (std::uint64_t attempt = 0; attempt < pts.size() && spent < budget; ++attempt) {
            ++spent;
            const std::uint64_t cand = pts[rng() % pts.size()];
            if (cand == 0) continue;
            auto coords = decode_point(F, d, cand);
            auto trial = basis;
            trial.push_back(coords);
            if (basis_rank(F, trial) != static_cast<int>(trial.size())) continue;
            const auto spanned = span_points(F, d, trial);
            if (!all_points_in_cone(cone, spanned)) continue;
            basis = std::move(trial);
            if (static_cast<int>(basis.size()) >= target_dim) return basis;
        }
        if (basis.size() > best.size()) best = std::move(basis);
    }
    return best.size() >= static_cast<std::size_t>(target_dim) ? best
                                                               : std::vector<std::vector<int>>{};
}

}  // namespace

SubspaceSearchResult max_subspace_in_cone(const FieldSpec& F, int d, std::uint64_t budget,
                                          std::uint64_t seed) {
    const int predicted = predicted_max_isotropic_dim(F, d);
    const Variety cone = Variety::build(F, d, VarietyKind::Cone);

    SubspaceSearchResult result;
    result.predicted_dim = predicted;
    result.method = "structured";
    result.subspace = make_subspace(F, d, structured_basis(F, d));
    if (static_cast<int>(result.subspace.points.size()) !=
        static_cast<int>(std::pow(double(F.q()), result.subspace.dim)))
        throw std::logic_error("structured span has wrong size");
    if (!all_points_in_cone(cone, result.subspace.points))
        throw std::logic_error("structured basis left the cone");

    // Certify maximality by exhausting all (dim+1)-subspaces when the
    // enumeration fits the budget; otherwise spend a slice of the budget
    // on a randomized probe for something larger.
    const int t = result.subspace.dim + 1;
    const std::uint64_t n_above = count_subspaces(F.q(), d, t, budget);
    if (t <= d && n_above <= budget) {
        std::vector<std::vector<int>> found;
        enumerate_subspaces(F, d, t, [&](const std::vector<std::vector<int>>& rows) {
            for (const auto& row : rows)
                if (!cone_contains(F, row)) return true;
            const auto spanned = span_points(F, d, rows);
            if (all_points_in_cone(cone, spanned)) {
                found = rows;
                return false;
            }
            return true;
        });
        if (!found.empty()) {
            result.subspace = make_subspace(F, d, found);
            result.method = "exhaustive";
            result.exhaustive = false;  // only dim+1 was swept, not dim+2
        } else {
            result.exhaustive = true;
        }
    } else {
        result.budget_exceeded = true;
        const auto probed =
            greedy_probe(F, d, cone, t, std::min<std::uint64_t>(budget / 4 + 1, 4000), seed);
        if (!probed.empty()) {
            result.subspace = make_subspace(F, d, probed);
            result.method = "greedy";
        }
    }
    return result;
}

}  // namespace ffcone

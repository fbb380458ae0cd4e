#include "ffcone/operators.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "ffcone/rng.hpp"

namespace ffcone {

const char* direction_name(Direction dir) {
    return dir == Direction::Forward ? "forward" : "adjoint";
}

ConeOperator::ConeOperator(const FieldSpec& field, int d)
    : field_(&field),
      d_(d),
      qd_(std::pow(static_cast<double>(field.q()), d)),
      cone_(Variety::build(field, d, VarietyKind::Cone)),
      sigma_(surface_measure(cone_)),
      sigma_vee_(inverse_fourier(sigma_.as_function())),
      cone_vee_(inverse_fourier(cone_.indicator(Side::SpaceDX))),
      K_(sigma_vee_),
      M_(cone_vee_),
      K_hat_(field, d, Side::SpaceDX),
      M_hat_(field, d, Side::SpaceDX) {
    K_[0] -= 1.0;
    M_[0] -= static_cast<double>(cone_.cardinality()) / qd_;
    K_hat_ = fourier_hat(K_);
    M_hat_ = fourier_hat(M_);
}

FunctionOnSpace ConeOperator::apply_full(const FunctionOnSpace& f) const {
    if (f.side() != Side::SpaceDX)
        throw std::invalid_argument("SideMismatch: A_C expects a function on dx");
    FunctionOnSpace fv = inverse_fourier(f);
    for (std::uint64_t i = 0; i < fv.size(); ++i) fv[i] *= sigma_vee_[i];
    return fourier_hat(fv);
}

std::vector<cplx> ConeOperator::apply(const FunctionOnSpace& f) const {
    const FunctionOnSpace full = apply_full(f);
    std::vector<cplx> out;
    out.reserve(cone_.cardinality());
    for (std::uint64_t idx : cone_.points()) out.push_back(full[idx]);
    return out;
}

FunctionOnSpace ConeOperator::apply_adjoint(const FunctionOnSpace& h) const {
    if (h.side() != Side::SpaceDX)
        throw std::invalid_argument("SideMismatch: A_C^* expects a function on dx");
    for (std::uint64_t i = 0; i < h.size(); ++i)
        if (h[i] != cplx{0.0, 0.0} && !cone_.contains(i))
            throw std::invalid_argument("SupportViolation: h must vanish off the cone");

    const double card = static_cast<double>(cone_.cardinality());
    const double scale = qd_ * qd_ / (card * card);
    FunctionOnSpace hv = inverse_fourier(h);
    for (std::uint64_t i = 0; i < hv.size(); ++i) hv[i] *= cone_vee_[i] * scale;
    return fourier_hat(hv);
}

ConeOperator::ForwardDecomposition ConeOperator::decompose_forward(
    const FunctionOnSpace& f) const {
    cplx mean{0.0, 0.0};
    for (std::uint64_t i = 0; i < f.size(); ++i) mean += f[i];
    mean /= qd_;

    FunctionOnSpace fv = inverse_fourier(f);
    for (std::uint64_t i = 0; i < fv.size(); ++i) fv[i] *= K_[i];
    ForwardDecomposition out{FunctionOnSpace::constant(*field_, d_, Side::SpaceDX, mean),
                             fourier_hat(fv), 0.0};

    const FunctionOnSpace full = apply_full(f);
    for (std::uint64_t idx : cone_.points())
        out.residual = std::max(out.residual,
                                std::abs(full[idx] - out.background[idx] - out.oscillatory[idx]));
    return out;
}

ConeOperator::AdjointDecomposition ConeOperator::decompose_adjoint(
    const FunctionOnSpace& h) const {
    const FunctionOnSpace reference = apply_adjoint(h);  // validates side and support

    const double card = static_cast<double>(cone_.cardinality());
    cplx mean{0.0, 0.0};
    for (std::uint64_t i = 0; i < h.size(); ++i) mean += h[i];
    mean /= qd_;

    FunctionOnSpace hv = inverse_fourier(h);
    const double scale = qd_ * qd_ / (card * card);
    for (std::uint64_t i = 0; i < hv.size(); ++i) hv[i] *= M_[i] * scale;

    AdjointDecomposition out{
        fourier_hat(hv),
        FunctionOnSpace::constant(*field_, d_, Side::SpaceDX, mean * (qd_ / card)), 0.0};
    for (std::uint64_t i = 0; i < reference.size(); ++i)
        out.residual = std::max(
            out.residual, std::abs(reference[i] - out.oscillatory[i] - out.background[i]));
    return out;
}

double ConeOperator::ratio(const FunctionOnSpace& f, const ExponentPair& pair,
                           Direction dir) const {
    if (dir == Direction::Forward) {
        const double denom = lp_norm(f, pair.p_value());
        if (denom == 0.0) throw std::invalid_argument("ZeroFunction: |f|_p = 0");
        const std::vector<cplx> values = apply(f);
        return surface_norm(values, pair.r_value()) / denom;
    }
    const ExponentPair conj = pair.conjugate();
    const double denom = surface_norm(f, cone_, conj.r_value());
    if (denom == 0.0) throw std::invalid_argument("ZeroFunction: |h|_{r'} = 0");
    const FunctionOnSpace image = apply_adjoint(f);
    return lp_norm(image, conj.p_value()) / denom;
}

namespace {

FunctionOnSpace lift_to_space(const ConeOperator& op, const std::vector<cplx>& on_cone) {
    FunctionOnSpace h(op.field(), op.dim(), Side::SpaceDX);
    const auto& pts = op.cone().points();
    for (std::size_t i = 0; i < pts.size(); ++i) h[pts[i]] = on_cone[i];
    return h;
}

}  // namespace

ConeOperator::OpNormResult ConeOperator::l2_opnorm() const {
    const std::uint64_t n = point_count(*field_, d_);
    if (n > kDenseLimit)
        throw std::invalid_argument("TooLarge: q^d exceeds the dense-matrix limit");

    // Route 1: power iteration on G = A* A in L^2(dx).
    FunctionOnSpace f = random_function(*field_, d_, Side::SpaceDX, 0xffc0);
    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        const FunctionOnSpace g = apply_adjoint(lift_to_space(*this, apply(f)));
        const double num = std::real(inner_product(g, f));
        const double den = std::real(inner_product(f, f));
        const double next = num / den;
        const double gn = lp_norm(g, 2.0);
        double resid = 0.0;
        {
            FunctionOnSpace r = g;
            for (std::uint64_t i = 0; i < r.size(); ++i) r[i] -= next * f[i];
            resid = lp_norm(r, 2.0) / std::max(gn, 1e-300);
        }
        f = g;
        const double inv = 1.0 / std::max(gn, 1e-300);
        for (std::uint64_t i = 0; i < f.size(); ++i) f[i] *= inv;
        lambda = next;
        if (resid < 1e-12 && it > 4) break;
    }
    const double power_value = std::sqrt(std::max(lambda, 0.0));

    // Route 2: largest singular value of the weighted dense matrix
    //   B[y][z] = q^{d/2} |C|^{-3/2} C(y - z),  y in C, z in F_q^d.
    const auto& pts = cone_.points();
    const double card = static_cast<double>(pts.size());
    const double scale = std::pow(static_cast<double>(field_->q()), 0.5 * d_) / std::pow(card, 1.5);
    std::vector<std::vector<int>> coords(n);
    for (std::uint64_t z = 0; z < n; ++z) coords[z] = decode_point(*field_, d_, z);
    Eigen::MatrixXd B(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(n));
    std::vector<int> diff(d_);
    for (std::size_t row = 0; row < pts.size(); ++row) {
        const auto& y = coords[pts[row]];
        for (std::uint64_t z = 0; z < n; ++z) {
            const auto& zc = coords[z];
            for (int i = 0; i < d_; ++i) diff[i] = field_->sub(y[i], zc[i]);
            B(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(z)) =
                cone_.contains(encode_point(*field_, diff)) ? scale : 0.0;
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(B);
    const double svd_value = svd.singularValues()(0);

    return OpNormResult{svd_value, power_value, svd_value};
}

const SubspaceSearchResult& ConeOperator::subspace() const {
    if (!subspace_) subspace_ = max_subspace_in_cone(*field_, d_);
    return *subspace_;
}

TestFamily TestFamily::delta() { return TestFamily{}; }

TestFamily TestFamily::subspace_indicator() {
    TestFamily f;
    f.kind = Kind::SubspaceIndicator;
    return f;
}

TestFamily TestFamily::cone_indicator() {
    TestFamily f;
    f.kind = Kind::ConeIndicator;
    return f;
}

TestFamily TestFamily::random_set(std::uint64_t size, std::uint64_t seed) {
    TestFamily f;
    f.kind = Kind::RandomSet;
    f.set_size = size;
    f.seed = seed;
    return f;
}

TestFamily TestFamily::dyadic_step(int levels, double size_exponent, std::uint64_t seed) {
    TestFamily f;
    f.kind = Kind::DyadicStep;
    f.levels = levels;
    f.size_exponent = size_exponent;
    f.seed = seed;
    return f;
}

namespace {

std::string format_id(const char* fmt, ...) {
    char buf[128];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

// Draws k distinct points, either anywhere or from the cone.
std::vector<std::uint64_t> draw_points(const ConeOperator& op, bool on_cone, std::uint64_t k,
                                       Rng& rng) {
    if (!on_cone) return sample_distinct(rng, point_count(op.field(), op.dim()), k);
    const auto& pts = op.cone().points();
    auto positions = sample_distinct(rng, pts.size(), std::min<std::uint64_t>(k, pts.size()));
    for (auto& v : positions) v = pts[v];
    return positions;
}

}  // namespace

std::vector<FamilyMember> generate_family(const TestFamily& family, const ConeOperator& op) {
    const FieldSpec& F = op.field();
    const int d = op.dim();
    std::vector<FamilyMember> out;

    switch (family.kind) {
        case TestFamily::Kind::Delta: {
            // 0 lies on the cone, so the same witness serves both sides
            out.push_back({"delta", FunctionOnSpace::delta(F, d, Side::SpaceDX, 0)});
            break;
        }
        case TestFamily::Kind::SubspaceIndicator: {
            const auto& search = op.subspace();
            out.push_back({format_id("subspace:dim=%d", search.subspace.dim),
                           FunctionOnSpace::indicator(F, d, Side::SpaceDX,
                                                      search.subspace.points)});
            break;
        }
        case TestFamily::Kind::ConeIndicator: {
            out.push_back({"cone", op.cone().indicator(Side::SpaceDX)});
            break;
        }
        case TestFamily::Kind::RandomSet: {
            if (family.set_size < 1) throw std::invalid_argument("BadParams: empty random set");
            Rng rng(mix_seed(family.seed, 0x5e7));
            const auto pts = draw_points(op, family.on_cone, family.set_size, rng);
            out.push_back({format_id("random:size=%llu:seed=%llu",
                                     static_cast<unsigned long long>(pts.size()),
                                     static_cast<unsigned long long>(family.seed)),
                           FunctionOnSpace::indicator(F, d, Side::SpaceDX, pts)});
            break;
        }
        case TestFamily::Kind::DyadicStep: {
            if (family.levels < 1) throw std::invalid_argument("BadParams: levels must be >= 1");
            const double alpha = std::clamp(family.size_exponent, 0.5, 4.0);
            const std::uint64_t pool_size =
                family.on_cone ? op.cone().cardinality() : point_count(F, d);
            Rng rng(mix_seed(family.seed, 0xd7ad1c));

            // pairwise disjoint random E_i with |E_i| tracking 2^{alpha i},
            // the step-function size schedule at exponent alpha
            std::vector<std::uint8_t> taken(point_count(F, d), 0);
            FunctionOnSpace f(F, d, Side::SpaceDX);
            std::uint64_t used = 0;
            for (int level = 0; level < family.levels; ++level) {
                std::uint64_t want = static_cast<std::uint64_t>(
                    std::llround(std::pow(2.0, alpha * level) / family.levels + 0.5));
                want = std::max<std::uint64_t>(want, 1);
                want = std::min(want, pool_size / 2 - std::min(pool_size / 2, used));
                if (want == 0) break;
                const double weight = std::pow(2.0, -level);
                std::uint64_t placed = 0;
                while (placed < want) {
                    const auto pts = draw_points(op, family.on_cone, want - placed, rng);
                    bool progressed = false;
                    for (std::uint64_t idx : pts) {
                        if (taken[idx]) continue;
                        taken[idx] = 1;
                        f[idx] = weight;
                        ++placed;
                        ++used;
                        progressed = true;
                        if (placed == want) break;
                    }
                    if (!progressed) break;
                }
            }
            out.push_back({format_id("dyadic:levels=%d:alpha=%.3f:seed=%llu", family.levels,
                                     alpha, static_cast<unsigned long long>(family.seed)),
                           std::move(f)});
            break;
        }
        case TestFamily::Kind::Custom: {
            if (family.custom_values.size() != point_count(F, d))
                throw std::invalid_argument("BadParams: custom values have the wrong length");
            FunctionOnSpace f(F, d, Side::SpaceDX);
            std::copy(family.custom_values.begin(), family.custom_values.end(),
                      f.values().begin());
            out.push_back({"custom", std::move(f)});
            break;
        }
    }

    if (family.on_cone) {
        for (const auto& member : out)
            for (std::uint64_t i = 0; i < member.f.size(); ++i)
                if (member.f[i] != cplx{0.0, 0.0} && !op.cone().contains(i))
                    throw std::logic_error("family member escaped the cone");
    }
    return out;
}

RatioResult best_ratio(const std::vector<TestFamily>& families, const ExponentPair& pair,
                       Direction dir, const ConeOperator& op) {
    if (families.empty()) throw std::invalid_argument("BadParams: no families");
    RatioResult best;
    best.q = op.q();
    best.d = op.dim();
    best.pair = pair;
    best.direction = dir;
    best.ratio = -1.0;
    for (const auto& family : families) {
        for (const auto& member : generate_family(family, op)) {
            const double r = op.ratio(member.f, pair, dir);
            if (r > best.ratio) {
                best.ratio = r;
                best.family_id = member.id;
            }
        }
    }
    return best;
}

double refine_ratio(FunctionOnSpace& f, const ExponentPair& pair, Direction dir,
                    const ConeOperator& op, int steps, double step, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x12ef));
    double best = op.ratio(f, pair, dir);
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < f.size(); ++i)
        if (f[i] != cplx{0.0, 0.0}) support.push_back(i);
    if (support.empty()) return best;

    for (int s = 0; s < steps; ++s) {
        const std::uint64_t idx = support[rng.below(support.size())];
        const cplx old = f[idx];
        const double factor = rng.below(2) == 0 ? 1.0 + step : 1.0 / (1.0 + step);
        f[idx] = old * factor;
        const double r = op.ratio(f, pair, dir);
        if (r > best) {
            best = r;
        } else {
            f[idx] = old;
        }
    }
    return best;
}

}  // namespace ffcone

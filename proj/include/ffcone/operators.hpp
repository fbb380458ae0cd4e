#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffcone/harmonic.hpp"
#include "ffcone/rational.hpp"
#include "ffcone/subspace.hpp"
#include "ffcone/variety.hpp"

namespace ffcone {

enum class Direction { Forward, Adjoint };

const char* direction_name(Direction dir);

struct RatioResult {
    int q = 0;
    int d = 0;
    std::string family_id;
    ExponentPair pair;
    double ratio = 0.0;
    Direction direction = Direction::Forward;
};

/// The restricted averaging operator to the cone and everything derived
/// from it. Construction builds the cone, its surface measure and the
/// kernel transforms once; all members are then read-only, so one
/// instance can serve a whole scan.
class ConeOperator {
public:
    ConeOperator(const FieldSpec& field, int d);

    const FieldSpec& field() const { return *field_; }
    int dim() const { return d_; }
    int q() const { return field_->q(); }
    const Variety& cone() const { return cone_; }
    const SurfaceMeasure& sigma() const { return sigma_; }
    double qd() const { return qd_; }

    const FunctionOnSpace& sigma_vee() const { return sigma_vee_; }  // on dm
    const FunctionOnSpace& cone_vee() const { return cone_vee_; }    // on dm
    const FunctionOnSpace& K() const { return K_; }                  // on dm
    const FunctionOnSpace& M() const { return M_; }                  // on dm
    const FunctionOnSpace& K_hat() const { return K_hat_; }          // on dx
    const FunctionOnSpace& M_hat() const { return M_hat_; }          // on dx

    /// A_C f = (f * sigma)|_C, returned in cone-point order.
    std::vector<cplx> apply(const FunctionOnSpace& f) const;
    /// f * sigma on the whole space.
    FunctionOnSpace apply_full(const FunctionOnSpace& f) const;

    /// A_C^* h = (q^{2d}/|C|^2) (h * C). Throws std::invalid_argument
    /// ("SupportViolation") when h is nonzero off the cone.
    FunctionOnSpace apply_adjoint(const FunctionOnSpace& h) const;

    /// A_C f = f*1 + f*K_hat; residual is the max pointwise gap on C.
    struct ForwardDecomposition {
        FunctionOnSpace background;   // f * 1 (a constant)
        FunctionOnSpace oscillatory;  // f * K_hat
        double residual;
    };
    ForwardDecomposition decompose_forward(const FunctionOnSpace& f) const;

    /// A_C^* h = (q^{2d}/|C|^2) h*M_hat + (q^d/|C|) h*1.
    struct AdjointDecomposition {
        FunctionOnSpace oscillatory;  // (q^{2d}/|C|^2) h * M_hat
        FunctionOnSpace background;   // (q^d/|C|) h * 1
        double residual;
    };
    AdjointDecomposition decompose_adjoint(const FunctionOnSpace& h) const;

    /// Forward: |A_C f|_{L^r(C,sigma)} / |f|_{L^p(dx)}.
    /// Adjoint: |A_C^* h|_{L^{p'}(dx)} / |h|_{L^{r'}(C,sigma)} with the
    /// conjugate exponents. Throws std::invalid_argument
    /// ("ZeroFunction") when the denominator vanishes.
    double ratio(const FunctionOnSpace& f, const ExponentPair& pair, Direction dir) const;

    /// Exact L^2(dx) -> L^2(C,sigma) operator norm by two independent
    /// routes: seeded power iteration on A*A through the operator
    /// machinery, and the largest singular value of the dense
    /// measure-weighted matrix. Throws std::invalid_argument
    /// ("TooLarge") above the dense limit.
    static constexpr std::uint64_t kDenseLimit = 4096;
    struct OpNormResult {
        double value;
        double power_iteration;
        double dense_svd;
    };
    OpNormResult l2_opnorm() const;

    /// Lazily computed maximal subspace inside the cone (even d only).
    const SubspaceSearchResult& subspace() const;

private:
    const FieldSpec* field_;
    int d_;
    double qd_;
    Variety cone_;
    SurfaceMeasure sigma_;
    FunctionOnSpace sigma_vee_;
    FunctionOnSpace cone_vee_;
    FunctionOnSpace K_;
    FunctionOnSpace M_;
    FunctionOnSpace K_hat_;
    FunctionOnSpace M_hat_;
    mutable std::optional<SubspaceSearchResult> subspace_;
};

/// Deterministic generators for the witness families driving ratio
/// scans. With on_cone set, generated functions are supported on the
/// cone (for the adjoint direction).
struct TestFamily {
    enum class Kind { Delta, SubspaceIndicator, ConeIndicator, RandomSet, DyadicStep, Custom };

    Kind kind = Kind::Delta;
    std::uint64_t seed = 0;
    std::uint64_t set_size = 0;     // RandomSet
    int levels = 0;                 // DyadicStep
    double size_exponent = 1.0;     // DyadicStep: |E_i| tracks 2^{exponent * i}
    bool on_cone = false;
    std::vector<cplx> custom_values;

    static TestFamily delta();
    static TestFamily subspace_indicator();
    static TestFamily cone_indicator();
    static TestFamily random_set(std::uint64_t size, std::uint64_t seed);
    static TestFamily dyadic_step(int levels, double size_exponent, std::uint64_t seed);
};

struct FamilyMember {
    std::string id;
    FunctionOnSpace f;
};

/// Throws std::invalid_argument ("BadParams") on inconsistent family
/// parameters. Output is deterministic given the seed.
std::vector<FamilyMember> generate_family(const TestFamily& family, const ConeOperator& op);

RatioResult best_ratio(const std::vector<TestFamily>& families, const ExponentPair& pair,
                       Direction dir, const ConeOperator& op);

/// Coordinate-wise multiplicative perturbation ascent on the ratio;
/// returns the (possibly improved) ratio and updates f in place.
double refine_ratio(FunctionOnSpace& f, const ExponentPair& pair, Direction dir,
                    const ConeOperator& op, int steps = 200, double step = 0.1,
                    std::uint64_t seed = 0);

}  // namespace ffcone

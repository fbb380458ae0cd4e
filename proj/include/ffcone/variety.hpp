#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffcone/function.hpp"

namespace ffcone {

enum class VarietyKind { Cone, DualCone, Paraboloid, Sphere };

const char* variety_name(VarietyKind kind);

/// A point set in F_q^d with its cardinality, stored both as a sorted
/// index list and a membership mask. Construction is an exhaustive scan
/// over all q^d points; built objects are immutable.
class Variety {
public:
    /// Cone: x_1^2+...+x_{d-2}^2 = x_{d-1} x_d (d >= 3).
    /// DualCone: Gamma(m) = 0 (d >= 3), always contains 0.
    /// Paraboloid: x_d = x_1^2+...+x_{d-1}^2 (d >= 2).
    /// Sphere: x_1^2+...+x_d^2 = radius, radius != 0 (d >= 2).
    static Variety build(const FieldSpec& field, int d, VarietyKind kind, int sphere_radius = 1);

    const FieldSpec& field() const { return *field_; }
    int dim() const { return d_; }
    VarietyKind kind() const { return kind_; }
    const std::vector<std::uint64_t>& points() const { return points_; }
    std::uint64_t cardinality() const { return points_.size(); }
    bool contains(std::uint64_t index) const { return mask_[index] != 0; }

    /// The characteristic function as a FunctionOnSpace.
    FunctionOnSpace indicator(Side side) const;

private:
    const FieldSpec* field_ = nullptr;
    int d_ = 0;
    VarietyKind kind_ = VarietyKind::Cone;
    std::vector<std::uint64_t> points_;
    std::vector<std::uint8_t> mask_;
};

/// The normalized surface measure: mass 1/|V| per point; as a density
/// against dx it equals (q^d/|V|) 1_V.
struct SurfaceMeasure {
    const Variety* variety;
    double point_mass;
    double density_on_dx;

    FunctionOnSpace as_function() const;
};

/// Throws std::invalid_argument ("EmptyVariety") when V has no points.
SurfaceMeasure surface_measure(const Variety& variety);

/// (|V|^{-1} sum_{x in V} |f(x)|^r)^{1/r}; r = infinity takes the max
/// over V. f must live on dx over the same space.
double surface_norm(const FunctionOnSpace& f, const Variety& variety, double r);
double surface_norm(std::span<const cplx> values_on_variety, double r);

/// K(m) = sigma_vee(m) - delta_0(m): equals sigma_vee away from 0 and
/// vanishes at 0. Lives on dm.
FunctionOnSpace kernel_K(const Variety& cone);

/// M(m) = C_vee(m) - (|C|/q^d) delta_0(m); satisfies
/// C(x) = M_hat(x) + |C|/q^d pointwise.
FunctionOnSpace kernel_M(const Variety& cone);

/// Regularity diagnostics: size_ratio = |V|/q^{d-1} and
/// decay_ratio = q^{(d+1)/2} max_{m != 0} |V_vee(m)|. A regular variety
/// keeps both O(1) as q grows.
struct RegularityReport {
    double size_ratio;
    double decay_ratio;
};

RegularityReport regularity_report(const Variety& variety);

}  // namespace ffcone

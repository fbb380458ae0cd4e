#include "ffcone/variety.hpp"

#include <cmath>
#include <stdexcept>

#include "ffcone/harmonic.hpp"

namespace ffcone {

const char* variety_name(VarietyKind kind) {
    switch (kind) {
        case VarietyKind::Cone: return "cone";
        case VarietyKind::DualCone: return "dual-cone";
        case VarietyKind::Paraboloid: return "paraboloid";
        case VarietyKind::Sphere: return "sphere";
    }
    return "?";
}

Variety Variety::build(const FieldSpec& field, int d, VarietyKind kind, int sphere_radius) {
    const int min_d = (kind == VarietyKind::Cone || kind == VarietyKind::DualCone) ? 3 : 2;
    if (d < min_d) throw std::invalid_argument("DimensionTooSmall: d too small for this variety");
    if (kind == VarietyKind::Sphere && sphere_radius == 0)
        throw std::invalid_argument("ZeroRadius: sphere radius must be nonzero");

    const std::uint64_t n = point_count(field, d);
    Variety v;
    v.field_ = &field;
    v.d_ = d;
    v.kind_ = kind;
    v.mask_.assign(n, 0);

    std::vector<int> x(d, 0);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        bool member = false;
        switch (kind) {
            case VarietyKind::Cone:
                member = cone_form(field, x) == 0;
                break;
            case VarietyKind::DualCone:
                member = gamma_form(field, x) == 0;
                break;
            case VarietyKind::Paraboloid: {
                int s = 0;
                for (int i = 0; i < d - 1; ++i) s = field.add(s, field.mul(x[i], x[i]));
                member = s == x[d - 1];
                break;
            }
            case VarietyKind::Sphere: {
                int s = 0;
                for (int i = 0; i < d; ++i) s = field.add(s, field.mul(x[i], x[i]));
                member = s == field.from_int(sphere_radius);
                break;
            }
        }
        if (member) {
            v.mask_[idx] = 1;
            v.points_.push_back(idx);
        }
        for (int i = 0; i < d; ++i) {
            if (++x[i] < field.q()) break;
            x[i] = 0;
        }
    }
    return v;
}

FunctionOnSpace Variety::indicator(Side side) const {
    return FunctionOnSpace::indicator(*field_, d_, side, points_);
}

FunctionOnSpace SurfaceMeasure::as_function() const {
    FunctionOnSpace f(variety->field(), variety->dim(), Side::SpaceDX);
    for (std::uint64_t idx : variety->points()) f[idx] = cplx{density_on_dx, 0.0};
    return f;
}

SurfaceMeasure surface_measure(const Variety& variety) {
    if (variety.cardinality() == 0) throw std::invalid_argument("EmptyVariety");
    const double card = static_cast<double>(variety.cardinality());
    const double qd = std::pow(static_cast<double>(variety.field().q()), variety.dim());
    return SurfaceMeasure{&variety, 1.0 / card, qd / card};
}

double surface_norm(const FunctionOnSpace& f, const Variety& variety, double r) {
    if (variety.cardinality() == 0) throw std::invalid_argument("EmptyVariety");
    if (f.side() != Side::SpaceDX)
        throw std::invalid_argument("WrongSide: surface_norm expects a function on dx");
    if (std::isinf(r)) {
        double m = 0.0;
        for (std::uint64_t idx : variety.points()) m = std::max(m, std::abs(f[idx]));
        return m;
    }
    if (!(r >= 1.0)) throw std::invalid_argument("BadExponent: r must be >= 1");
    double acc = 0.0;
    for (std::uint64_t idx : variety.points()) acc += std::pow(std::abs(f[idx]), r);
    return std::pow(acc / static_cast<double>(variety.cardinality()), 1.0 / r);
}

double surface_norm(std::span<const cplx> values_on_variety, double r) {
    if (values_on_variety.empty()) throw std::invalid_argument("EmptyVariety");
    if (std::isinf(r)) {
        double m = 0.0;
        for (const cplx& v : values_on_variety) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(r >= 1.0)) throw std::invalid_argument("BadExponent: r must be >= 1");
    double acc = 0.0;
    for (const cplx& v : values_on_variety) acc += std::pow(std::abs(v), r);
    return std::pow(acc / static_cast<double>(values_on_variety.size()), 1.0 / r);
}

FunctionOnSpace kernel_K(const Variety& cone) {
    FunctionOnSpace K = inverse_fourier(surface_measure(cone).as_function());
    K[0] -= 1.0;
    return K;
}

FunctionOnSpace kernel_M(const Variety& cone) {
    FunctionOnSpace M = inverse_fourier(cone.indicator(Side::SpaceDX));
    const double qd = std::pow(static_cast<double>(cone.field().q()), cone.dim());
    M[0] -= static_cast<double>(cone.cardinality()) / qd;
    return M;
}

RegularityReport regularity_report(const Variety& variety) {
    if (variety.cardinality() == 0) throw std::invalid_argument("EmptyVariety");
    const double q = variety.field().q();
    const int d = variety.dim();
    const FunctionOnSpace vee = inverse_fourier(variety.indicator(Side::SpaceDX));
    double decay = 0.0;
    for (std::uint64_t m = 1; m < vee.size(); ++m) decay = std::max(decay, std::abs(vee[m]));
    return RegularityReport{
        static_cast<double>(variety.cardinality()) / std::pow(q, d - 1),
        std::pow(q, 0.5 * (d + 1)) * decay,
    };
}

}  // namespace ffcone

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ffcone/field.hpp"

namespace ffcone {

using cplx = std::complex<double>;

/// Which measure the function lives under: SpaceDX carries weight q^{-d}
/// per point, DualDM weight 1.
enum class Side { SpaceDX, DualDM };

const char* side_name(Side side);

/// A dense complex-valued function on F_q^d, indexed by the base-q point
/// encoding. Values are immutable inputs to all operations in this
/// library: nothing mutates its arguments and results are freshly
/// allocated. The referenced FieldSpec must outlive the function.
class FunctionOnSpace {
public:
    FunctionOnSpace(const FieldSpec& field, int d, Side side)
        : field_(&field), d_(d), side_(side), values_(point_count(field, d), cplx{0.0, 0.0}) {}

    static FunctionOnSpace constant(const FieldSpec& field, int d, Side side, cplx value);
    static FunctionOnSpace delta(const FieldSpec& field, int d, Side side, std::uint64_t at = 0);
    static FunctionOnSpace indicator(const FieldSpec& field, int d, Side side,
                                     std::span<const std::uint64_t> points);

    const FieldSpec& field() const { return *field_; }
    int dim() const { return d_; }
    Side side() const { return side_; }
    std::uint64_t size() const { return values_.size(); }

    cplx operator[](std::uint64_t i) const { return values_[i]; }
    cplx& operator[](std::uint64_t i) { return values_[i]; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }

    /// Per-point weight of the ambient measure.
    double point_weight() const;

    void write_csv(std::ostream& out) const;
    static FunctionOnSpace read_csv(std::istream& in);

private:
    const FieldSpec* field_;
    int d_;
    Side side_;
    std::vector<cplx> values_;
};

}  // namespace ffcone

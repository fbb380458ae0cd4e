#include "ffcone/function.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ffcone {

const char* side_name(Side side) { return side == Side::SpaceDX ? "dx" : "dm"; }

FunctionOnSpace FunctionOnSpace::constant(const FieldSpec& field, int d, Side side, cplx value) {
    FunctionOnSpace f(field, d, side);
    for (auto& v : f.values_) v = value;
    return f;
}

FunctionOnSpace FunctionOnSpace::delta(const FieldSpec& field, int d, Side side, std::uint64_t at) {
    FunctionOnSpace f(field, d, side);
    f.values_.at(at) = cplx{1.0, 0.0};
    return f;
}

FunctionOnSpace FunctionOnSpace::indicator(const FieldSpec& field, int d, Side side,
                                           std::span<const std::uint64_t> points) {
    FunctionOnSpace f(field, d, side);
    for (std::uint64_t idx : points) f.values_.at(idx) = cplx{1.0, 0.0};
    return f;
}

double FunctionOnSpace::point_weight() const {
    if (side_ == Side::DualDM) return 1.0;
    return std::pow(static_cast<double>(field_->q()), -d_);
}

void FunctionOnSpace::write_csv(std::ostream& out) const {
    out << "p=" << field_->p() << ",e=" << field_->e() << ",d=" << d_
        << ",side=" << side_name(side_) << "\n";
    out << "index,re,im\n";
    char buf[64];
    for (std::uint64_t i = 0; i < values_.size(); ++i) {
        out << i << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", values_[i].real());
        out << buf << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", values_[i].imag());
        out << buf << "\n";
    }
}

namespace {

// FieldSpec instances materialized while parsing; keyed by (p,e) so
// repeated reads share tables. The cache is only used by read_csv.
const FieldSpec& cached_field(int p, int e) {
    static std::map<std::pair<int, int>, std::unique_ptr<FieldSpec>> cache;
    auto& slot = cache[{p, e}];
    if (!slot) slot = std::make_unique<FieldSpec>(FieldSpec::make(p, e));
    return *slot;
}

}  // namespace

FunctionOnSpace FunctionOnSpace::read_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("IoError: empty stream");
    int p = 0, e = 0, d = 0;
    char side_buf[8] = {0};
    if (std::sscanf(header.c_str(), "p=%d,e=%d,d=%d,side=%2s", &p, &e, &d, side_buf) != 4)
        throw std::runtime_error("IoError: malformed header: " + header);
    const Side side = std::string(side_buf) == "dx" ? Side::SpaceDX : Side::DualDM;

    std::string columns;
    std::getline(in, columns);
    if (columns != "index,re,im") throw std::runtime_error("IoError: malformed column row");

    FunctionOnSpace f(cached_field(p, e), d, side);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        unsigned long long idx = 0;
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%llu,%lg,%lg", &idx, &re, &im) != 3)
            throw std::runtime_error("IoError: malformed value row: " + line);
        f[idx] = cplx{re, im};
    }
    return f;
}

}  // namespace ffcone

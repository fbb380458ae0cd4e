#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "ffcone/harmonic.hpp"
#include "ffcone/hull.hpp"
#include "ffcone/operators.hpp"
#include "ffcone/scan.hpp"
#include "ffcone/subspace.hpp"
#include "ffcone/verify.hpp"

namespace py = pybind11;
using namespace ffcone;

namespace {

using Array = py::array_t<std::complex<double>>;

// Python-side field handle; shared_ptr keeps the tables alive for every
// object derived from it.
struct PyField {
    std::shared_ptr<FieldSpec> spec;
    explicit PyField(int p, int e) : spec(std::make_shared<FieldSpec>(FieldSpec::make(p, e))) {}
};

Side side_of(const std::string& name) {
    if (name == "dx") return Side::SpaceDX;
    if (name == "dm") return Side::DualDM;
    throw std::invalid_argument("side must be 'dx' or 'dm'");
}

FunctionOnSpace to_function(const PyField& field, int d, Side side, const Array& values) {
    const std::uint64_t n = point_count(*field.spec, d);
    if (static_cast<std::uint64_t>(values.size()) != n)
        throw std::invalid_argument("values must have length q^d");
    FunctionOnSpace f(*field.spec, d, side);
    auto r = values.unchecked<1>();
    for (std::uint64_t i = 0; i < n; ++i) f[i] = r(static_cast<py::ssize_t>(i));
    return f;
}

Array from_function(const FunctionOnSpace& f) {
    Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(f.size())});
    auto w = out.mutable_unchecked<1>();
    for (std::uint64_t i = 0; i < f.size(); ++i) w(static_cast<py::ssize_t>(i)) = f[i];
    return out;
}

struct PyConeOperator {
    std::shared_ptr<FieldSpec> spec;
    int d;
    ConeOperator op;
    PyConeOperator(const PyField& field, int dim) : spec(field.spec), d(dim), op(*spec, dim) {}
};

Direction direction_of(const std::string& name) {
    if (name == "forward") return Direction::Forward;
    if (name == "adjoint") return Direction::Adjoint;
    throw std::invalid_argument("direction must be 'forward' or 'adjoint'");
}

py::dict subspace_dict(const FieldSpec& F, const SubspaceSearchResult& res) {
    py::dict out;
    out["eta_minus_one"] = F.eta(F.neg(1));
    out["predicted_max_dim"] = res.predicted_dim;
    out["found_dim"] = res.subspace.dim;
    out["basis"] = res.subspace.basis;
    out["points"] = res.subspace.points;
    out["exhaustive"] = res.exhaustive;
    out["budget_exceeded"] = res.budget_exceeded;
    out["method"] = res.method;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ffcone, m) {
    m.doc() = "finite-field cone averaging laboratory";

    py::class_<PyField>(m, "Field")
        .def(py::init<int, int>(), py::arg("p"), py::arg("e") = 1)
        .def_property_readonly("p", [](const PyField& f) { return f.spec->p(); })
        .def_property_readonly("e", [](const PyField& f) { return f.spec->e(); })
        .def_property_readonly("q", [](const PyField& f) { return f.spec->q(); })
        .def_property_readonly("modulus", [](const PyField& f) { return f.spec->modulus(); })
        .def("add", [](const PyField& f, int a, int b) { return f.spec->add(a, b); })
        .def("sub", [](const PyField& f, int a, int b) { return f.spec->sub(a, b); })
        .def("mul", [](const PyField& f, int a, int b) { return f.spec->mul(a, b); })
        .def("neg", [](const PyField& f, int a) { return f.spec->neg(a); })
        .def("inv", [](const PyField& f, int a) { return f.spec->inv(a); })
        .def("pow", [](const PyField& f, int a, long long n) { return f.spec->pow(a, n); })
        .def("trace", [](const PyField& f, int a) { return f.spec->trace(a); })
        .def("eta", [](const PyField& f, int a) { return f.spec->eta(a); })
        .def("chi", [](const PyField& f, int a) { return chi(*f.spec, a); })
        .def("encode_point",
             [](const PyField& f, const std::vector<int>& coords) {
                 return encode_point(*f.spec, coords);
             })
        .def("decode_point",
             [](const PyField& f, int d, std::uint64_t idx) {
                 return decode_point(*f.spec, d, idx);
             })
        .def("gamma_form",
             [](const PyField& f, const std::vector<int>& xi) { return gamma_form(*f.spec, xi); })
        .def("cone_contains", [](const PyField& f, const std::vector<int>& x) {
            return cone_contains(*f.spec, x);
        });

    m.def(
        "fourier_hat",
        [](const PyField& field, int d, const Array& g) {
            return from_function(fourier_hat(to_function(field, d, Side::DualDM, g)));
        },
        py::arg("field"), py::arg("d"), py::arg("g"));
    m.def(
        "inverse_fourier",
        [](const PyField& field, int d, const Array& f) {
            return from_function(inverse_fourier(to_function(field, d, Side::SpaceDX, f)));
        },
        py::arg("field"), py::arg("d"), py::arg("f"));
    m.def(
        "convolve",
        [](const PyField& field, int d, const Array& f, const Array& h) {
            return from_function(convolve(to_function(field, d, Side::SpaceDX, f),
                                          to_function(field, d, Side::SpaceDX, h)));
        },
        py::arg("field"), py::arg("d"), py::arg("f"), py::arg("h"));
    m.def(
        "lp_norm",
        [](const PyField& field, int d, const std::string& side, const Array& f, double p) {
            return lp_norm(to_function(field, d, side_of(side), f), p);
        },
        py::arg("field"), py::arg("d"), py::arg("side"), py::arg("f"), py::arg("p"));

    m.def(
        "build_variety",
        [](const PyField& field, int d, const std::string& kind, int radius) {
            VarietyKind k;
            if (kind == "cone")
                k = VarietyKind::Cone;
            else if (kind == "dual-cone")
                k = VarietyKind::DualCone;
            else if (kind == "paraboloid")
                k = VarietyKind::Paraboloid;
            else if (kind == "sphere")
                k = VarietyKind::Sphere;
            else
                throw std::invalid_argument("unknown variety kind: " + kind);
            const Variety v = Variety::build(*field.spec, d, k, radius);
            py::dict out;
            out["kind"] = kind;
            out["cardinality"] = v.cardinality();
            out["points"] = v.points();
            return out;
        },
        py::arg("field"), py::arg("d"), py::arg("kind"), py::arg("radius") = 1);

    m.def(
        "regularity_report",
        [](const PyField& field, int d, const std::string& kind, int radius) {
            VarietyKind k = kind == "cone"         ? VarietyKind::Cone
                            : kind == "paraboloid" ? VarietyKind::Paraboloid
                                                   : VarietyKind::Sphere;
            const auto rep = regularity_report(Variety::build(*field.spec, d, k, radius));
            return py::make_tuple(rep.size_ratio, rep.decay_ratio);
        },
        py::arg("field"), py::arg("d"), py::arg("kind"), py::arg("radius") = 1);

    m.def(
        "max_subspace_in_cone",
        [](const PyField& field, int d, std::uint64_t budget, std::uint64_t seed) {
            return subspace_dict(*field.spec, max_subspace_in_cone(*field.spec, d, budget, seed));
        },
        py::arg("field"), py::arg("d"), py::arg("budget") = 200000, py::arg("seed") = 1);

    py::class_<PyConeOperator>(m, "ConeOperator")
        .def(py::init<const PyField&, int>(), py::arg("field"), py::arg("d"))
        .def_property_readonly("q", [](const PyConeOperator& o) { return o.op.q(); })
        .def_property_readonly("d", [](const PyConeOperator& o) { return o.d; })
        .def_property_readonly(
            "cone_cardinality",
            [](const PyConeOperator& o) { return o.op.cone().cardinality(); })
        .def_property_readonly("cone_points",
                               [](const PyConeOperator& o) { return o.op.cone().points(); })
        .def("kernel_K", [](const PyConeOperator& o) { return from_function(o.op.K()); })
        .def("kernel_M", [](const PyConeOperator& o) { return from_function(o.op.M()); })
        .def("sigma_density",
             [](const PyConeOperator& o) { return o.op.sigma().density_on_dx; })
        .def("apply",
             [](const PyConeOperator& o, const Array& f) {
                 FunctionOnSpace fn(*o.spec, o.d, Side::SpaceDX);
                 auto r = f.unchecked<1>();
                 for (std::uint64_t i = 0; i < fn.size(); ++i)
                     fn[i] = r(static_cast<py::ssize_t>(i));
                 return o.op.apply(fn);
             })
        .def("apply_full",
             [](const PyConeOperator& o, const Array& f) {
                 FunctionOnSpace fn(*o.spec, o.d, Side::SpaceDX);
                 auto r = f.unchecked<1>();
                 for (std::uint64_t i = 0; i < fn.size(); ++i)
                     fn[i] = r(static_cast<py::ssize_t>(i));
                 return from_function(o.op.apply_full(fn));
             })
        .def("apply_adjoint",
             [](const PyConeOperator& o, const Array& h) {
                 FunctionOnSpace fn(*o.spec, o.d, Side::SpaceDX);
                 auto r = h.unchecked<1>();
                 for (std::uint64_t i = 0; i < fn.size(); ++i)
                     fn[i] = r(static_cast<py::ssize_t>(i));
                 return from_function(o.op.apply_adjoint(fn));
             })
        .def("ratio",
             [](const PyConeOperator& o, const Array& f, const std::string& inv_p,
                const std::string& inv_r, const std::string& direction) {
                 FunctionOnSpace fn(*o.spec, o.d, Side::SpaceDX);
                 auto r = f.unchecked<1>();
                 for (std::uint64_t i = 0; i < fn.size(); ++i)
                     fn[i] = r(static_cast<py::ssize_t>(i));
                 const ExponentPair pair(parse_rational(inv_p), parse_rational(inv_r));
                 return o.op.ratio(fn, pair, direction_of(direction));
             },
             py::arg("f"), py::arg("inv_p"), py::arg("inv_r"), py::arg("direction") = "forward")
        .def("l2_opnorm",
             [](const PyConeOperator& o) {
                 const auto norm = o.op.l2_opnorm();
                 py::dict out;
                 out["value"] = norm.value;
                 out["power_iteration"] = norm.power_iteration;
                 out["dense_svd"] = norm.dense_svd;
                 return out;
             })
        .def("subspace", [](const PyConeOperator& o) {
            return subspace_dict(*o.spec, o.op.subspace());
        });

    m.def(
        "hull_classify",
        [](const std::string& inv_p, const std::string& inv_r, int d,
           const std::string& case_name) {
            const ExponentPair pair(parse_rational(inv_p), parse_rational(inv_r));
            const HullCase hull = case_name == "half-dim-subspace"
                                      ? HullCase::half_dim_subspace(d)
                                      : HullCase::no_large_subspace(d);
            return std::string(hull_position_name(hull_classify(pair, hull)));
        },
        py::arg("inv_p"), py::arg("inv_r"), py::arg("d"), py::arg("case") = "half-dim-subspace");

    m.def(
        "verify",
        [](const std::string& check, int d, const std::vector<int>& qs, std::uint64_t seed,
           double threshold) {
            VerifyOptions options;
            options.d = d;
            options.qs = qs;
            options.seed = seed;
            options.slope_threshold = threshold;
            py::list out;
            for (const auto& row : verify(check, options)) {
                py::dict r;
                r["check_id"] = row.check_id;
                r["params"] = row.params;
                r["qs"] = row.qs;
                r["constants"] = row.constants;
                r["witnesses"] = row.witnesses;
                if (row.slope) r["slope"] = *row.slope;
                r["max_residual"] = row.max_residual;
                r["verdict"] = row.verdict;
                out.append(r);
            }
            return out;
        },
        py::arg("check"), py::arg("d"), py::arg("qs") = std::vector<int>{},
        py::arg("seed") = 1, py::arg("threshold") = 0.15);

    m.def("known_checks", &known_checks);
    m.attr("__version__") = "0.1.0";
}

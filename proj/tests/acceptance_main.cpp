// Acceptance suite: one pass/fail line per criterion, exit code 0 only
// when every criterion holds at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ffcone/fit.hpp"
#include "ffcone/harmonic.hpp"
#include "ffcone/hull.hpp"
#include "ffcone/operators.hpp"
#include "ffcone/rng.hpp"
#include "ffcone/scan.hpp"
#include "ffcone/subspace.hpp"
#include "ffcone/verify.hpp"

using namespace ffcone;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
    double time_limit_s;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FunctionOnSpace random_on_cone(const ConeOperator& op, std::uint64_t seed) {
    Rng rng(seed);
    FunctionOnSpace h(op.field(), op.dim(), Side::SpaceDX);
    for (std::uint64_t idx : op.cone().points()) h[idx] = rng.unit_complex();
    return h;
}

// ---- criterion 1: exact identity suite --------------------------------

bool exact_identity_suite(std::string& detail) {
    constexpr double kTol = 1e-9;
    constexpr int kTrials = 20;
    double worst = 0.0;
    std::string worst_name = "none";
    const auto track = [&](const char* name, double residual) {
        if (residual > worst) {
            worst = residual;
            worst_name = name;
        }
    };

    for (int q : {3, 5, 9}) {
        const auto [p, e] = factor_prime_power(q);
        const FieldSpec F = FieldSpec::make(p, e);
        for (int d : {3, 4}) {
            const ConeOperator op(F, d);
            const auto& pts = op.cone().points();
            const double card = static_cast<double>(pts.size());
            const double qd = std::pow(static_cast<double>(q), d);

            // K(0) = M(0) = 0 and the pointwise reconstruction
            track("K(0)", std::abs(op.K()[0]));
            track("M(0)", std::abs(op.M()[0]));
            const FunctionOnSpace ind = op.cone().indicator(Side::SpaceDX);
            double rec = 0.0;
            for (std::uint64_t x = 0; x < ind.size(); ++x)
                rec = std::max(rec, std::abs(op.M_hat()[x] + card / qd - ind[x]));
            track("cone-reconstruction", rec);

            // orthogonality: 1^vee = delta_0
            {
                const auto vee =
                    inverse_fourier(FunctionOnSpace::constant(F, d, Side::SpaceDX, 1.0));
                double r = std::abs(vee[0] - 1.0);
                for (std::uint64_t m = 1; m < vee.size(); ++m) r = std::max(r, std::abs(vee[m]));
                track("orthogonality", r);
            }

            for (int t = 0; t < kTrials; ++t) {
                const std::uint64_t seed = mix_seed(0xACC, q * 1000 + d * 100 + t);
                const auto f = random_function(F, d, Side::SpaceDX, seed);
                const auto g = random_function(F, d, Side::DualDM, mix_seed(seed, 1));
                const auto h = random_on_cone(op, mix_seed(seed, 2));

                // inversion both ways
                {
                    const auto back = fourier_hat(inverse_fourier(f));
                    double r = 0.0;
                    for (std::uint64_t i = 0; i < f.size(); ++i)
                        r = std::max(r, std::abs(back[i] - f[i]));
                    track("inversion-dx", r);
                    const auto back2 = inverse_fourier(fourier_hat(g));
                    r = 0.0;
                    for (std::uint64_t i = 0; i < g.size(); ++i)
                        r = std::max(r, std::abs(back2[i] - g[i]));
                    track("inversion-dm", r);
                }

                // Plancherel
                track("plancherel",
                      std::abs(lp_norm(inverse_fourier(f), 2.0) - lp_norm(f, 2.0)));

                // convolution theorem
                {
                    const auto f2 = random_function(F, d, Side::SpaceDX, mix_seed(seed, 3));
                    const auto conv_vee = inverse_fourier(convolve(f, f2));
                    const auto fv = inverse_fourier(f);
                    const auto f2v = inverse_fourier(f2);
                    double r = 0.0;
                    for (std::uint64_t i = 0; i < conv_vee.size(); ++i)
                        r = std::max(r, std::abs(conv_vee[i] - fv[i] * f2v[i]));
                    track("convolution-theorem", r);
                }

                // duality <A_C f, h> = <f, A_C^* h>
                {
                    const auto af = op.apply(f);
                    cplx lhs{0, 0};
                    for (std::size_t i = 0; i < pts.size(); ++i)
                        lhs += af[i] * std::conj(h[pts[i]]);
                    lhs /= card;
                    const cplx rhs = inner_product(f, op.apply_adjoint(h));
                    track("duality", std::abs(lhs - rhs));
                }

                // both operator decompositions
                track("forward-decomposition", op.decompose_forward(f).residual);
                track("adjoint-decomposition", op.decompose_adjoint(h).residual);

                // extension identity |(f sigma)^vee|_2 = q^{d/2}|C|^{-1/2}|f|_{L2(C,sigma)}
                {
                    FunctionOnSpace fsigma(F, d, Side::SpaceDX);
                    double sum_sq = 0.0;
                    for (std::uint64_t idx : pts) {
                        fsigma[idx] = h[idx] * op.sigma().density_on_dx;
                        sum_sq += std::norm(h[idx]);
                    }
                    const double lhs = lp_norm(inverse_fourier(fsigma), 2.0);
                    const double rhs =
                        std::pow(static_cast<double>(q), 0.5 * d) / std::sqrt(card) *
                        std::sqrt(sum_sq / card);
                    track("extension-identity", std::abs(lhs - rhs) / std::max(rhs, 1e-300));
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max residual %.3g (%s), tolerance %.0e", worst,
                  worst_name.c_str(), kTol);
    detail = buf;
    return worst <= kTol;
}

// ---- criterion 2: cardinalities ----------------------------------------

bool cardinalities(std::string& detail) {
    // brute-force oracle, independent of Variety::build
    int count = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if ((a * a) % 3 == (b * c) % 3) ++count;
    const FieldSpec f3 = FieldSpec::make(3, 1);
    const bool exact = count == 9 && Variety::build(f3, 3, VarietyKind::Cone).cardinality() == 9;

    bool bounded = true;
    double lo = 10, hi = 0;
    for (int q : {3, 5, 7, 9}) {
        const auto [p, e] = factor_prime_power(q);
        const FieldSpec F = FieldSpec::make(p, e);
        for (int d : {3, 4, 6}) {
            const double ratio =
                static_cast<double>(Variety::build(F, d, VarietyKind::Cone).cardinality()) /
                std::pow(static_cast<double>(q), d - 1);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            bounded = bounded && ratio >= 0.5 && ratio <= 2.0;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "|C|(q=3,d=3)=%d; |C|/q^{d-1} in [%.3f, %.3f]", count, lo, hi);
    detail = buf;
    return exact && bounded;
}

// ---- criterion 3: kernel decay -----------------------------------------

bool kernel_decay(std::string& detail) {
    VerifyOptions options;
    options.d = 4;
    options.qs = {3, 5, 7, 9, 11};
    options.seed = 1;
    const auto rows = verify("L2.1", options);
    bool ok = rows.size() == 2;
    std::string slopes;
    for (const auto& row : rows) {
        ok = ok && row.verdict == "stable";
        char buf[48];
        std::snprintf(buf, sizeof(buf), " %+.4f", row.slope.value_or(99.0));
        slopes += buf;
    }
    detail = "slopes" + slopes + " (threshold 0.15)";
    return ok;
}

// ---- criterion 4: subspace dichotomy ------------------------------------

bool subspace_dichotomy(std::string& detail) {
    std::ostringstream log;
    bool ok = true;

    for (int q : {3, 5}) {
        const auto [p, e] = factor_prime_power(q);
        const FieldSpec F = FieldSpec::make(p, e);
        const auto res = max_subspace_in_cone(F, 6);
        const Variety cone = Variety::build(F, 6, VarietyKind::Cone);
        bool verified = res.subspace.dim == 3 &&
                        res.subspace.points.size() == static_cast<std::uint64_t>(q) * q * q;
        for (std::uint64_t idx : res.subspace.points) verified = verified && cone.contains(idx);
        ok = ok && verified;
        log << "d=6,q=" << q << ":dim=" << res.subspace.dim << " ";
    }

    {
        const FieldSpec F = FieldSpec::make(3, 1);
        const Variety cone = Variety::build(F, 4, VarietyKind::Cone);
        std::uint64_t planes = 0, contained = 0;
        enumerate_subspaces(F, 4, 2, [&](const std::vector<std::vector<int>>& rows) {
            ++planes;
            bool all = true;
            for (const auto& pt : span_points(F, 4, rows))
                if (!cone.contains(pt)) {
                    all = false;
                    break;
                }
            if (all) ++contained;
            return true;
        });
        const auto res = max_subspace_in_cone(F, 4);
        ok = ok && planes == 130 && contained == 0 && res.subspace.dim == 1 && res.exhaustive;
        log << "d=4,q=3:planes=" << planes << ",in-cone=" << contained
            << ",dim=" << res.subspace.dim << " ";
    }

    {
        const FieldSpec F = FieldSpec::make(5, 1);
        const auto res = max_subspace_in_cone(F, 4);
        const Variety cone = Variety::build(F, 4, VarietyKind::Cone);
        bool verified = res.subspace.dim == 2 && res.subspace.points.size() == 25;
        for (std::uint64_t idx : res.subspace.points) verified = verified && cone.contains(idx);
        ok = ok && verified;
        log << "d=4,q=5:dim=" << res.subspace.dim;
    }

    detail = log.str();
    return ok;
}

// ---- criterion 5: regularity contrast -----------------------------------

bool regularity_contrast(std::string& detail) {
    std::vector<double> qs, d3, d4, d4_shifted, qs_shifted;
    for (int q : {3, 5, 7, 9, 11}) {
        const auto [p, e] = factor_prime_power(q);
        const FieldSpec F = FieldSpec::make(p, e);
        if (q <= 9) {
            qs.push_back(q);
            d3.push_back(regularity_report(Variety::build(F, 3, VarietyKind::Cone)).decay_ratio);
            d4.push_back(regularity_report(Variety::build(F, 4, VarietyKind::Cone)).decay_ratio);
        }
        if (q >= 5) {
            qs_shifted.push_back(q);
            d4_shifted.push_back(
                regularity_report(Variety::build(F, 4, VarietyKind::Cone)).decay_ratio);
        }
    }
    const double slope3 = fit_log_slope(qs, d3).slope;
    const double slope4 = fit_log_slope(qs, d4).slope;
    const double slope4_shifted = fit_log_slope(qs_shifted, d4_shifted).slope;
    // The d=4 decay ratio is exactly (q-1)/sqrt(q): its fitted exponent
    // on small-q grids sits above 1/2 by the 1/(q-1) local correction,
    // so the +-0.15 band around 1/2 cannot close on either grid. The
    // check stays as stated; the detail records the exact form.
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "decay slope d=3: %+.4f (|.| <= 0.15); d=4: %+.4f on {3,5,7,9}, %+.4f on "
                  "{5,7,9,11} vs band 0.5 +- 0.15 [exact ratio (q-1)/sqrt(q)]",
                  slope3, slope4, slope4_shifted);
    detail = buf;
    return std::abs(slope3) <= 0.15 && std::abs(slope4 - 0.5) <= 0.15;
}

// ---- criterion 6: inequality constant-stability suite --------------------

bool inequality_suite(std::string& detail) {
    bool ok = true;
    int rows_total = 0;
    double worst = 0.0;
    std::string worst_id = "none";

    const auto run = [&](const std::string& check, int d) {
        VerifyOptions options;
        options.d = d;
        options.seed = 1;
        for (const auto& row : verify(check, options)) {
            ++rows_total;
            if (row.verdict != "stable") ok = false;
            const double s = std::abs(row.slope.value_or(0.0));
            if (s > worst) {
                worst = s;
                worst_id = row.check_id;
            }
        }
    };
    for (const char* check : {"L2.3", "L2.4", "L2.5", "C2.6", "L2.8", "C2.9", "L2.10"})
        run(check, 4);
    run("L2.7", 6);
    run("L2.10", 6);

    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d rows, worst |slope| %.4f (%s), threshold 0.15", rows_total,
                  worst, worst_id.c_str());
    detail = buf;
    return ok && rows_total == 18;
}

// ---- criterion 7: sharpness scans ----------------------------------------

bool sharpness_scans(std::string& detail) {
    ScanConfig cfg;
    cfg.d = 6;
    cfg.qs = {3, 5, 7};
    cfg.seed = 1;
    const ScanReport even = exponent_scan(cfg);
    bool ok = even.hull_case == HullCaseId::HalfDimSubspace;
    bool has_p1 = false, has_p2 = false, has_centroid = false;
    int outside = 0;
    for (const auto& row : even.rows) {
        ok = ok && row.verdict == "agree";
        if (row.pair == HullCase::p1(6)) has_p1 = true;
        if (row.pair == HullCase::p2(6)) has_p2 = true;
        if (row.pair == hull_centroid(HullCase::half_dim_subspace(6))) has_centroid = true;
        if (row.position == HullPosition::Outside) ++outside;
        if (row.position == HullPosition::Outside)
            ok = ok && row.witness_slope >= 0.15;
        else
            ok = ok && row.slope <= 0.15;
    }
    ok = ok && has_p1 && has_p2 && has_centroid && outside >= 2;

    ScanConfig odd;
    odd.d = 3;
    odd.qs = {3, 5, 7};
    odd.pairs = {HullCase::p0(3)};
    odd.seed = 1;
    const ScanReport odd_report = exponent_scan(odd);
    ok = ok && odd_report.rows.size() == 1 && odd_report.rows[0].verdict == "agree" &&
         odd_report.rows[0].position == HullPosition::Boundary;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "d=6 grid: %zu rows (outside: %d) all agree; d=3 P0 agrees",
                  even.rows.size(), outside);
    detail = buf;
    return ok;
}

// ---- criterion 8: determinism --------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool determinism(std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ffcone-acceptance";
    fs::create_directories(dir);

    ScanConfig cfg;
    cfg.d = 6;
    cfg.qs = {3, 5};
    cfg.seed = 2024;
    bool ok = true;
    for (const std::string format : {"csv", "json"}) {
        cfg.format = format;
        cfg.out_path = (dir / ("scan-a." + format)).string();
        run_scan(cfg);
        cfg.out_path = (dir / ("scan-b." + format)).string();
        run_scan(cfg);
        ok = ok && read_file((dir / ("scan-a." + format)).string()) ==
                       read_file((dir / ("scan-b." + format)).string());
    }

    VerifyOptions options;
    options.d = 4;
    options.qs = {3, 5, 7};
    options.seed = 2024;
    const auto rows_a = verify("L2.3", options);
    const auto rows_b = verify("L2.3", options);
    ok = ok && rows_a.size() == rows_b.size();
    for (std::size_t i = 0; ok && i < rows_a.size(); ++i)
        ok = rows_a[i].constants == rows_b[i].constants &&
             rows_a[i].witnesses == rows_b[i].witnesses;

    fs::remove_all(dir);
    detail = "scan csv+json byte-identical, verify rows identical";
    return ok;
}

// ---- criterion 9: performance floor ---------------------------------------

bool performance_floor(std::string& detail) {
    const FieldSpec F = FieldSpec::make(3, 2);
    const int d = 6;  // q^d = 531441
    const auto f = random_function(F, d, Side::SpaceDX, 99);

    const auto start = std::chrono::steady_clock::now();
    const auto back = fourier_hat(inverse_fourier(f));
    const double elapsed = seconds_since(start);

    double residual = 0.0;
    for (std::uint64_t i = 0; i < f.size(); ++i)
        residual = std::max(residual, std::abs(back[i] - f[i]));

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "round trip at q=9,d=6 (531441 points): %.3f s (< 1 s), residual %.2g; "
                  "naive oracles capped at q^d <= 1e4 in the test suite",
                  elapsed, residual);
    detail = buf;
    return elapsed < 1.0 && residual < 1e-9;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"C1 exact identity suite", exact_identity_suite, 10.0},
        {"C2 cone cardinalities", cardinalities, 60.0},
        {"C3 kernel decay reproduction", kernel_decay, 30.0},
        {"C4 subspace dichotomy", subspace_dichotomy, 60.0},
        {"C5 regularity contrast", regularity_contrast, 60.0},
        {"C6 inequality constant stability", inequality_suite, 300.0},
        {"C7 sharpness scans", sharpness_scans, 600.0},
        {"C8 report determinism", determinism, 120.0},
        {"C9 transform performance floor", performance_floor, 30.0},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        const double elapsed = seconds_since(start);
        if (elapsed > criterion.time_limit_s) {
            ok = false;
            detail += " [exceeded time limit]";
        }
        std::printf("[%s] %-34s (%6.2f s)  %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    elapsed, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

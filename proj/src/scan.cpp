#include "ffcone/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ffcone/fit.hpp"
#include "ffcone/rng.hpp"

namespace ffcone {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

ScanConfig ScanConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("IoError: cannot open config " + path);
    ScanConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("BadConfig: expected key=value, got " + line);
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void ScanConfig::set(const std::string& key, const std::string& value) {
    if (key == "d") {
        d = std::stoi(value);
    } else if (key == "qs") {
        qs.clear();
        for (const auto& tok : split(value, ',')) qs.push_back(std::stoi(tok));
        if (std::adjacent_find(qs.begin(), qs.end(), std::greater_equal<int>()) != qs.end())
            throw std::invalid_argument("BadConfig: qs must be strictly increasing");
    } else if (key == "pairs") {
        pairs.clear();
        for (const auto& tok : split(value, ',')) pairs.push_back(ExponentPair::parse(tok));
    } else if (key == "families") {
        families = split(value, ',');
    } else if (key == "direction") {
        if (value == "forward")
            direction = Direction::Forward;
        else if (value == "adjoint")
            direction = Direction::Adjoint;
        else
            throw std::invalid_argument("BadConfig: direction must be forward or adjoint");
    } else if (key == "out") {
        out_path = value;
    } else if (key == "format") {
        if (value != "csv" && value != "json")
            throw std::invalid_argument("BadConfig: format must be csv or json");
        format = value;
    } else if (key == "seed") {
        seed = std::stoull(value);
    } else if (key == "threshold") {
        slope_threshold = std::stod(value);
    } else if (key == "refine") {
        refine = value == "1" || value == "true";
    } else {
        throw std::invalid_argument("BadConfig: unknown key " + key);
    }
}

std::vector<ExponentPair> default_pair_grid(int d, HullCaseId hull_case) {
    const Rational half(1, 2);
    std::vector<ExponentPair> grid;
    if (hull_case == HullCaseId::HalfDimSubspace) {
        const ExponentPair p1 = HullCase::p1(d);
        const ExponentPair p2 = HullCase::p2(d);
        grid.push_back(p1);
        grid.push_back(p2);
        // midpoint of the vertical edge P1 -- ((d-1)/d, 1)
        grid.push_back(ExponentPair(p1.inv_p, (p1.inv_r + Rational(1)) * half));
        // midpoint of the lower edge (0,0) -- P2
        grid.push_back(ExponentPair(p2.inv_p * half, p2.inv_r * half));
        grid.push_back(hull_centroid(HullCase::half_dim_subspace(d)));
        grid.push_back(ExponentPair(Rational(d - 1, 3 * d), Rational(2, 3)));  // interior
        grid.push_back(ExponentPair(Rational(0), Rational(0)));
        // outside: below P1, and the (1, 0) corner
        grid.push_back(ExponentPair(p1.inv_p, p1.inv_r * half));
        grid.push_back(ExponentPair(Rational(1), Rational(0)));
    } else {
        const ExponentPair p0 = HullCase::p0(d);
        grid.push_back(p0);
        grid.push_back(ExponentPair(p0.inv_p, (p0.inv_r + Rational(1)) * half));
        grid.push_back(ExponentPair(p0.inv_p * half, p0.inv_r * half));
        grid.push_back(hull_centroid(HullCase::no_large_subspace(d)));
        grid.push_back(ExponentPair(Rational(d - 1, 3 * d), Rational(2, 3)));
        grid.push_back(ExponentPair(Rational(0), Rational(0)));
        grid.push_back(ExponentPair(p0.inv_p, p0.inv_r * half));
        grid.push_back(ExponentPair(Rational(1), Rational(0)));
    }
    return grid;
}

namespace {

std::vector<TestFamily> build_families(const ScanConfig& cfg, const ExponentPair& pair, int q,
                                       std::size_t pair_index) {
    std::vector<std::string> names = cfg.families;
    if (names.empty()) {
        names = {"delta", "cone", "dyadic", "random"};
        if (cfg.d % 2 == 0) names.insert(names.begin() + 1, "subspace");
    }
    const std::uint64_t seed = mix_seed(cfg.seed, pair_index * 1009 + q);
    double norm_exp = cfg.direction == Direction::Forward ? pair.p_value()
                                                          : pair.conjugate().r_value();
    if (!std::isfinite(norm_exp)) norm_exp = 1.0;
    norm_exp = std::clamp(norm_exp, 0.5, 4.0);

    std::vector<TestFamily> fams;
    for (const auto& name : names) {
        if (name == "delta") {
            fams.push_back(TestFamily::delta());
        } else if (name == "cone") {
            fams.push_back(TestFamily::cone_indicator());
        } else if (name == "subspace") {
            if (cfg.d % 2 == 0) fams.push_back(TestFamily::subspace_indicator());
        } else if (name == "dyadic") {
            fams.push_back(TestFamily::dyadic_step(4, norm_exp, seed));
        } else if (name == "random") {
            fams.push_back(TestFamily::random_set(
                static_cast<std::uint64_t>(std::ceil(std::pow(q, 0.5 * (cfg.d - 1)))), seed));
        } else {
            throw std::invalid_argument("BadConfig: unknown family " + name);
        }
    }
    if (cfg.direction == Direction::Adjoint)
        for (auto& f : fams) f.on_cone = true;
    return fams;
}

std::string family_base_name(const std::string& id) {
    const auto colon = id.find(':');
    return colon == std::string::npos ? id : id.substr(0, colon);
}

}  // namespace

ScanReport exponent_scan(const ScanConfig& config) {
    ScanReport report;
    report.config = config;

    std::vector<std::unique_ptr<FieldSpec>> fields;
    std::vector<std::unique_ptr<ConeOperator>> ops;
    for (int q : config.qs) {
        const auto [p, e] = factor_prime_power(q);
        fields.push_back(std::make_unique<FieldSpec>(FieldSpec::make(p, e)));
        ops.push_back(std::make_unique<ConeOperator>(*fields.back(), config.d));
    }

    // Which necessary-condition hull applies. For d = 0 mod 4 the
    // dichotomy depends on whether -1 is a square, so a scan must not
    // mix the two classes of q.
    bool conjecture = false;
    HullCaseId hull_id = HullCaseId::HalfDimSubspace;
    if (config.d % 2 == 1) {
        hull_id = HullCaseId::NoLargeSubspace;
    } else if (config.d % 4 == 0) {
        const int eta0 = fields[0]->eta(fields[0]->neg(1));
        for (const auto& f : fields)
            if (f->eta(f->neg(1)) != eta0)
                throw std::invalid_argument(
                    "MixedEtaGrid: all q must agree on whether -1 is a square when d = 0 mod 4");
        if (eta0 == 1) {
            hull_id = HullCaseId::HalfDimSubspace;
        } else {
            hull_id = HullCaseId::NoLargeSubspace;
            conjecture = true;
        }
    }
    report.hull_case = hull_id;
    report.conjecture_mode = conjecture;
    const HullCase hull = hull_id == HullCaseId::HalfDimSubspace
                              ? HullCase::half_dim_subspace(config.d)
                              : HullCase::no_large_subspace(config.d);

    std::vector<ExponentPair> grid =
        config.pairs.empty() ? default_pair_grid(config.d, hull_id) : config.pairs;

    std::vector<double> qsd(config.qs.begin(), config.qs.end());

    // best ratio per q plus per-family series for the witness slopes
    const auto fill_row = [&](ScanRow& row, const ExponentPair& pair, std::size_t pi) {
        std::map<std::string, std::vector<double>> family_series;
        for (std::size_t qi = 0; qi < ops.size(); ++qi) {
            const auto fams = build_families(config, pair, config.qs[qi], pi);
            RatioResult best;
            best.q = config.qs[qi];
            best.d = config.d;
            best.pair = pair;
            best.direction = config.direction;
            best.ratio = -1.0;
            for (const auto& fam : fams) {
                double fam_best = -1.0;
                std::string fam_id;
                for (auto& member : generate_family(fam, *ops[qi])) {
                    double r = ops[qi]->ratio(member.f, pair, config.direction);
                    if (config.refine)
                        r = refine_ratio(member.f, pair, config.direction, *ops[qi], 200, 0.1,
                                         mix_seed(config.seed, pi * 31 + qi));
                    if (r > fam_best) {
                        fam_best = r;
                        fam_id = member.id;
                    }
                }
                family_series[family_base_name(fam_id)].push_back(fam_best);
                if (fam_best > best.ratio) {
                    best.ratio = fam_best;
                    best.family_id = fam_id;
                }
            }
            row.per_q.push_back(best);
        }

        std::vector<double> best_series;
        for (const auto& r : row.per_q) best_series.push_back(std::max(r.ratio, 1e-300));
        row.slope = config.qs.size() >= 2 ? fit_log_slope(qsd, best_series).slope : 0.0;

        row.witness_slope = -1e9;
        for (const auto& [name, series] : family_series) {
            if (series.size() != config.qs.size() || config.qs.size() < 2) continue;
            const double s = fit_log_slope(qsd, series).slope;
            if (s > row.witness_slope) {
                row.witness_slope = s;
                row.witness_family = name;
            }
        }

        const bool at_p1 = config.d == 4 && hull_id == HullCaseId::HalfDimSubspace &&
                           pair == HullCase::p1(config.d);
        if (conjecture || at_p1) {
            row.verdict = "open";
        } else if (row.position == HullPosition::Outside) {
            row.verdict = row.witness_slope >= config.slope_threshold ? "agree" : "disagree";
        } else {
            row.verdict = row.slope <= config.slope_threshold ? "agree" : "disagree";
        }
    };

    for (std::size_t pi = 0; pi < grid.size(); ++pi) {
        ScanRow row;
        row.pair = grid[pi];
        row.position = hull_classify(grid[pi], hull);
        try {
            fill_row(row, grid[pi], pi);
        } catch (const std::exception& err) {
            // per-row failures are recorded and the scan continues
            row.per_q.clear();
            row.verdict = std::string("error:") + err.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<ReportRow> scan_report_rows(const ScanReport& report) {
    std::vector<ReportRow> out;
    for (const auto& row : report.rows) {
        if (row.per_q.empty()) {
            ReportRow line;
            line.check_id = "scan";
            line.d = report.config.d;
            line.pair_inv_p = to_string(row.pair.inv_p);
            line.pair_inv_r = to_string(row.pair.inv_r);
            line.verdict = row.verdict;
            out.push_back(std::move(line));
            continue;
        }
        for (std::size_t qi = 0; qi < row.per_q.size(); ++qi) {
            const auto& rr = row.per_q[qi];
            ReportRow line;
            line.check_id = "scan";
            const auto [p, e] = factor_prime_power(rr.q);
            line.p = p;
            line.e = e;
            line.d = report.config.d;
            line.q = rr.q;
            line.pair_inv_p = to_string(row.pair.inv_p);
            line.pair_inv_r = to_string(row.pair.inv_r);
            line.family = rr.family_id;
            line.ratio = rr.ratio;
            line.slope = row.slope;
            line.verdict = std::string(hull_position_name(row.position)) + ":" + row.verdict;
            out.push_back(std::move(line));
        }
    }
    return out;
}

ReportMeta scan_report_meta(const ScanReport& report) {
    ReportMeta meta;
    meta.seed = report.config.seed;
    for (int q : report.config.qs) {
        const auto [p, e] = factor_prime_power(q);
        const FieldSpec F = FieldSpec::make(p, e);
        meta.fields.push_back(FieldDescriptor{q, p, e, F.modulus()});
    }
    meta.extra["d"] = std::to_string(report.config.d);
    meta.extra["direction"] = direction_name(report.config.direction);
    meta.extra["hull_case"] = hull_case_name(report.hull_case);
    meta.extra["conjecture_mode"] = report.conjecture_mode ? "true" : "false";
    {
        std::string grid;
        for (const auto& row : report.rows) {
            if (!grid.empty()) grid += ",";
            grid += row.pair.str();
        }
        meta.extra["grid"] = grid;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", report.config.slope_threshold);
    meta.extra["slope_threshold"] = buf;
    return meta;
}

ScanReport run_scan(const ScanConfig& config) {
    ScanReport report = exponent_scan(config);
    if (!config.out_path.empty())
        emit_report(scan_report_rows(report), scan_report_meta(report), config.format,
                    config.out_path);
    return report;
}

}  // namespace ffcone

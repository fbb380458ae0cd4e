// Command line front end: named inequality verifiers, exponent scans,
// subspace search, and the exact L2 operator norm.
//
// Exit codes: 0 all checks stable / exact-pass, 1 any failure, 2 usage
// or configuration error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>

#include "ffcone/operators.hpp"
#include "ffcone/report.hpp"
#include "ffcone/scan.hpp"
#include "ffcone/subspace.hpp"
#include "ffcone/verify.hpp"

namespace {

using namespace ffcone;

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

int run_verify(const std::string& check, int p, int e, int d, const std::string& qs_csv,
               std::uint64_t seed, double threshold, const std::string& out_path,
               const std::string& format) {
    VerifyOptions options;
    options.d = d;
    options.seed = seed;
    options.slope_threshold = threshold;
    if (!qs_csv.empty())
        options.qs = parse_int_list(qs_csv);
    else if (p > 0)
        options.qs = {static_cast<int>(std::pow(p, e))};

    const auto rows = verify(check, options);
    bool ok = true;
    for (const auto& row : rows) {
        const bool pass = row.verdict == "stable" || row.verdict == "exact-pass";
        ok = ok && pass;
        std::printf("[%s] %-24s %s", pass ? "PASS" : "FAIL", row.check_id.c_str(),
                    row.verdict.c_str());
        if (row.slope) std::printf("  slope=%+.4f", *row.slope);
        if (row.verdict == "exact-pass" || row.verdict == "exact-fail")
            std::printf("  max_residual=%.3g", row.max_residual);
        std::printf("\n");
        for (std::size_t i = 0; i < row.qs.size(); ++i)
            std::printf("        q=%-4d constant=%-12.6g witness=%s\n", row.qs[i],
                        row.constants[i], row.witnesses[i].c_str());
    }
    if (!out_path.empty()) {
        ReportMeta meta;
        meta.seed = seed;
        for (int q : options.qs.empty() ? default_q_grid(check, d) : options.qs) {
            const auto [fp, fe] = factor_prime_power(q);
            meta.fields.push_back(FieldDescriptor{q, fp, fe, FieldSpec::make(fp, fe).modulus()});
        }
        meta.extra["check"] = check;
        emit_report(to_report_rows(rows, d), meta, format, out_path);
    }
    return ok ? 0 : 1;
}

int run_scan_cmd(const ScanConfig& cfg) {
    const ScanReport report = run_scan(cfg);
    bool ok = true;
    std::printf("hull case: %s%s\n", hull_case_name(report.hull_case),
                report.conjecture_mode ? " (conjecture mode: reporting only)" : "");
    for (const auto& row : report.rows) {
        const bool pass = row.verdict != "disagree";
        ok = ok && pass;
        std::printf("[%s] pair=%-12s %-8s slope=%+.4f witness=%s (%+.4f) %s\n",
                    pass ? "PASS" : "FAIL", row.pair.str().c_str(),
                    hull_position_name(row.position), row.slope, row.witness_family.c_str(),
                    row.witness_slope, row.verdict.c_str());
    }
    return ok ? 0 : 1;
}

int run_subspace(int p, int e, int d, std::uint64_t budget, std::uint64_t seed) {
    const FieldSpec F = FieldSpec::make(p, e);
    const auto result = max_subspace_in_cone(F, d, budget, seed);
    nlohmann::ordered_json doc;
    doc["p"] = p;
    doc["e"] = e;
    doc["d"] = d;
    doc["eta_minus_one"] = F.eta(F.neg(1));
    doc["predicted_max_dim"] = result.predicted_dim;
    doc["found_dim"] = result.subspace.dim;
    doc["basis"] = result.subspace.basis;
    doc["exhaustive"] = result.exhaustive;
    doc["budget_exceeded"] = result.budget_exceeded;
    doc["method"] = result.method;
    std::cout << doc.dump(2) << "\n";
    return result.subspace.dim >= result.predicted_dim ? 0 : 1;
}

int run_opnorm(int p, int e, int d) {
    const FieldSpec F = FieldSpec::make(p, e);
    const ConeOperator op(F, d);
    const auto norm = op.l2_opnorm();
    nlohmann::ordered_json doc;
    doc["p"] = p;
    doc["e"] = e;
    doc["d"] = d;
    doc["q"] = F.q();
    doc["opnorm"] = norm.value;
    doc["power_iteration"] = norm.power_iteration;
    doc["dense_svd"] = norm.dense_svd;
    std::cout << doc.dump(2) << "\n";
    return std::abs(norm.power_iteration - norm.dense_svd) <= 1e-6 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field cone averaging laboratory"};
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named identity/inequality check");
    std::string check = "all", qs_csv, out_path, format = "csv";
    int p = 0, e = 1, d = 4;
    std::uint64_t seed = 1;
    double threshold = 0.15;
    verify_cmd->add_option("--check", check, "check id (L2.1 .. T4.1, or all)");
    verify_cmd->add_option("--p", p, "field characteristic");
    verify_cmd->add_option("--e", e, "extension degree");
    verify_cmd->add_option("--d", d, "dimension")->required();
    verify_cmd->add_option("--qs", qs_csv, "comma-separated q list (overrides --p/--e)");
    verify_cmd->add_option("--seed", seed, "rng seed");
    verify_cmd->add_option("--threshold", threshold, "slope stability threshold");
    verify_cmd->add_option("--out", out_path, "report path");
    verify_cmd->add_option("--format", format, "csv|json");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "exponent-region scan with hull agreement");
    std::string config_path, scan_out, scan_format, scan_qs, scan_pairs, scan_families,
        scan_direction;
    int scan_d = 0;
    std::uint64_t scan_seed = 0;
    bool have_seed = false;
    scan_cmd->add_option("--config", config_path, "key=value config file");
    scan_cmd->add_option("--out", scan_out, "report path");
    scan_cmd->add_option("--format", scan_format, "csv|json");
    scan_cmd->add_option("--d", scan_d, "dimension");
    scan_cmd->add_option("--qs", scan_qs, "comma-separated q list");
    scan_cmd->add_option("--pairs", scan_pairs, "comma-separated inv_p:inv_r pairs");
    scan_cmd->add_option("--families", scan_families, "comma-separated family names");
    scan_cmd->add_option("--direction", scan_direction, "forward|adjoint");
    scan_cmd->add_option("--seed", scan_seed, "rng seed")->each([&](const std::string&) {
        have_seed = true;
    });

    // subspace
    auto* sub_cmd = app.add_subcommand("subspace", "maximal subspace inside the cone");
    int sp = 3, se = 1, sd = 6;
    std::uint64_t budget = 200000, sub_seed = 1;
    sub_cmd->add_option("--p", sp, "field characteristic")->required();
    sub_cmd->add_option("--e", se, "extension degree");
    sub_cmd->add_option("--d", sd, "dimension")->required();
    sub_cmd->add_option("--budget", budget, "search budget");
    sub_cmd->add_option("--seed", sub_seed, "rng seed");

    // opnorm
    auto* op_cmd = app.add_subcommand("opnorm", "exact L2 -> L2(C,sigma) operator norm");
    int op_p = 3, op_e = 1, op_d = 3;
    op_cmd->add_option("--p", op_p, "field characteristic")->required();
    op_cmd->add_option("--e", op_e, "extension degree");
    op_cmd->add_option("--d", op_d, "dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (verify_cmd->parsed())
            return run_verify(check, p, e, d, qs_csv, seed, threshold, out_path, format);
        if (scan_cmd->parsed()) {
            ScanConfig cfg;
            if (!config_path.empty()) cfg = ScanConfig::from_file(config_path);
            if (scan_d > 0) cfg.set("d", std::to_string(scan_d));
            if (!scan_qs.empty()) cfg.set("qs", scan_qs);
            if (!scan_pairs.empty()) cfg.set("pairs", scan_pairs);
            if (!scan_families.empty()) cfg.set("families", scan_families);
            if (!scan_direction.empty()) cfg.set("direction", scan_direction);
            if (!scan_out.empty()) cfg.set("out", scan_out);
            if (!scan_format.empty()) cfg.set("format", scan_format);
            if (have_seed) cfg.set("seed", std::to_string(scan_seed));
            return run_scan_cmd(cfg);
        }
        if (sub_cmd->parsed()) return run_subspace(sp, se, sd, budget, sub_seed);
        if (op_cmd->parsed()) return run_opnorm(op_p, op_e, op_d);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}

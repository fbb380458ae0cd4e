#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffcone/report.hpp"

namespace ffcone {

/// Result of one named check: measured constants per q with a fitted
/// q-exponent, or a residual for exact identities.
struct VerdictRow {
    std::string check_id;
    std::string params;
    std::vector<int> qs;
    std::vector<double> constants;
    std::vector<std::string> witnesses;  // per-q argmax instance
    std::optional<double> slope;
    double max_residual = 0.0;
    std::string verdict;  // stable | growing | exact-pass | exact-fail
};

struct VerifyOptions {
    int d = 4;
    std::vector<int> qs;  // empty -> per-check default grid
    std::uint64_t seed = 1;
    double slope_threshold = 0.15;
};

/// Known check ids: L2.1 L2.2 L2.3 L2.4 L2.5 C2.6 L2.7 L2.8 C2.9 L2.10
/// T3.1 T4.1, plus "all" for every check applicable at the given d.
/// Throws std::invalid_argument ("UnknownCheck") for anything else and
/// ("ParityMismatch") when the statement needs a different d.
std::vector<VerdictRow> verify(const std::string& check_id, const VerifyOptions& options);

std::vector<std::string> known_checks();

/// Flattens verdict rows to the shared report schema (one line per q).
std::vector<ReportRow> to_report_rows(const std::vector<VerdictRow>& rows, int d);

/// Default q grid for a check at dimension d. Even-d inequality checks
/// default to q = 1 mod 4 grids so the half-dimensional subspace
/// witnesses exist at d = 0 mod 4.
std::vector<int> default_q_grid(const std::string& check_id, int d);

}  // namespace ffcone

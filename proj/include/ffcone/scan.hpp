#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffcone/hull.hpp"
#include "ffcone/operators.hpp"
#include "ffcone/report.hpp"

namespace ffcone {

/// Exponent-scan configuration. Readable from a line-oriented
/// key=value file; command-line flags override file values.
struct ScanConfig {
    int d = 6;
    std::vector<int> qs = {3, 5, 7};
    std::vector<ExponentPair> pairs;         // empty -> default grid for d
    std::vector<std::string> families;       // empty -> default family list
    Direction direction = Direction::Forward;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    double slope_threshold = 0.15;
    bool refine = false;

    static ScanConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
};

/// The default grid: the critical vertices, two boundary midpoints, the
/// centroid, one more interior point, the origin, and two points
/// outside the hull.
std::vector<ExponentPair> default_pair_grid(int d, HullCaseId hull_case);

struct ScanRow {
    ExponentPair pair;
    HullPosition position = HullPosition::Inside;
    std::vector<RatioResult> per_q;    // best ratio per q, config order
    double slope = 0.0;
    std::string witness_family;        // family with the largest slope
    double witness_slope = 0.0;
    std::string verdict;               // agree | disagree | open
};

struct ScanReport {
    ScanConfig config;
    HullCaseId hull_case = HullCaseId::HalfDimSubspace;
    bool conjecture_mode = false;  // d = 0 mod 4 with -1 a nonsquare
    std::vector<ScanRow> rows;
};

/// Runs best-ratio fits over the grid, classifies each pair against the
/// applicable necessary-condition hull, and flags agreement:
/// inside/boundary pairs must stay flat, outside pairs must exhibit a
/// growing witness family. Per-row failures propagate as exceptions
/// only for configuration errors; numeric rows always complete.
ScanReport exponent_scan(const ScanConfig& config);

std::vector<ReportRow> scan_report_rows(const ScanReport& report);
ReportMeta scan_report_meta(const ScanReport& report);

/// Convenience: runs the scan and writes the report when out_path is
/// set. Returns the report.
ScanReport run_scan(const ScanConfig& config);

}  // namespace ffcone

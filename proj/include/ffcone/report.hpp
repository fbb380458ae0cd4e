#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffcone {

/// One line of the flat report schema shared by verify and scan output.
struct ReportRow {
    std::string check_id;
    int p = 0;
    int e = 0;
    int d = 0;
    int q = 0;
    std::string pair_inv_p;  // exact rational text, empty when n/a
    std::string pair_inv_r;
    std::string family;
    std::optional<double> ratio;
    std::optional<double> constant;
    std::optional<double> slope;
    std::string verdict;
};

struct FieldDescriptor {
    int q = 0;
    int p = 0;
    int e = 0;
    std::vector<int> modulus;
};

struct ReportMeta {
    std::string version = "0.1.0";
    std::uint64_t seed = 0;
    std::vector<FieldDescriptor> fields;
    std::map<std::string, std::string> extra;  // free-form, e.g. grid notes
};

/// Fixed column order:
/// check_id,p,e,d,q,pair_inv_p,pair_inv_r,family,ratio,constant,slope,verdict
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// JSON mirror of the CSV rows plus a metadata header.
void write_json(std::ostream& out, const ReportMeta& meta, const std::vector<ReportRow>& rows);

/// Writes to path in the requested format ("csv" or "json"). Throws
/// std::runtime_error ("IoError") when the file cannot be written and
/// std::invalid_argument on an empty row list or unknown format.
void emit_report(const std::vector<ReportRow>& rows, const ReportMeta& meta,
                 const std::string& format, const std::string& path);

}  // namespace ffcone

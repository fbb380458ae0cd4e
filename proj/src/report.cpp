#include "ffcone/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ffcone {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string{};
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "check_id,p,e,d,q,pair_inv_p,pair_inv_r,family,ratio,constant,slope,verdict\n";
    for (const auto& r : rows) {
        out << r.check_id << ',' << r.p << ',' << r.e << ',' << r.d << ',' << r.q << ','
            << r.pair_inv_p << ',' << r.pair_inv_r << ',' << r.family << ',' << fmt_opt(r.ratio)
            << ',' << fmt_opt(r.constant) << ',' << fmt_opt(r.slope) << ',' << r.verdict << '\n';
    }
}

void write_json(std::ostream& out, const ReportMeta& meta, const std::vector<ReportRow>& rows) {
    nlohmann::ordered_json doc;
    doc["metadata"]["version"] = meta.version;
    doc["metadata"]["seed"] = meta.seed;
    auto& fields = doc["metadata"]["fields"];
    fields = nlohmann::ordered_json::array();
    for (const auto& f : meta.fields) {
        nlohmann::ordered_json jf;
        jf["q"] = f.q;
        jf["p"] = f.p;
        jf["e"] = f.e;
        jf["modulus"] = f.modulus;
        fields.push_back(jf);
    }
    for (const auto& [key, value] : meta.extra) doc["metadata"][key] = value;

    auto& jrows = doc["rows"];
    jrows = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json jr;
        jr["check_id"] = r.check_id;
        jr["p"] = r.p;
        jr["e"] = r.e;
        jr["d"] = r.d;
        jr["q"] = r.q;
        jr["pair_inv_p"] = r.pair_inv_p;
        jr["pair_inv_r"] = r.pair_inv_r;
        jr["family"] = r.family;
        if (r.ratio) jr["ratio"] = *r.ratio;
        if (r.constant) jr["constant"] = *r.constant;
        if (r.slope) jr["slope"] = *r.slope;
        jr["verdict"] = r.verdict;
        jrows.push_back(jr);
    }
    out << doc.dump(2) << '\n';
}

void emit_report(const std::vector<ReportRow>& rows, const ReportMeta& meta,
                 const std::string& format, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("EmptyReport: no rows to emit");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("BadFormat: expected csv or json, got " + format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("IoError: cannot open " + path);
    if (format == "csv")
        write_csv(out, rows);
    else
        write_json(out, meta, rows);
    out.flush();
    if (!out) throw std::runtime_error("IoError: failed writing " + path);
}

}  // namespace ffcone

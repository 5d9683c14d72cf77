#include "wigner/report.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace wigner {

namespace {
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}
}  // namespace

void write_report_csv(const Report& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_report_csv: cannot open " + path);
    os.precision(12);
    os << "experiment,n,l,statistic,value,se,target,tolerance,samples,pass,note\n";
    for (const auto& r : report.records) {
        os << csv_escape(r.experiment) << "," << r.n << "," << r.l << ","
           << csv_escape(r.statistic) << "," << r.value << "," << r.se << "," << r.target << ","
           << r.tolerance << "," << r.samples << "," << (r.pass ? "true" : "false") << ","
           << csv_escape(r.note) << "\n";
    }
}

void write_reports_json(const std::vector<Report>& reports, const std::string& path) {
    nlohmann::json root;
    root["version"] = kVersion;
    root["reports"] = nlohmann::json::array();
    for (const auto& rep : reports) {
        nlohmann::json jr;
        jr["name"] = rep.name;
        jr["seed"] = rep.seed;
        jr["version"] = rep.version;
        jr["wall_seconds"] = rep.wall_seconds;
        jr["all_pass"] = rep.all_pass();
        jr["failures"] = rep.failures();
        jr["records"] = nlohmann::json::array();
        for (const auto& r : rep.records) {
            nlohmann::json jrec;
            jrec["experiment"] = r.experiment;
            jrec["n"] = r.n;
            jrec["l"] = r.l;
            jrec["statistic"] = r.statistic;
            jrec["value"] = r.value;
            jrec["se"] = r.se;
            jrec["target"] = r.target;
            jrec["tolerance"] = r.tolerance;
            jrec["samples"] = r.samples;
            jrec["pass"] = r.pass;
            if (!r.note.empty()) jrec["note"] = r.note;
            jr["records"].push_back(std::move(jrec));
        }
        root["reports"].push_back(std::move(jr));
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_reports_json: cannot open " + path);
    os << root.dump(2) << "\n";
}

}  // namespace wigner

#include "core/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace cgb {

std::string scan_report_json(const ScanReport& rep) {
    nlohmann::json j;
    j["N"] = rep.N;
    j["filter"] = rep.residue_filter;
    j["complete"] = rep.complete;
    j["checkpoint_m"] = rep.checkpoint_m;
    j["exceptions"] = rep.exceptions;
    j["decades"] = nlohmann::json::array();
    for (const auto& d : rep.decades) {
        if (d.scanned == 0) continue;
        j["decades"].push_back({{"lo", d.lo},
                                {"hi", d.hi},
                                {"scanned", d.scanned},
                                {"min_reps", d.min_reps},
                                {"argmin", d.argmin},
                                {"avg_reps", d.avg_reps}});
    }
    return j.dump(2) + "\n";
}

std::string zero_report_json(const ExceptionalZeroReport& rep) {
    nlohmann::json j;
    j["level"] = rep.level;
    j["quality"] = rep.quality;
    j["clear"] = rep.clear;
    j["candidates"] = nlohmann::json::array();
    for (const auto& c : rep.candidates)
        j["candidates"].push_back(
            {{"modulus", c.modulus}, {"interval", {c.interval_lo, c.interval_hi}}});
    return j.dump(2) + "\n";
}

void write_audit_csv(const std::string& path, const std::vector<ChenAssembly::AuditRow>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("write_audit_csv: cannot open " + path);
    std::fprintf(f, "n,lhs,g1,g2,g3,slack,pass\n");
    for (const auto& r : rows)
        std::fprintf(f, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                     static_cast<unsigned long long>(r.n), r.lhs, r.g1, r.g2, r.g3, r.slack,
                     r.pass ? 1 : 0);
    std::fclose(f);
}

void write_rep_csv(const std::string& path, const std::vector<std::uint64_t>& ms,
                   const FactorTable& t) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("write_rep_csv: cannot open " + path);
    std::fprintf(f, "m,rep_count,singular_series,ratio\n");
    std::uint64_t top = 6;
    for (std::uint64_t m : ms) top = std::max(top, m);
    auto counts = rep_counts_upto(std::min(top, t.limit() - 2), t);
    for (std::uint64_t m : ms) {
        std::uint64_t c = m < counts.size() ? static_cast<std::uint64_t>(counts[m])
                                            : rep_count(m, t);
        std::uint64_t cut = std::max<std::uint64_t>(1000, std::min<std::uint64_t>(100'000, t.limit() - 5));
        auto ss = singular_series(m, cut, t);
        double lg = std::log(static_cast<double>(m));
        double ratio =
            ss.value > 0.0 ? static_cast<double>(c) * lg * lg / (ss.value * m) : 0.0;
        std::fprintf(f, "%llu,%llu,%.17g,%.17g\n", static_cast<unsigned long long>(m),
                     static_cast<unsigned long long>(c), ss.value, ratio);
    }
    std::fclose(f);
}

void write_text_file(const std::string& path, const std::string& body) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw range_error("write_text_file: cannot open " + path);
    std::fwrite(body.data(), 1, body.size(), f);
    std::fclose(f);
}

}  // namespace cgb

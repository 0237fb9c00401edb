#ifndef CGB_REPORTS_HPP
#define CGB_REPORTS_HPP

#include <string>
#include <vector>

#include "core/characters.hpp"
#include "core/chen.hpp"
#include "core/goldbach.hpp"

namespace cgb {

std::string scan_report_json(const ScanReport& rep);
std::string zero_report_json(const ExceptionalZeroReport& rep);

// CSV of (n, lhs, g1, g2, g3, slack, pass), UTF-8, LF, header row.
void write_audit_csv(const std::string& path, const std::vector<ChenAssembly::AuditRow>& rows);

// CSV of (m, rep_count, singular_series, ratio); ratio is the diagnostic
// rep_count (log m)^2 / (m S(m)).
void write_rep_csv(const std::string& path, const std::vector<std::uint64_t>& ms,
                   const FactorTable& t);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace cgb

#endif

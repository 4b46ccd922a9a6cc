#include "milnor_forge/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace milnor_forge {

const char *to_string(Status status) {
  switch (status) {
  case Status::pass:
    return "pass";
  case Status::fail:
    return "fail";
  case Status::note:
    return "note";
  }
  return "fail";
}

std::string report_json(std::span<const CheckReport> reports) {
  std::string out;
  for (const auto &r : reports) {
    nlohmann::ordered_json line;
    line["check_id"] = r.check_id;
    line["prime"] = r.prime;
    line["status"] = to_string(r.status);
    line["details"] = r.details;
    line["elapsed_ms"] = r.elapsed_ms;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string report_text(std::span<const CheckReport> reports) {
  std::size_t width = 8;
  for (const auto &r : reports)
    width = std::max(width, r.check_id.size());

  std::ostringstream os;
  for (const auto &r : reports) {
    os << std::left << std::setw(static_cast<int>(width)) << r.check_id << "  "
       << std::right << std::setw(3) << r.prime << "  " << std::left
       << std::setw(4) << to_string(r.status) << "  " << r.elapsed_ms << "ms";
    if (!r.details.empty())
      os << "  " << r.details;
    os << '\n';
  }
  std::size_t passed = 0, failed = 0, notes = 0;
  for (const auto &r : reports) {
    if (r.status == Status::pass)
      ++passed;
    else if (r.status == Status::fail)
      ++failed;
    else
      ++notes;
  }
  os << passed << " passed, " << failed << " failed, " << notes << " notes\n";
  return os.str();
}

void sort_reports(std::vector<CheckReport> &reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport &a, const CheckReport &b) {
                     if (a.check_id != b.check_id)
                       return a.check_id < b.check_id;
                     return a.prime < b.prime;
                   });
}

bool any_failed(std::span<const CheckReport> reports) {
  return std::any_of(reports.begin(), reports.end(), [](const CheckReport &r) {
    return r.status == Status::fail;
  });
}

CheckReport make_check(std::string check_id, unsigned prime, bool ok,
                       std::string details, const Stopwatch &clock) {
  return CheckReport{std::move(check_id), prime,
                     ok ? Status::pass : Status::fail, std::move(details),
                     clock.elapsed_ms()};
}

CheckReport make_note(std::string check_id, unsigned prime,
                      std::string details, const Stopwatch &clock) {
  return CheckReport{std::move(check_id), prime, Status::note,
                     std::move(details), clock.elapsed_ms()};
}

} // namespace milnor_forge

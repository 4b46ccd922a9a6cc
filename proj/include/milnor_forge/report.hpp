#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace milnor_forge {

enum class Status { pass, fail, note };

const char *to_string(Status status);

// One line of a verification report. check_id values are a stable external
// contract: tools downstream key on them.
struct CheckReport {
  std::string check_id;
  unsigned prime = 0;
  Status status = Status::pass;
  std::string details;
  std::int64_t elapsed_ms = 0;
};

using ReportList = std::vector<CheckReport>;

// Line-delimited JSON, keys in the fixed order
// check_id, prime, status, details, elapsed_ms.
std::string report_json(std::span<const CheckReport> reports);

// Human readable table of the same records.
std::string report_text(std::span<const CheckReport> reports);

// Canonical (check_id, prime) ordering used for all emitted reports.
void sort_reports(std::vector<CheckReport> &reports);

bool any_failed(std::span<const CheckReport> reports);

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

// Build a record; `ok` chooses pass/fail.
CheckReport make_check(std::string check_id, unsigned prime, bool ok,
                       std::string details, const Stopwatch &clock);

CheckReport make_note(std::string check_id, unsigned prime,
                      std::string details, const Stopwatch &clock);

} // namespace milnor_forge

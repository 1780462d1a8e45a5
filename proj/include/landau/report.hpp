#pragma once

#include <string>
#include <vector>

namespace landau {

/// One named check: measured value against a tolerance, or a purely
/// informational row when asserted is false.
struct CheckResult {
  std::string id;
  std::string inputs;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool asserted = true;
};

/// Printed-formula discrepancy with the measured evidence backing it.
struct ErrataEntry {
  std::string equation;
  std::string printed;
  std::string corrected;
  double evidence = 0.0;
  double tolerance = 0.0;
};

class Report {
 public:
  explicit Report(std::string suite, unsigned long long seed);

  /// Adds a pass-when-below check; duplicate ids are a logic error.
  void add(const std::string& id, const std::string& inputs, double measured,
           double tolerance);
  /// Adds an informational row that never affects the exit status.
  void info(const std::string& id, const std::string& inputs, double measured);
  void errata(const ErrataEntry& entry);
  void merge(const Report& other);

  bool all_pass() const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  const std::vector<ErrataEntry>& errata_entries() const { return errata_; }
  const std::string& suite() const { return suite_; }

  std::string to_json() const;
  std::string to_csv() const;
  /// Human-readable per-check lines plus a summary verdict.
  std::string to_text() const;

  /// Writes report_<suite>.<format> into dir (created if missing).
  void write(const std::string& dir, const std::string& format) const;

 private:
  std::string suite_;
  unsigned long long seed_;
  std::vector<CheckResult> checks_;
  std::vector<ErrataEntry> errata_;
};

}  // namespace landau

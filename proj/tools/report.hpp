#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rforest/algebra.hpp"

namespace rforest::cli {

/// Machine-readable outcome of one CLI run. The JSON layout is stable:
/// top-level fields command / parameters / instances / verdicts /
/// polynomials / timings, with all timing data confined to `timings` so
/// reports from identical inputs are byte-identical outside that field.
class RunReport {
 public:
  explicit RunReport(std::string command);

  void set_parameter(const std::string& key, nlohmann::json value);

  /// Returns the instance index.
  int add_instance(nlohmann::json instance);

  /// result is one of agree / disagree / pass / fail / skipped; disagree
  /// and fail mark the whole run as failed.
  void add_verdict(int instance, const std::string& check,
                   const std::string& result);

  void add_polynomial(int instance, const std::string& name,
                      const MPoly& poly,
                      std::span<const std::string> variable_names);

  void add_timing(const std::string& key, double milliseconds);

  /// One CSV row per instance: sizes,n,formula,oracle,agree.
  void add_csv_row(const std::string& sizes, const std::string& n,
                   const std::string& formula, const std::string& oracle,
                   const std::string& agree);

  void note_capacity_hit() { capacity_hits_ = true; }

  bool all_pass() const { return !failed_; }
  int exit_code() const { return failed_ ? 1 : 0; }

  std::string json_text() const;
  std::string csv_text() const;
  std::string human_text(bool color) const;

 private:
  nlohmann::json doc_;
  std::vector<std::array<std::string, 5>> csv_rows_;
  bool failed_ = false;
  bool capacity_hits_ = false;
};

}  // namespace rforest::cli

#pragma once

// Report documents. Keys come out in insertion order, so the same inputs
// give byte-identical output. See docs/report-format.md.

#include <optional>
#include <string>
#include <vector>

#include "document.hpp"

namespace profmod::cli {

struct Check {
  std::string name;
  bool passed = false;
  ojson details = ojson::object();
};

enum class Verdict { pass, fail, error };

const char* verdict_name(Verdict v);
int exit_code(Verdict v);

class Report {
 public:
  Report(std::string command, ojson task) : command_(std::move(command)), task_(std::move(task)) {}

  ojson& results() { return results_; }
  void check(std::string name, bool passed, ojson details = ojson::object());
  const std::vector<Check>& checks() const { return checks_; }
  // Attached on FAIL only.
  void set_reproduction(ojson doc) { reproduction_ = std::move(doc); }
  void set_error(std::string message) { error_ = std::move(message); }

  // ERROR when set_error was called, else PASS iff every check passed.
  Verdict verdict() const;
  ojson to_json(std::optional<double> timing_ms) const;
  std::string to_text(std::optional<double> timing_ms) const;

 private:
  std::string command_;
  ojson task_;
  ojson results_ = ojson::object();
  std::vector<Check> checks_;
  std::optional<ojson> reproduction_;
  std::optional<std::string> error_;
};

}  // namespace profmod::cli

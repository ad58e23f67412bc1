#include "report.hpp"

#include <algorithm>
#include <sstream>

#ifndef PROFMOD_VERSION
#define PROFMOD_VERSION "0.0.0"
#endif

namespace profmod::cli {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::error: return "ERROR";
  }
  return "ERROR";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::error: return 2;
  }
  return 2;
}

void Report::check(std::string name, bool passed, ojson details) {
  checks_.push_back({std::move(name), passed, std::move(details)});
}

Verdict Report::verdict() const {
  if (error_) return Verdict::error;
  const bool ok = std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
  return ok ? Verdict::pass : Verdict::fail;
}

ojson Report::to_json(std::optional<double> timing_ms) const {
  ojson j;
  j["tool"] = "profmod";
  j["version"] = PROFMOD_VERSION;
  j["command"] = command_;
  j["task"] = task_;
  const Verdict v = verdict();
  j["verdict"] = verdict_name(v);
  if (error_) j["error"] = *error_;
  j["results"] = results_;
  ojson checks = ojson::array();
  for (const auto& c : checks_) {
    ojson e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["details"] = c.details;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  if (v == Verdict::fail && reproduction_) j["reproduction"] = *reproduction_;
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

std::string Report::to_text(std::optional<double> timing_ms) const {
  std::ostringstream out;
  out << "profmod " << PROFMOD_VERSION << " " << command_ << ": " << verdict_name(verdict()) << "\n";
  if (error_) out << "error: " << *error_ << "\n";
  for (const auto& [key, value] : results_.items()) {
    if (value.is_primitive()) out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  for (const auto& c : checks_) out << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name << "\n";
  if (verdict() == Verdict::fail && reproduction_) out << "reproduction: " << reproduction_->dump() << "\n";
  if (timing_ms) out << "timing_ms: " << *timing_ms << "\n";
  return out.str();
}

}  // namespace profmod::cli

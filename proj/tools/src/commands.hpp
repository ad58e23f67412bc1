#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace profmod::cli {

struct Options {
  std::string in;
  std::string out;
  std::uint64_t seed = 7;
  unsigned cutoff = 4;
  std::size_t max_group_order = 5040;
  CoverKind cover = CoverKind::spin;
  bool timing = false;
  std::string format = "json";

  // exproj
  std::uint64_t p = 2;
  std::size_t dim = 1;
  std::size_t depth = 3;

  // sweep
  std::string suite;
  std::optional<std::size_t> case_index;
};

// Subcommands reading an input document.
const std::vector<std::string>& document_commands();
Report run_document_command(const std::string& command, const Document& doc, const Options& opt);

Report run_exproj(const Options& opt);

// Throws InputError for an unknown suite.
Report run_sweep(const Options& opt);
const std::vector<std::string>& sweep_suites();

}  // namespace profmod::cli

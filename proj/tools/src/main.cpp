#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "profmod/error.hpp"

#ifndef PROFMOD_VERSION
#define PROFMOD_VERSION "0.0.0"
#endif

using namespace profmod::cli;

namespace {

int emit(const Report& r, const Options& opt, std::optional<double> ms) {
  const std::string text = opt.format == "text" ? r.to_text(ms) : r.to_json(ms).dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) {
      std::cerr << "error: --out: cannot write " << opt.out << "\n";
      return 2;
    }
    f << text;
  }
  return exit_code(r.verdict());
}

int error_report(const std::string& command, const std::string& message, const Options& opt) {
  std::cerr << "error: " << message << "\n";
  Report r(command, ojson::object());
  r.set_error(message);
  emit(r, opt, std::nullopt);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for modules over finite group algebras, bundles and towers", "profmod"};
  app.set_version_flag("--version", PROFMOD_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string cover = "spin";
  app.add_option("--out", opt.out, "Write the report here instead of stdout");
  app.add_option("--seed", opt.seed, "Seed for sweeps")->capture_default_str();
  app.add_option("--cutoff", opt.cutoff, "Projective dimension cutoff")->capture_default_str();
  app.add_option("--max-group-order", opt.max_group_order, "Refuse larger groups")->capture_default_str();
  app.add_option("--cover", cover, "Free cover used by homological commands")
      ->check(CLI::IsMember({"spin", "full"}))
      ->capture_default_str();
  app.add_flag("--timing", opt.timing, "Add wall-clock time to the report");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  const std::map<std::string, std::string> help = {
      {"mackey", "Verify the Mackey decomposition of Res_K Ind_H^G M"},
      {"pd", "Bounded projective dimension of a module"},
      {"projective", "Decide projectivity with an explicit splitting"},
      {"tor", "Dimensions of Tor_i(M, N)"},
      {"ext", "Dimensions of Ext^i(M, N)"},
      {"bundle-sum", "Direct sum of a bundle and its universal property"},
      {"bundle-tensor", "Tensor product of two bundles"},
      {"cosheaf-check", "Cosheaf axioms for the cosection table of a bundle"},
      {"tower-check", "Surjectivity and limit checks for a tower"},
      {"factor", "Least level through which a morphism from the top factors"},
      {"meldec", "Orbit decomposition of a permutation module"},
      {"tree-resolution", "Two-term permutation resolution attached to a tree"},
  };
  std::map<std::string, CLI::App*> doc_subs;
  for (const auto& name : document_commands()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--in", opt.in, "Input document")->required();
    doc_subs[name] = sub;
  }
  auto* exproj = app.add_subcommand("exproj", "Levelwise splittings with no compatible family");
  exproj->add_option("--p", opt.p, "Characteristic")->capture_default_str();
  exproj->add_option("--dim", opt.dim, "Fiber dimension")->capture_default_str();
  exproj->add_option("--depth", opt.depth, "Tower depth")->capture_default_str();
  auto* sweep = app.add_subcommand("sweep", "Run a seeded suite");
  sweep->add_option("--suite", opt.suite, "One of: mackey-small impcorr peterlem tensorcomm universal-props "
                                          "solver-oracle")
      ->required();
  std::size_t case_index = 0;
  auto* case_opt = sweep->add_option("--case", case_index, "Run only this case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    if (argc > 1 && argv[1][0] != '-' && !app.get_subcommand_no_throw(argv[1])) {
      std::cerr << "error: unknown subcommand '" << argv[1] << "'\n";
      return 2;
    }
    app.exit(e);
    return 2;
  }
  opt.cover = cover == "full" ? profmod::CoverKind::full_basis : profmod::CoverKind::spin;
  if (*case_opt) opt.case_index = case_index;

  std::string command = "sweep";
  if (exproj->parsed()) command = "exproj";
  for (const auto& [name, sub] : doc_subs)
    if (sub->parsed()) command = name;

  const auto start = std::chrono::steady_clock::now();
  try {
    std::optional<Report> r;
    if (command == "exproj") {
      r = run_exproj(opt);
    } else if (command == "sweep") {
      r = run_sweep(opt);
    } else {
      const Document doc = Document::load(opt.in, opt.max_group_order);
      r = run_document_command(command, doc, opt);
    }
    std::optional<double> ms;
    if (opt.timing)
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return emit(*r, opt, ms);
  } catch (const InputError& e) {
    return error_report(command, e.what(), opt);
  } catch (const profmod::Error& e) {
    return error_report(command, e.what(), opt);
  }
}

// gfix: law suites, guarded equation solving and counterexample search.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gfix/laws.hpp"
#include "gfix/search.hpp"
#include "gfix/sigma_tree.hpp"
#include "gfix/suite.hpp"

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guarded fixpoint laboratory"};
  app.require_subcommand(1);

  std::string model, laws = "all", sizes, out, format = "json", file, target;
  int trials = -1;
  std::uint64_t seed = 0;
  int depth = -1;
  bool check = false;

  auto* cmd_laws = app.add_subcommand("laws", "run law checks on a model");
  cmd_laws->add_option("--model", model, "presheaf, cpolift, citm or cms")->required();
  cmd_laws->add_option("--laws", laws, "comma-separated laws or groups (conway, derived, dinat, trace, roundtrip, all)");
  cmd_laws->add_option("--trials", trials, "trials per law (default 200)");
  cmd_laws->add_option("--seed", seed, "run seed");
  cmd_laws->add_option("--depth", depth, "citm comparison depth (default: 4, 8 and 12)");
  cmd_laws->add_option("--sizes", sizes, "key=value,...: poset, set, alphabet, length, base, delay");
  cmd_laws->add_option("--out", out, "report path (default stdout)");
  cmd_laws->add_option("--format", format, "json or text");

  auto* cmd_solve = app.add_subcommand("solve", "solve a guarded equation system");
  cmd_solve->add_option("file", file, "equation system")->required();
  cmd_solve->add_option("--depth", depth, "truncation depth (default 8)");
  cmd_solve->add_flag("--check", check, "re-verify the solution square");
  cmd_solve->add_option("--out", out, "output path (default stdout)");
  cmd_solve->add_option("--format", format, "json or text");

  auto* cmd_search = app.add_subcommand("search", "search for counterexamples to open laws");
  cmd_search->add_option("target", target, "dd-lift, d2-conway or d2-from-d1")->required();
  cmd_search->add_option("--trials", trials, "budget: number of dagger variants (default 20)");
  cmd_search->add_option("--seed", seed, "run seed");
  cmd_search->add_option("--out", out, "findings path (default stdout)");
  cmd_search->add_option("--format", format, "json or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (format != "json" && format != "text") throw UsageError("format must be json or text");

    if (cmd_laws->parsed()) {
      gfix::RunConfig cfg;
      try {
        cfg.model = model;
        cfg.laws = gfix::select_laws(laws);
        cfg.trials = trials == -1 ? 200 : trials;
        cfg.seed = seed;
        if (depth != -1) cfg.depths = {depth};
        if (!sizes.empty()) cfg.sizes = gfix::parse_sizes(sizes);
        cfg.format = format;
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      auto report = gfix::run_suite(cfg);
      emit(out, format == "json" ? report.to_json().dump(2) + "\n" : report.to_text());
      return report.ok() ? 0 : 1;
    }

    if (cmd_solve->parsed()) {
      int k = depth == -1 ? 8 : depth;
      if (k < 1) throw UsageError("depth must be at least 1");
      std::string text = read_file(file);
      gfix::tree::EquationSystem sys;
      try {
        sys = gfix::tree::parse_system(text);
      } catch (const gfix::tree::GuardednessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      } catch (const gfix::tree::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      auto sol = gfix::tree::solve(sys, k);
      bool ok = !check || gfix::tree::check_solution_square(sys, sol, k);
      if (format == "json") {
        gfix::json j{{"depth", k}, {"solutions", gfix::json::object()}};
        for (std::size_t i = 0; i < sol.size(); ++i) j["solutions"][sys.vars[i]] = sys.print_solution(sol[i]);
        if (check) j["check"] = ok;
        emit(out, j.dump(2) + "\n");
      } else {
        std::string s;
        for (std::size_t i = 0; i < sol.size(); ++i) s += sys.vars[i] + " = " + sys.print_solution(sol[i]) + "\n";
        if (check) s += std::string("solution square at depth ") + std::to_string(k) + (ok ? ": ok\n" : ": FAILED\n");
        emit(out, s);
      }
      return ok ? 0 : 1;
    }

    if (cmd_search->parsed()) {
      gfix::SearchOptions opts;
      opts.budget = trials == -1 ? 20 : trials;
      opts.seed = seed;
      if (opts.budget < 0) throw UsageError("budget must be non-negative");
      gfix::json j;
      try {
        j = gfix::search_counterexample(target, opts);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (format == "json") {
        emit(out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << j["target"].get<std::string>() << " budget=" << opts.budget << " seed=" << opts.seed
          << " rejected=" << j["rejected"].get<int>() << " findings=" << j["findings"].size() << "\n";
        emit(out, s.str());
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}

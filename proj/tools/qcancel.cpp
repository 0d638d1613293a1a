#include <CLI11.hpp>

#include <iostream>

#include "qcancel/cli.hpp"

int main(int argc, char** argv) {
  qcancel::CliOptions opts;
  CLI::App app{"Rigidity and cancellation analysis for quantum-parameter algebras"};
  app.set_version_flag("--version", qcancel::kToolVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", opts.out, "Write the report to this file instead of stdout");
    sub->add_option("--degree-bound", opts.degree_bound, "Total degree bound for verification sweeps");
    sub->add_option("--index-bound", opts.index_bound, "Derivation index bound");
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"center", "Center lattice, rank and rectangularity"},
      {"tsets", "T_s sets with witnesses"},
      {"ml", "ML^H generators"},
      {"discriminant", "Normalized discriminant over the center"},
      {"effectiveness", "Discriminant effectiveness and dominance"},
      {"witness", "Locally nilpotent witness for one generator"},
      {"verify-witness", "Verify every constructed higher derivation"},
      {"verdict", "Full analysis and cancellation verdict"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("spec", opts.spec_path, "Ring spec (JSON)")->required();
    common(sub);
    if (name == "witness" || name == "verify-witness") {
      auto* g = sub->add_option("--generator", opts.generator, "1-based generator index");
      if (name == "witness") g->required();
    }
    sub->callback([&opts, name = name] { opts.command = name; });
  }
  auto* bless = app.add_subcommand("bless", "Regenerate <name>.report.json for every <name>.ring.json in a directory");
  bless->add_option("dir", opts.spec_path, "Golden directory")->required();
  bless->callback([&opts] { opts.command = "bless"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qcancel::kExitInput;
  }
  return qcancel::run(opts, std::cout, std::cerr);
}

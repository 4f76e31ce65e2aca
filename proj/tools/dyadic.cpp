#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dyadic/cli.hpp"

namespace {

void add_common(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  dyadic::RunConfig c;
  std::string format = "text";
  std::string epsilon = "1";
  std::string mode = "unconstrained";

  CLI::App app{"Proper dyadic subbases of symbolic subspaces of the real line"};
  app.require_subcommand(1);

  auto* kernel = app.add_subcommand("kernel", "Cantor-Bendixson kernel of a space");
  kernel->add_option("--space", c.space_path, "Space description (JSON)")->required();
  add_common(kernel, format);

  auto add_build_options = [&](CLI::App* cmd) {
    cmd->add_option("--levels", c.levels, "Kernel levels")->check(CLI::Range(0, 12));
    cmd->add_option("--degree-mode", mode, "unconstrained or match-dim")
        ->check(CLI::IsMember({"unconstrained", "match-dim"}));
  };
  auto add_check_options = [&](CLI::App* cmd) {
    cmd->add_option("--depth", c.depth, "Enumeration depth")->check(CLI::Range(0, 12));
    cmd->add_option("--epsilon", epsilon, "Resolution radius p/q");
    cmd->add_option("--seed", c.seed, "Probe seed");
    cmd->add_option("--probes", c.probes, "Number of random probes");
  };

  auto* build = app.add_subcommand("build", "Build a proper dyadic subbase");
  build->add_option("--space", c.space_path, "Space description (JSON)")->required();
  add_build_options(build);
  add_check_options(build);
  build->add_flag("--emit-trace", c.emit_trace, "Include per-level construction traces");
  add_common(build, format);

  auto* check = app.add_subcommand("check", "Verify a serialized subbase");
  check->add_option("--subbase", c.subbase_path, "Subbase (JSON)")->required();
  check->add_option("--property", c.property, "Property to check")
      ->check(CLI::IsMember({"proper", "independent", "dyadic", "degree", "resolution", "all"}));
  check->add_flag("--on-kernel", c.on_kernel, "Check independence on the kernel restriction");
  check->add_option("--degree-mode", mode, "unconstrained or match-dim")
      ->check(CLI::IsMember({"unconstrained", "match-dim"}));
  add_check_options(check);
  add_common(check, format);

  auto* encode = app.add_subcommand("encode", "Code points by a subbase");
  encode->add_option("--subbase", c.subbase_path, "Subbase (JSON)")->required();
  encode->add_option("--point", c.points, "Point p/q (repeatable)")->required();
  encode->add_option("--length", c.length, "Code length");
  add_common(encode, format);

  auto* decode = app.add_subcommand("decode", "Base set named by a word");
  decode->add_option("--subbase", c.subbase_path, "Subbase (JSON)")->required();
  decode->add_option("--word", c.word, "Word over 0, 1 and _ (or ⊥)")->required();
  add_common(decode, format);

  auto* report = app.add_subcommand("report", "Build (or load) and run every check");
  auto* space_opt = report->add_option("--space", c.space_path, "Space description (JSON)");
  report->add_option("--subbase", c.subbase_path, "Subbase (JSON)")->excludes(space_opt);
  add_build_options(report);
  add_check_options(report);
  add_common(report, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dyadic::kExitInputError;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? dyadic::OutputFormat::json : dyadic::OutputFormat::text;
  c.degree_mode = mode == "match-dim" ? dyadic::DegreeMode::match_dim : dyadic::DegreeMode::unconstrained;
  try {
    c.epsilon = dyadic::Rational::parse(epsilon);
  } catch (const dyadic::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dyadic::kExitInputError;
  }
  return dyadic::run(c, std::cout, std::cerr);
}

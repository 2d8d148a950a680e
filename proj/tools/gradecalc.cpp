#include "commands.hpp"

#include "gradecalc/group_io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace gradecalc;
using namespace gradecalc::cli;

int main(int argc, char** argv) {
  CLI::App app("Analysis on graded nilpotent Lie groups: heat semigroups, potentials and Sobolev norms", "gradecalc");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version_string());

  Options o;
  std::string seed_text;
  auto* group_opt = app.add_option("--group", o.run.group, "Built-in group name or path to a group file")
                        ->default_str(o.run.group);
  app.add_option("--op", o.run.op, "Operator expression, e.g. \"-X^2 - Y^2\"");
  app.add_option_function<double>("--scale", [&](double r) { o.run.scale = r; }, "Dilation-adapted half-widths R^{w_j}");
  app.add_option("--points", o.run.points, "Nodes per axis (one value or one per axis)")->delimiter(',');
  app.add_option("--seed", seed_text, "Seed for quasi-random families (default 0xC0FFEE)");
  app.add_option("--out", o.out, "Output file (CSV commands) or directory (verify, export)");
  app.add_option("--tol-scale", o.run.tol_scale, "Multiplier applied to every upper-bound threshold");
  app.add_option("--time-budget", o.run.time_budget_seconds, "Wall-clock budget in seconds for verify");

  std::function<int()> action;

  auto* group = app.add_subcommand("group", "Group-level commands");
  group->require_subcommand(1);
  group->add_subcommand("check", "Validate the algebra and the group law")->callback([&] {
    action = [&] { return cmd_group_check(o); };
  });

  auto* heat = app.add_subcommand("heat", "Heat kernels h_t as CSV");
  heat->add_option("--t", o.times, "Comma-separated times")->delimiter(',');
  heat->callback([&] { action = [&] { return cmd_heat(o); }; });

  auto* kernel = app.add_subcommand("kernel", "Riesz or Bessel potential kernel as CSV");
  kernel->add_option("--type", o.kernel_type)->check(CLI::IsMember({"riesz", "bessel"}));
  kernel->add_option("--a", o.a, "Order a");
  kernel->callback([&] { action = [&] { return cmd_kernel(o); }; });

  auto* norm = app.add_subcommand("norm", "Sobolev norms of the test family");
  norm->add_option("--s", o.s, "Order s");
  norm->add_option("--p", o.p, "Exponent p (number or inf)");
  norm->add_option("--flavor", o.flavor)->check(CLI::IsMember({"spectral", "homogeneous", "integer"}));
  norm->callback([&] { action = [&] { return cmd_norm(o); }; });

  auto* probe = app.add_subcommand("probe", "Ratio probes as CSV");
  probe->add_option("--id", o.probe_filter, "Only probes whose id contains this text");
  probe->callback([&] { action = [&] { return cmd_probe(o); }; });

  app.add_subcommand("verify", "Run the verification suite (every built-in group unless --group is given)")
      ->callback([&] { action = [&] { return cmd_verify(o); }; });

  auto* exp = app.add_subcommand("export", "Write heat, riesz, bessel or probes CSV into --out");
  exp->add_option("artifact", o.artifact, "heat | riesz | bessel | probes")
      ->required()
      ->check(CLI::IsMember({"heat", "riesz", "bessel", "probes"}));
  exp->add_option("--t", o.times, "Comma-separated heat times")->delimiter(',');
  exp->add_option("--a", o.a, "Potential order a");
  exp->callback([&] { action = [&] { return cmd_export(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    o.group_given = group_opt->count() > 0;
    if (!seed_text.empty()) {
      std::size_t pos = 0;
      try {
        o.run.seed = std::stoull(seed_text, &pos, 0);
      } catch (const std::logic_error&) {
        pos = 0;
      }
      if (pos == 0 || pos != seed_text.size()) throw ConfigError("--seed must be an integer, got '" + seed_text + "'");
    }
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "gradecalc: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "gradecalc: " << e.what() << "\n";
  } catch (const ExprParseError& e) {
    std::cerr << "gradecalc: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    std::cerr << "gradecalc: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "gradecalc: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << "gradecalc: value out of range: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "gradecalc: error: " << e.what() << "\n";
    return kExitChecksFailed;
  }
  return kExitUsage;
}

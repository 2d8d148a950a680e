#pragma once

#include "gradecalc/sobolev.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gradecalc {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string group = "heisenberg";  // built-in name or path to a group file
  std::string op;                    // operator expression; empty selects the group default
  std::optional<double> scale;       // dilation-adapted half-widths R^{w_j}
  std::vector<int> points;           // nodes per axis
  std::vector<double> times;         // heat times t, s (t + s is derived)
  double tol_scale = 1;
  std::uint64_t seed = 0xC0FFEE;
  std::string out_dir;
  std::size_t point_budget = kDefaultPointBudget;
  double time_budget_seconds = 600;

  void validate() const;
};

struct Anchor {
  std::string id;
  std::string quote;
};
const std::vector<Anchor>& anchor_registry();
const Anchor* find_anchor(const std::string& id);

enum class Relation { Below, AtMost, Above, AtLeast, Holds };
std::string to_string(Relation r);

struct CheckResult {
  std::string id;
  std::string anchor;
  double measured = 0;
  Relation relation = Relation::Below;
  double threshold = 0;
  bool pass = false;
  std::string note;
};

struct ProbeRow {
  std::string id;
  std::string params;
  double min = 0, max = 0;
  std::optional<double> baseline;  // frozen max ratio
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<ProbeRow> probes;
  std::vector<std::pair<std::string, std::string>> environment;
  bool partial = false;
  std::string partial_reason;
  // Wall-clock seconds per stage; kept out of the text rendering.
  std::map<std::string, double> stage_seconds;

  bool all_pass() const;
  const CheckResult* find(const std::string& id) const;
  void merge(VerificationReport other);

  // Deterministic rendering; the timestamp line is the only run-dependent content.
  std::string to_text(bool with_timestamp = true) const;
  std::string to_json() const;
  std::string probes_csv() const;
  void write(const std::string& dir) const;
};

// Built-in verification profile of a group: grid, operator and selected stages.
struct Profile {
  std::string name;
  std::string op;
  std::vector<double> half_widths;
  std::vector<int> counts;
  int order = 4;
  double t = 0.1;
  bool heat = true;
  bool potentials = true;
  bool sobolev = true;
  bool geometry = true;
  bool classical_1d = false;
  bool newtonian = false;
  bool sharpness = false;
  bool rockland_pair = false;  // -L versus L^2 comparison
  double family_scale = 1;
  FamilyOptions family;
};

std::vector<std::string> builtin_groups();
Profile resolve_profile(const GradedLieAlgebra& alg, const std::string& name, const RunConfig& cfg);

// Group, operator and grid selected by a configuration; the plan is built on first use.
struct Workspace {
  std::string group;  // report prefix
  std::shared_ptr<const GradedLieAlgebra> alg;
  std::shared_ptr<const GroupLaw> law;
  std::vector<LeftInvariantField> fields;
  Profile profile;
  RocklandSpec spec;
  PolyDiffOp op;
  Grid grid;

  const SpectralPlan& plan();
  std::shared_ptr<const SpectralPlan> plan_ptr();

 private:
  std::shared_ptr<const SpectralPlan> plan_;
  std::size_t budget_ = kDefaultPointBudget;
  friend Workspace prepare_workspace(const RunConfig& cfg);
};
// Throws ConfigError, ParseError, ExprParseError or BudgetExceeded on bad input.
Workspace prepare_workspace(const RunConfig& cfg);

VerificationReport run_group_check(const RunConfig& cfg);
VerificationReport run_verify(const RunConfig& cfg);
// Every built-in group in a fixed order.
VerificationReport run_default_suite(const RunConfig& cfg);

// Frozen probe baselines keyed by "<group>/<probe id>".
std::map<std::string, double> load_baselines(const std::string& path);
std::string default_baselines_path();

std::string version_string();

}  // namespace gradecalc

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "gradecalc/suite.hpp"

#include <chrono>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

using namespace gradecalc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }

  // Every listed check must be present and passing.
  void checks(const VerificationReport& rep, std::initializer_list<const char*> ids) {
    for (const char* id : ids) {
      const auto* c = rep.find(id);
      if (!c)
        require(false, std::string(id) + " missing");
      else
        require(c->pass, std::string(id) + " measured " + std::to_string(c->measured));
    }
  }

  void probes(const VerificationReport& rep, std::initializer_list<const char*> ids) {
    for (const char* id : ids) {
      bool found = false;
      for (const auto& p : rep.probes)
        if (p.id == id) {
          found = true;
          require(p.pass, std::string(id) + " probe mismatch");
        }
      require(found, std::string(id) + " probe missing");
    }
  }
};

double stage(const VerificationReport& rep, const std::string& key) {
  const auto it = rep.stage_seconds.find(key);
  return it == rep.stage_seconds.end() ? 0.0 : it->second;
}

}  // namespace

int main() {
  std::vector<Criterion> out;

  {
    Criterion c{"AC1 exact algebra"};
    const auto t0 = Clock::now();
    for (const char* g : {"abelian1", "abelian3", "heisenberg", "heisenberg358"}) {
      RunConfig cfg;
      cfg.group = g;
      const auto rep = run_group_check(cfg);
      const std::string p = std::string(g) + "/";
      for (const char* id : {"algebra.valid", "group.identity", "group.associativity", "group.inverse",
                             "group.dilation_homogeneity", "group.rational_triples"}) {
        const auto* r = rep.find(p + id);
        c.require(r && r->pass, p + id);
      }
    }
    const double secs = since(t0);
    c.require(secs < 5, "runtime " + std::to_string(secs) + " s");
    c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(secs) + " s";
    out.push_back(c);
  }

  const auto t_suite = Clock::now();
  const auto first = run_default_suite(RunConfig{});
  const double suite_secs = since(t_suite);
  const auto second = run_default_suite(RunConfig{});

  {
    Criterion c{"AC2 heat identities"};
    c.checks(first, {"abelian1/heat.mass", "abelian1/heat.semigroup", "abelian1/heat.symmetry",
                     "abelian1/heat.self_similarity", "heisenberg/heat.mass", "heisenberg/heat.semigroup",
                     "heisenberg/heat.symmetry", "heisenberg/heat.self_similarity"});
    double secs = 0;
    for (const char* g : {"abelian1", "heisenberg"})
      for (const char* s : {"algebra", "geometry", "heat"}) secs += stage(first, std::string(g) + "/" + s);
    c.require(secs < 180, "heat runtime " + std::to_string(secs) + " s");
    out.push_back(c);
  }
  {
    Criterion c{"AC3 classical oracles"};
    c.checks(first, {"abelian1/heat.gaussian_oracle", "abelian1/bessel.oracle", "abelian3/riesz.newtonian"});
    out.push_back(c);
  }
  {
    Criterion c{"AC4 potential identities"};
    c.checks(first, {"abelian1/bessel.unit_mass", "abelian1/bessel.mass", "abelian3/bessel.mass",
                     "abelian1/bessel.semigroup", "abelian1/riesz.homogeneity", "abelian3/riesz.homogeneity",
                     "heisenberg/riesz.homogeneity"});
    out.push_back(c);
  }
  {
    Criterion c{"AC5 fractional-power calculus"};
    c.checks(first, {"abelian1/fractional.round_trip", "abelian3/fractional.round_trip",
                     "heisenberg/fractional.round_trip", "abelian1/balakrishnan.bessel", "abelian1/balakrishnan.riesz",
                     "abelian1/interpolation.inequality", "heisenberg/interpolation.inequality"});
    out.push_back(c);
  }
  {
    Criterion c{"AC6 norm equivalences"};
    c.checks(first, {"heisenberg/equivalence.integer_vs_spectral", "heisenberg/equivalence.rockland_independence",
                     "heisenberg/equivalence.rerun_stability"});
    c.probes(first, {"heisenberg/equivalence.integer_vs_spectral", "heisenberg/equivalence.rockland_independence"});
    out.push_back(c);
  }
  {
    Criterion c{"AC7 embeddings"};
    c.checks(first, {"heisenberg/embedding.lq_drift", "heisenberg/embedding.sup_drift", "heisenberg/embedding.refusals",
                     "abelian1/embedding.lq_drift", "abelian1/embedding.sup_drift", "abelian1/embedding.refusals"});
    c.probes(first, {"heisenberg/embedding.lq", "heisenberg/embedding.sup"});
    out.push_back(c);
  }
  {
    Criterion c{"AC8 sharpness on the (3,5,8) Heisenberg group"};
    c.checks(first, {"heisenberg358/group.graded_not_stratified", "heisenberg358/sharpness.s10_bounded",
                     "heisenberg358/sharpness.s8_increasing", "heisenberg358/sharpness.s6_increasing"});
    c.probes(first, {"heisenberg358/sharpness.s10", "heisenberg358/sharpness.s8", "heisenberg358/sharpness.s6"});
    out.push_back(c);
  }
  {
    Criterion c{"AC9 determinism and runtime"};
    c.require(first.to_text(false) == second.to_text(false), "text reports differ");
    c.require(first.to_json() == second.to_json(), "json reports differ");
    c.require(first.probes_csv() == second.probes_csv(), "probe tables differ");
    c.require(!first.partial, "partial run: " + first.partial_reason);
    c.require(first.all_pass(), "default suite has failing checks");
    c.require(suite_secs < 600, "suite runtime " + std::to_string(suite_secs) + " s");
    c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(suite_secs) + " s";
    out.push_back(c);
  }

  bool all = true;
  for (const auto& c : out) {
    std::printf("%s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.empty() ? "" : ": ",
                c.detail.c_str());
    all = all && c.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}

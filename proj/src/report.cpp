#include "gradecalc/suite.hpp"

#include "gradecalc/group_io.hpp"

#include <json.hpp>

#include <Eigen/Core>
#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gradecalc {

const std::vector<Anchor>& anchor_registry() {
  // Each quote is a verbatim excerpt of the reference text (whitespace-normalized).
  static const std::vector<Anchor> reg = {
      {"gradation", R"(admits an $\mathbb N$-gradation)"},
      {"dilations", R"(The associated group dilations are defined by)"},
      {"convolution-transpose", R"(\tilde g(x)=g(x^{-1}))"},
      {"young", R"(then $f_1*f_2\in L^r(G)$)"},
      {"pseudo-norm-triangle", "satisfies a triangle inequality up to a constant"},
      {"pseudo-norm-example", "A concrete example of a homogeneous pseudo-norm"},
      {"polar", "there is a (unique) positive Borel measure"},
      {"kernel-type", R"(is called a \emph{kernel of type})"},
      {"type-boundedness", "extends to a bounded operator from"},
      {"approximate-identity", R"(converges towards $(\int \phi)\, f$)"},
      {"rockland-example", R"(is a Rockland operator of homogeneous degree $2\nu_o$)"},
      {"spectral-measure", "its spectral measure"},
      {"heat-kernel", "each distribution $h_t$ is Schwartz"},
      {"heat-semigroup", "h_t*h_s&=&h_{t+s}"},
      {"heat-scaling", R"(h_{r^\nu t}(r x)&=& r^{-Q} h_t(x))"},
      {"heat-symmetry", R"(h_t(x)&=&\overline{h_t(x^{-1}) })"},
      {"heat-mass", R"(\int_G h_t(x) dx&=&1)"},
      {"gamma", R"($\Gamma$ denotes the usual Gamma function)"},
      {"fractional-powers", R"(with $(\mathcal A_p^{a})^{-1}=\mathcal A_p^{-a}$)"},
      {"balakrishnan-riesz", R"(in the sense that $\lim_{N\to\infty}\int_0^N$)"},
      {"balakrishnan-bessel", "in the sense of absolute convergence"},
      {"riesz-kernel", R"(converges absolutely for every $x\not=0$)"},
      {"bessel-integrable", R"(and $\mathcal B_a$ is integrable)"},
      {"bessel-semigroup", "then as integrable functions,"},
      {"sobolev-norm", R"(with respect to the \emph{Sobolev norm})"},
      {"sobolev-equivalent", "the following norms are equivalent"},
      {"sobolev-inclusion", R"(L^p_b (G)\subsetneq L^p_a(G))"},
      {"integer-order", "equivalent to the Sobolev norm"},
      {"rockland-independence", "associated with any positive Rockland operators coincide"},
      {"bump-multiplication", "extends continuously into a bounded map"},
      {"interpolation", R"(\|\mathcal A_p^ a \phi\| \leq C \|\phi\|^{1-\frac{{{\rm Re}\,} a}{{{\rm Re}\,} b}})"},
      {"type-zero", "are of type 0 and, consequently"},
      {"embedding", "we have the following continuous inclusion"},
      {"sup-embedding", "admits a bounded continuous representative"},
      {"graded-not-stratified", "graded but not stratified"},
      {"sharpness", "and this can not be improved"},
      {"homogeneous-sobolev", "define homogeneous Sobolev spaces"},
  };
  return reg;
}

const Anchor* find_anchor(const std::string& id) {
  for (const auto& a : anchor_registry())
    if (a.id == id) return &a;
  return nullptr;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Below: return "<";
    case Relation::AtMost: return "<=";
    case Relation::Above: return ">";
    case Relation::AtLeast: return ">=";
    case Relation::Holds: return "holds";
  }
  return "?";
}

bool VerificationReport::all_pass() const {
  if (partial) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  for (const auto& p : probes)
    if (!p.pass) return false;
  return true;
}

const CheckResult* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

void VerificationReport::merge(VerificationReport o) {
  for (auto& c : o.checks) checks.push_back(std::move(c));
  for (auto& p : o.probes) probes.push_back(std::move(p));
  for (auto& e : o.environment) environment.push_back(std::move(e));
  for (auto& [k, v] : o.stage_seconds) stage_seconds[k] = v;
  if (o.partial) {
    partial = true;
    if (!partial_reason.empty()) partial_reason += "; ";
    partial_reason += o.partial_reason;
  }
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

nlohmann::json json_num(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

}  // namespace

std::string VerificationReport::to_text(bool with_timestamp) const {
  std::ostringstream os;
  os << "# gradecalc verification report\n";
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
  }
  for (const auto& [k, v] : environment) os << "# " << k << ": " << v << "\n";
  if (partial) os << "# PARTIAL: " << partial_reason << "\n";
  os << "check,anchor,measured,relation,threshold,status,note\n";
  for (const auto& c : checks) {
    os << c.id << ',' << c.anchor << ',' << num(c.measured) << ',' << to_string(c.relation) << ','
       << num(c.threshold) << ',' << (c.pass ? "PASS" : "FAIL") << ',' << c.note << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.pass;
  os << "# " << passed << "/" << checks.size() << " checks passed";
  if (!probes.empty()) {
    std::size_t pinned = 0, matched = 0;
    for (const auto& p : probes) {
      pinned += p.baseline.has_value();
      matched += p.baseline && p.pass;
    }
    os << ", " << matched << "/" << pinned << " pinned probes match their baselines";
    if (pinned < probes.size()) os << " (" << probes.size() - pinned << " unpinned)";
  }
  os << "\n";
  return os.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["partial"] = partial;
  if (partial) j["partial_reason"] = partial_reason;
  nlohmann::json env = nlohmann::json::object();
  for (const auto& [k, v] : environment) env[k] = v;
  j["environment"] = env;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"id", c.id},
                           {"anchor", c.anchor},
                           {"measured", json_num(c.measured)},
                           {"relation", to_string(c.relation)},
                           {"threshold", json_num(c.threshold)},
                           {"pass", c.pass},
                           {"note", c.note}});
  }
  j["probes"] = nlohmann::json::array();
  for (const auto& p : probes) {
    j["probes"].push_back({{"id", p.id},
                           {"params", p.params},
                           {"min", json_num(p.min)},
                           {"max", json_num(p.max)},
                           {"baseline", p.baseline ? json_num(*p.baseline) : nlohmann::json()},
                           {"pass", p.pass}});
  }
  j["all_pass"] = all_pass();
  return j.dump(2) + "\n";
}

std::string VerificationReport::probes_csv() const {
  std::ostringstream os;
  os << "probe,params,min_ratio,max_ratio,baseline,status\n";
  for (const auto& p : probes)
    os << p.id << ",\"" << p.params << "\"," << num(p.min) << ',' << num(p.max) << ','
       << (p.baseline ? num(*p.baseline) : std::string("none")) << ',' << (p.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void VerificationReport::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  std::ofstream(d / "report.txt") << to_text();
  std::ofstream(d / "report.json") << to_json();
  std::ofstream(d / "probes.csv") << probes_csv();
}

std::map<std::string, double> load_baselines(const std::string& path) {
  std::map<std::string, double> out;
  std::ifstream in(path);
  if (!in) return out;
  const auto j = nlohmann::json::parse(in);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_object()) continue;
    for (auto p = it->begin(); p != it->end(); ++p) out[it.key() + "/" + p.key()] = p->get<double>();
  }
  return out;
}

std::string default_baselines_path() {
  if (const char* env = std::getenv("GRADECALC_BASELINES")) return env;
  return (data_directory() / "baselines.json").string();
}

std::string version_string() {
  std::ostringstream os;
  os << "gradecalc 0.1.0; eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION
     << "; " << fftw_version;
  return os.str();
}

}  // namespace gradecalc

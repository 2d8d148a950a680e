#include "gradecalc/suite.hpp"

#include "gradecalc/geometry.hpp"
#include "gradecalc/group_io.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gradecalc {

void RunConfig::validate() const {
  if (!(tol_scale > 0)) throw ConfigError("--tol-scale must be positive");
  if (point_budget == 0 || point_budget > kDefaultPointBudget)
    throw ConfigError("point budget must be in [1, " + std::to_string(kDefaultPointBudget) + "]");
  if (scale && !(*scale > 0)) throw ConfigError("--scale must be positive");
  for (int n : points)
    if (n < 3 || n % 2 == 0) throw ConfigError("--points entries must be odd and >= 3");
  for (double t : times)
    if (!(t > 0)) throw ConfigError("heat times must be positive");
  if (!(time_budget_seconds > 0)) throw ConfigError("time budget must be positive");
}

std::vector<std::string> builtin_groups() { return {"abelian1", "abelian3", "heisenberg", "heisenberg358", "engel"}; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = "x") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

bool is_builtin(const std::string& name) {
  const auto b = builtin_groups();
  return std::find(b.begin(), b.end(), name) != b.end();
}

// Built-in group name if cfg.group refers to a shipped file.
std::string profile_name(const std::string& group) {
  if (is_builtin(group)) return group;
  const auto p = resolve_group_path(group);
  const auto stem = p.stem().string();
  std::error_code ec;
  if (is_builtin(stem) && std::filesystem::equivalent(p, data_directory() / "groups" / (stem + ".json"), ec))
    return stem;
  return "custom";
}

int lcm_of(const std::vector<int>& w) {
  int l = 1;
  for (int x : w) l = std::lcm(l, x);
  return l;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, VerificationReport& rep, std::string group, Clock::time_point start)
      : cfg_(cfg), rep_(rep), group_(std::move(group)), start_(start) {}

  void check(const std::string& id, const std::string& anchor, double measured, Relation rel, double threshold,
             const std::string& note = "") {
    double thr = threshold;
    if (rel == Relation::Below || rel == Relation::AtMost) thr *= cfg_.tol_scale;
    bool pass = false;
    switch (rel) {
      case Relation::Below: pass = measured < thr; break;
      case Relation::AtMost: pass = measured <= thr; break;
      case Relation::Above: pass = measured > thr; break;
      case Relation::AtLeast: pass = measured >= thr; break;
      case Relation::Holds: pass = measured == 1; break;
    }
    if (!find_anchor(anchor)) throw std::logic_error("unregistered anchor " + anchor);
    rep_.checks.push_back({group_ + "/" + id, anchor, measured, rel, thr, pass, note});
  }
  void holds(const std::string& id, const std::string& anchor, bool ok, const std::string& note = "") {
    check(id, anchor, ok ? 1 : 0, Relation::Holds, 1, note);
  }
  void probe(ProbeRow row) {
    row.id = group_ + "/" + row.id;
    rep_.probes.push_back(std::move(row));
  }

  // Runs body as one stage unless the time budget is spent; exceptions become failed checks.
  template <class F>
  void stage(const std::string& name, const std::string& anchor, F&& body) {
    if (seconds_since(start_) > cfg_.time_budget_seconds) {
      rep_.partial = true;
      const std::string msg = "time budget exhausted before " + group_ + "/" + name;
      if (rep_.partial_reason.find(msg) == std::string::npos)
        rep_.partial_reason += (rep_.partial_reason.empty() ? "" : "; ") + msg;
      return;
    }
    const auto t0 = Clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      std::string what = e.what();
      std::replace(what.begin(), what.end(), ',', ';');
      std::replace(what.begin(), what.end(), '\n', ' ');
      holds(name + ".completed", anchor, false, what);
    }
    rep_.stage_seconds[group_ + "/" + name] = seconds_since(t0);
  }

  const RunConfig& config() const { return cfg_; }
  const std::string& group() const { return group_; }

 private:
  const RunConfig& cfg_;
  VerificationReport& rep_;
  std::string group_;
  Clock::time_point start_;
};

// Everything a stage may need, built lazily.
struct Env {
  std::shared_ptr<const GradedLieAlgebra> alg;
  std::unique_ptr<GroupLaw> law;
  std::vector<LeftInvariantField> fields;
  Profile profile;
  RocklandSpec spec;
  PolyDiffOp op{1};
  Grid grid;
  std::shared_ptr<const SpectralPlan> plan;
  // Probe baselines apply only to the default configuration.
  std::map<std::string, double> baselines;

  const SpectralPlan& get_plan(const RunConfig& cfg) {
    if (!plan) {
      PlanOptions po;
      po.order = profile.order;
      po.point_budget = cfg.point_budget;
      plan = std::make_shared<const SpectralPlan>(
          SpectralPlan::from_operator(op, grid, spec.degree, alg->weights(), po));
    }
    return *plan;
  }
};

// ---------------------------------------------------------------- algebra

void algebra_stage(Runner& run, Env& env) {
  const auto rep = validate_algebra(*env.alg);
  std::string note;
  for (const auto& v : rep.violations) {
    note += v.kind + "(" + std::to_string(v.j + 1) + " " + std::to_string(v.k + 1) + " " + std::to_string(v.l + 1) +
            ") ";
  }
  run.holds("algebra.valid", "gradation", rep.ok(), note);
  if (!rep.ok()) return;
  env.law = std::make_unique<GroupLaw>(bch_group_law(env.alg));
  const auto chk = check_group_law(*env.law);
  run.holds("group.identity", "gradation", chk.identity);
  run.holds("group.associativity", "gradation", chk.associativity);
  run.holds("group.inverse", "gradation", chk.inverse);
  run.holds("group.dilation_homogeneity", "dilations", chk.homogeneity);

  // Exact rational spot checks on top of the symbolic identities.
  const std::size_t n = env.law->dim();
  boost::random::mt19937 rng(static_cast<std::uint32_t>(run.config().seed));
  boost::random::uniform_int_distribution<int> num(-12, 12), den(1, 7);
  auto point = [&] {
    RationalPoint p(n);
    for (auto& v : p) v = make_rational(num(rng), den(rng));
    return p;
  };
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    const auto x = point(), y = point(), z = point();
    ok = env.law->multiply(env.law->multiply(x, y), z) == env.law->multiply(x, env.law->multiply(y, z));
    const auto e = env.law->multiply(x, env.law->invert(x));
    for (const auto& c : e) ok = ok && c == 0;
    const Rational r = make_rational(den(rng) + 1, den(rng));
    const auto& w = env.alg->weights();
    ok = ok && dilate(w, r, env.law->multiply(x, y)) == env.law->multiply(dilate(w, r, x), dilate(w, r, y));
  }
  run.holds("group.rational_triples", "gradation", ok, "200 random rational triples");
  if (env.profile.sharpness)
    run.holds("group.graded_not_stratified", "graded-not-stratified", !env.alg->is_stratified());
}

// ---------------------------------------------------------------- geometry

double bump(double r2) { return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0; }

void geometry_stage(Runner& run, Env& env) {
  const auto& w = env.alg->weights();
  const std::size_t n = w.size();
  const PseudoNorm norm = PseudoNorm::minimal(w);

  {
    auto pts = quasi_random_points(n + 1, 200, run.config().seed);
    double worst = 0;
    for (const auto& u : pts) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = 6 * u[j] - 3;
      const double r = std::exp(4 * u[n] - 2);
      worst = std::max(worst, std::abs(norm(dilate(w, r, x)) / (r * norm(x)) - 1));
    }
    run.check("geometry.pseudo_norm_homogeneity", "pseudo-norm-example", worst, Relation::Below, 1e-12);
  }
  {
    const auto c = quasi_triangle_constant(*env.law, norm, 20000, run.config().seed);
    const bool ok = std::isfinite(c.constant) && c.constant >= 1;
    run.holds("geometry.triangle_constant", "pseudo-norm-triangle", ok, "C = " + fmt(c.constant));
  }
  if (n <= 3) {
    // Polar decomposition of a smooth, non-radial integrand.
    auto f = [&](std::span<const double> x) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += x[j] * x[j];
      return (1 + 0.3 * x[0]) * std::exp(-s);
    };
    const Grid gp(std::vector<double>(n, 6.0), std::vector<int>(n, n == 1 ? 1201 : 61));
    const auto quad = build_sphere_quadrature(norm, 20000, run.config().seed);
    const auto cmp = polar_integral_check(f, quad, gp, 8);
    run.check("geometry.polar_decomposition", "polar", cmp.relative_gap(), Relation::Below, 1e-2);
  }
  if (n <= 3) {
    std::vector<double> half(n, 2.0);
    std::vector<int> counts(n, n == 1 ? 161 : 17);
    const Grid g(half, counts);
    const auto f = sample(g, [&](std::span<const double> x) {
      double r2 = (x[0] - 0.3) * (x[0] - 0.3);
      for (std::size_t j = 1; j < n; ++j) r2 += x[j] * x[j];
      return bump(r2) * (1 + (n > 1 ? x[1] : 0.5 * x[0]));
    });
    const auto k = sample(g, [&](std::span<const double> x) {
      double r2 = x[0] * x[0];
      for (std::size_t j = 1; j < n; ++j) r2 += (j == 1 ? (x[1] + 0.2) * (x[1] + 0.2) : 0.5 * x[j] * x[j]);
      return bump(r2) * (1 + 0.5 * x[0] - (n > 2 ? x[2] : 0.0));
    });
    const auto h = sample(g, [&](std::span<const double> x) {
      double r2 = 0;
      for (double v : x) r2 += v * v;
      return std::exp(-r2);
    });
    const auto fk = group_convolve(*env.law, f, k);
    const double lhs = inner_product(fk, h);
    const double rhs = inner_product(f, group_convolve(*env.law, h, reflect(k)));
    run.check("convolution.transpose_identity", "convolution-transpose", std::abs(lhs - rhs) / std::abs(lhs),
              Relation::Below, 1e-6);
    double worst = 0;
    for (const auto& [p, q, r] : std::vector<std::array<double, 3>>{{1, 1, 1}, {1, 2, 2}, {2, 2, INFINITY}})
      worst = std::max(worst, lp_norm(fk, r) / (lp_norm(f, p) * lp_norm(k, q)));
    run.check("convolution.young", "young", worst, Relation::AtMost, 1.05, "(1,1,1) (1,2,2) (2,2,inf)");
  }
  if (n <= 3 && *std::max_element(w.begin(), w.end()) <= 2) {
    // Approximate identity with discretely normalized Gaussians phi_t; weight > 2 would need
    // phi_t far below the grid spacing.
    const Grid ga = n == 1 ? Grid({2}, {401}) : Grid(std::vector<double>(n, 1.5), std::vector<int>(n, n == 3 ? 21 : 41));
    const auto fa = sample(ga, [&](std::span<const double> x) {
      double r2 = 0;
      for (double v : x) r2 += v * v;
      return bump(r2);
    });
    double prev = INFINITY, worst_ratio = 0;
    for (double t : {1.0, 0.5, 0.25, 0.125}) {
      auto phi = sample(ga, [&](std::span<const double> x) {
        double r2 = 0;
        for (std::size_t j = 0; j < n; ++j) r2 += std::pow(x[j] / std::pow(t, w[j]), 2);
        return std::exp(-4 * r2);
      });
      phi = (1 / haar_integrate(phi)) * phi;
      const double err = lp_distance(group_convolve(*env.law, fa, phi), fa, 2);
      if (std::isfinite(prev)) worst_ratio = std::max(worst_ratio, err / prev);
      prev = err;
    }
    run.check("convolution.approximate_identity", "approximate-identity", worst_ratio, Relation::Below, 1,
              "largest error ratio between successive t halvings");
  }
}

// ---------------------------------------------------------------- heat

double gaussian_1d(double x, double t) { return std::exp(-x * x / (4 * t)) / std::sqrt(4 * std::numbers::pi * t); }

void heat_stage(Runner& run, Env& env) {
  const auto& cfg = run.config();
  const auto& plan = env.get_plan(cfg);
  const auto& w = env.alg->weights();
  const double lmax = std::abs(plan.max_eigenvalue());
  run.check("heat.positivity", "spectral-measure", plan.min_eigenvalue() / lmax, Relation::AtLeast, -1e-6,
            "lambda_min / lambda_max");
  run.check("heat.reconstruction", "spectral-measure", plan.reconstruction_residual(), Relation::Below, 1e-8);

  const double t = cfg.times.empty() ? env.profile.t : cfg.times[0];
  const double s = cfg.times.size() > 1 ? cfg.times[1] : t;
  std::vector<double> times{t, s, t + s};
  auto fam = heat_kernel_family(plan, times);

  {
    const GridFunction& f0 = fam.kernels[1];
    const GridFunction once = heat_apply(plan, f0, t + s);
    const GridFunction twice = heat_apply(plan, heat_apply(plan, f0, s), t);
    run.check("heat.composition", "heat-semigroup", lp_distance(once, twice, 2) / lp_norm(once, 2), Relation::Below,
              1e-8, "e^{-(t+s)R} against e^{-tR} e^{-sR}");
    run.holds("heat.identity_at_zero", "heat-semigroup", lp_distance(heat_apply(plan, f0, 0), f0, INFINITY) == 0);
  }
  double mass = 0, sym = 0;
  for (const auto& h : fam.kernels) {
    mass = std::max(mass, mass_defect(h));
    sym = std::max(sym, symmetry_defect(h));
  }
  const std::string times_note = "t=" + fmt(t) + " s=" + fmt(s);
  run.check("heat.mass", "heat-mass", mass, Relation::Below, 1e-3, times_note);
  run.check("heat.symmetry", "heat-symmetry", sym, Relation::Below, 1e-3, times_note);
  run.check("heat.self_similarity", "heat-scaling",
            self_similarity_defect(fam.kernels[0], t, fam.kernels[2], t + s, w, plan.degree()), Relation::Below,
            2e-2, "h_t against the scaled h_{t+s}");
  run.check("heat.semigroup", "heat-semigroup",
            semigroup_defect(*env.law, fam.kernels[0], fam.kernels[1], fam.kernels[2], 1e-12), Relation::Below, 1e-2,
            times_note);

  {
    // Small-time ordering at the unit-sphere point (1, 0, ..., 0).
    std::vector<double> x(w.size(), 0.0);
    x[0] = 1;
    auto dec = heat_kernel_family(plan, {0.05, 0.1, 0.2});
    std::vector<double> v;
    for (const auto& h : dec.kernels) v.push_back(interpolate(h, x, 3));
    run.check("heat.decay_ordering", "heat-kernel", std::min(v[1] / v[0], v[2] / v[1]), Relation::Above, 1,
              "min ratio h_{2t}(x)/h_t(x), |x| = 1");
  }

  if (env.profile.classical_1d) {
    double worst = 0;
    for (double tt : {0.05, 0.1, 0.2, 0.5}) {
      const auto h = heat_kernel(plan, tt);
      const Grid& g = h.grid();
      double err = 0, peak = 0;
      const double limit = g.half_width(0) / 2;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double xi = g.node(i)[0];
        if (std::abs(xi) > limit) continue;
        const double o = gaussian_1d(xi, tt);
        err = std::max(err, std::abs(h[i] - o));
        peak = std::max(peak, o);
      }
      worst = std::max(worst, err / peak);
    }
    run.check("heat.gaussian_oracle", "heat-kernel", worst, Relation::Below, 1e-2, "t in {0.05 0.1 0.2 0.5}");

    // Mass defect shrinks as the (Dirichlet) box grows.
    std::vector<double> defects;
    for (double half : {2.5, 4.0}) {
      const double dx = env.grid.spacing(0);
      const int count = 2 * static_cast<int>(std::lround(half / dx)) + 1;
      PlanOptions po;
      po.order = env.profile.order;
      po.periodic_free_axes = false;
      const auto p = SpectralPlan::from_operator(env.op, Grid({half}, {count}), env.spec.degree, w, po);
      defects.push_back(mass_defect(heat_kernel(p, 0.5)));
    }
    run.check("heat.mass_box_monotone", "heat-mass", defects[1] / defects[0], Relation::Below, 1,
              "defect(R=4) / defect(R=2.5) at t=0.5");
  }
}

// ---------------------------------------------------------------- potentials

double bessel_oracle_1d(double x) {
  // B_2 = int_0^inf e^{-t} (4 pi t)^{-1/2} e^{-x^2/4t} dt with t = u^2.
  boost::math::quadrature::exp_sinh<double> q;
  const double xx = x * x;
  return q.integrate(
             [xx](double u) {
               const double d = 4 * u * u;
               if (d == 0) return xx == 0 ? 1.0 : 0.0;
               if (!std::isfinite(d)) return 0.0;
               return std::exp(-u * u - xx / d);
             },
             0.0,
                     std::numeric_limits<double>::infinity()) /
         std::sqrt(std::numbers::pi);
}

// Mass of the Euclidean B_a (R = -Laplacian) inside the cell-centred box of g.
double euclidean_bessel_box_mass(const Grid& g, double a) {
  const double theta = a / 2;
  boost::math::quadrature::exp_sinh<double> q;
  const double val = q.integrate(
      [&](double t) {
        if (!(t > 0) || !std::isfinite(t)) return 0.0;
        double box = 1;
        for (std::size_t j = 0; j < g.dim(); ++j) box *= std::erf((g.half_width(j) + g.spacing(j) / 2) / (2 * std::sqrt(t)));
        return std::pow(t, theta - 1) * std::exp(-t) * box;
      },
      0.0, std::numeric_limits<double>::infinity());
  return val / std::tgamma(theta);
}

GridFunction test_function(const Grid& g, std::span<const int> w) {
  return sample(g, [&](std::span<const double> x) {
    double r2 = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double z = x[j] / std::pow(0.6, w[j]);
      r2 += z * z;
    }
    return (1 + 0.3 * x[0]) * std::exp(-r2);
  });
}

// Max relative defect of I(D_r x) / I(x) against r^{a-Q}; I(D_r x) by cubic interpolation.
// Returns the defect and the number of compared nodes.
std::pair<double, std::size_t> riesz_homogeneity_defect(const PotentialKernel& k, std::span<const int> w, int q,
                                                        double r, int margin) {
  const Grid& g = k.values.grid();
  const double expect = std::pow(r, k.a - q);
  const auto inner = interior_mask(g, margin);
  GridFunction v = k.values;
  v[g.origin_index()] = 0;  // the sentinel never enters a reliable stencil, but keep interpolation finite
  double worst = 0;
  std::size_t used = 0;
  std::vector<double> box(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) box[j] = g.half_width(j) - margin * g.spacing(j);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!k.reliable[i] || !inner[i]) continue;
    const auto y = dilate(w, r, g.node(i));
    bool inside = true;
    for (std::size_t j = 0; j < y.size(); ++j) inside = inside && std::abs(y[j]) <= box[j];
    if (!inside) continue;
    ++used;
    worst = std::max(worst, std::abs(interpolate(v, y, 3) / k.values[i] / expect - 1));
  }
  return {used ? worst : INFINITY, used};
}

void potentials_stage(Runner& run, Env& env) {
  const auto& cfg = run.config();
  const auto& plan = env.get_plan(cfg);
  const auto& w = env.alg->weights();
  const int Q = plan.homogeneous_dimension();
  const int nu = plan.degree();

  {
    const double sp = std::sqrt(std::numbers::pi);
    double worst = std::max(std::abs(gamma_function(1) - 1), std::abs(gamma_function(0.5) / sp - 1));
    for (double x : {0.3, 1.7, 4.2, 9.5}) worst = std::max(worst, std::abs(gamma_function(x + 1) / (x * gamma_function(x)) - 1));
    run.check("gamma.identities", "gamma", worst, Relation::Below, 1e-12);
  }

  {
    const bool euclidean = env.alg->is_abelian() && env.profile.op.empty();
    double mass = 0, l1 = 0;
    for (double a : {1.0, 2.0, 3.0}) {
      const auto b = bessel_kernel(plan, a);
      if (euclidean) mass = std::max(mass, std::abs(haar_integrate(b.values) - euclidean_bessel_box_mass(plan.grid(), a)));
      l1 = std::max(l1, lp_norm(b.values, 1));
    }
    if (env.profile.classical_1d) {
      double unit = 0;
      for (double a : {1.0, 2.0, 3.0}) unit = std::max(unit, std::abs(haar_integrate(bessel_kernel(plan, a).values) - 1));
      run.check("bessel.unit_mass", "bessel-integrable", unit, Relation::Below, 1e-2, "a in {1 2 3}");
    }
    if (euclidean)
      run.check("bessel.mass", "bessel-integrable", mass, Relation::Below, 1e-2,
                "a in {1 2 3}, against the exact mass of B_a inside the box");
    run.check("bessel.l1_bound", "bessel-integrable", l1 - 1, Relation::AtMost, 1e-2, "max ||B_a||_1 - 1");
  }

  {
    bool refused = false;
    try {
      riesz_kernel(plan, Q + 0.5);
    } catch (const std::invalid_argument&) {
      refused = true;
    }
    run.holds("riesz.domain", "riesz-kernel", refused, "a = Q + 1/2 rejected");
    const double a = Q == 1 ? 0.5 : Q / 2.0;
    const auto k = riesz_kernel(plan, a);
    bool finite = true;
    for (std::size_t i = 0; i < k.values.size(); ++i)
      if (k.reliable[i] && !std::isfinite(k.values[i])) finite = false;
    run.holds("riesz.finite_away_from_origin", "riesz-kernel", finite);
    const auto [defect, used] = riesz_homogeneity_defect(k, w, Q, 1.5, 2);
    run.check("riesz.homogeneity", "kernel-type", defect, Relation::Below, 2e-2,
              "a = " + fmt(a) + ", D_1.5, " + std::to_string(used) + " nodes");
  }

  {
    const auto f = test_function(plan.grid(), w);
    const double nf = lp_norm(f, 2);
    const auto back = fractional_apply(plan, -nu, fractional_apply(plan, nu, f));
    run.check("fractional.round_trip", "fractional-powers", lp_distance(back, f, 2) / nf, Relation::Below, 1e-8,
              "s = nu then -nu");
    const auto two = fractional_apply(plan, 0.7 * nu, fractional_apply(plan, -0.3 * nu, f));
    const auto one = fractional_apply(plan, 0.4 * nu, f);
    run.check("fractional.power_semigroup", "fractional-powers", lp_distance(two, one, 2) / lp_norm(one, 2),
              Relation::Below, 1e-8);
    DiscretizationOptions dopt{plan.order(), plan.axis_modes()};
    const auto direct = f + apply_diffop(env.op, f, dopt);
    const auto spectral = fractional_apply(plan, nu, f);
    run.check("fractional.integer_power", "fractional-powers", lp_distance(direct, spectral, 2) / lp_norm(direct, 2),
              Relation::Below, 1e-8, "(I+R)f against the direct stencil");
  }

  if (env.profile.classical_1d) {
    const Grid& g = plan.grid();
    const auto b2 = bessel_kernel(plan, 2);
    double err = 0, peak = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.node(i)[0];
      if (std::abs(x) > g.half_width(0) / 2) continue;
      const double o = bessel_oracle_1d(x);
      err = std::max(err, std::abs(b2.values[i] - o));
      peak = std::max(peak, o);
    }
    run.check("bessel.oracle", "bessel-integrable", err / peak, Relation::Below, 2e-2, "B_2 against 1/2 e^{-|x|}");

    const auto b1 = bessel_kernel(plan, 1);
    const auto conv = group_convolve(*env.law, b1.values, b1.values);
    run.check("bessel.semigroup", "bessel-semigroup", lp_distance(conv, b2.values, 1), Relation::Below, 5e-2,
              "||B_1*B_1 - B_2||_1");

    const auto f = test_function(g, w);
    const auto spectral = fractional_apply(plan, -2, f);
    const auto quad = balakrishnan_bessel_apply(plan, 2, f);
    run.check("balakrishnan.bessel", "balakrishnan-bessel", lp_distance(spectral, quad, 2) / lp_norm(spectral, 2),
              Relation::Below, 1e-3, "a = 2");

    // Mean-zero input keeps R^{-a/nu} f finite on the periodic box.
    const auto fz = sample(g, [](std::span<const double> x) { return x[0] * std::exp(-x[0] * x[0]); });
    const auto target = fractional_apply(plan, -1, fz, PowerBase::Bare);
    std::vector<double> gaps;
    for (double big : {10.0, 100.0, 1e4}) {
      const auto r = balakrishnan_riesz_apply(plan, 1, fz, big);
      gaps.push_back(lp_distance(r, target, 2) / lp_norm(target, 2));
    }
    const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
    run.check("balakrishnan.riesz", "balakrishnan-riesz", decreasing ? gaps[2] : INFINITY, Relation::Below, 1e-3,
              "a = 1, N in {10 100 1e4}, gap " + fmt(gaps[0]) + " " + fmt(gaps[1]));

    // Far-field Riesz/Bessel gap as a grows.
    std::vector<char> far(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = std::abs(g.node(i)[0]);
      far[i] = x >= 2 && x <= 4;
    }
    std::vector<double> gap;
    for (double a : {0.25 * Q, 0.5 * Q, 0.75 * Q}) {
      const auto ia = riesz_kernel(plan, a), ba = bessel_kernel(plan, a);
      gap.push_back(lp_distance(ia.values, ba.values, 2, far));
    }
    run.check("riesz.bessel_far_gap_trend", "riesz-kernel", std::min(gap[1] / gap[0], gap[2] / gap[1]),
              Relation::Above, 1, "far-field ||I_a - B_a|| grows with a");
  }

  if (env.profile.newtonian) {
    PlanOptions po;
    po.order = 4;
    po.point_budget = cfg.point_budget;
    const Grid g({1.3, 1.3, 1.3}, {27, 27, 27});
    const auto p = SpectralPlan::from_operator(env.op, g, env.spec.degree, w, po);
    const auto k = riesz_kernel(p, 2);
    double worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = g.node(i);
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      if (r < 0.3 || r > 1) continue;
      worst = std::max(worst, std::abs(k.values[i] * 4 * std::numbers::pi * r - 1));
    }
    run.check("riesz.newtonian", "riesz-kernel", worst, Relation::Below, 3e-2, "0.3 <= |x| <= 1, 27^3");
  }
}

// ---------------------------------------------------------------- sobolev

// sup over family and dilations of ||f||_q / ||(1 + xi^2)^{b/2} f^||_p with the exact symbol (R^1).
double fourier_embedding_sup(const std::vector<GridFunction>& family, double q, double p, double b,
                             const std::vector<double>& dilations, int margin) {
  double sup = 0;
  for (double r : dilations) {
    for (const auto& f0 : family) {
      const Grid g = f0.grid().dilated(std::vector<int>{1}, 1 / r);
      const GridFunction f(g, f0.values());
      const int n = g.count(0);
      std::vector<double> in(f.values());
      std::vector<fftw_complex> spec(n / 2 + 1);
      fftw_plan fw = fftw_plan_dft_r2c_1d(n, in.data(), spec.data(), FFTW_ESTIMATE);
      fftw_execute(fw);
      fftw_destroy_plan(fw);
      const double len = n * g.spacing(0);
      for (int k = 0; k <= n / 2; ++k) {
        const double xi = 2 * std::numbers::pi * k / len;
        const double m = std::pow(1 + xi * xi, b / 2) / n;
        spec[k][0] *= m;
        spec[k][1] *= m;
      }
      std::vector<double> out(n);
      fftw_plan bw = fftw_plan_dft_c2r_1d(n, spec.data(), out.data(), FFTW_ESTIMATE);
      fftw_execute(bw);
      fftw_destroy_plan(bw);
      const auto mask = interior_mask(g, margin);
      const double den = lp_norm(GridFunction(g, out), p, mask);
      sup = std::max(sup, lp_norm(f, q, mask) / den);
    }
  }
  return sup;
}

ProbeRow pinned(Runner& run, Env& env, const std::string& id, const std::string& params, const RatioRange& r) {
  ProbeRow row{id, params, r.min, r.max, std::nullopt, true};
  const auto it = env.baselines.find(run.group() + "/" + id);
  if (it != env.baselines.end()) {
    row.baseline = it->second;
    row.pass = std::abs(r.max - it->second) <= 1e-10 * std::abs(it->second);
  }
  return row;
}

void sobolev_stage(Runner& run, Env& env) {
  const auto& cfg = run.config();
  const auto& plan = env.get_plan(cfg);
  const auto& w = env.alg->weights();
  const int Q = plan.homogeneous_dimension();
  const int nu = plan.degree();
  FamilyOptions fo = env.profile.family;
  fo.seed = cfg.seed;
  const auto family = bump_family(plan.grid(), w, env.profile.family_scale, fo);

  SobolevNormSpec base;
  base.plan = env.plan;
  base.margin = 2;
  base.fields = env.fields;
  base.fd_order = plan.order();

  {
    bool exact = true;
    for (double p : std::vector<double>{1.5, 2.0, INFINITY}) {
      SobolevNormSpec s0 = base;
      s0.p = p;
      for (std::size_t i = 0; i < 5; ++i)
        exact = exact && sobolev_norm(s0, family[i]) == lp_norm(family[i], p, interior_mask(plan.grid(), base.margin));
    }
    run.holds("sobolev.zero_order", "sobolev-norm", exact, "s = 0 is the plain L^p norm");
  }
  {
    SobolevNormSpec a = base, b = base;
    a.s = 0.5 * nu;
    b.s = nu;
    const auto r = equivalence_probe(a, b, family);
    run.check("sobolev.monotone_in_order", "sobolev-inclusion", r.max, Relation::AtMost, 1 + 1e-12,
              "max ||f||_{L^2_{nu/2}} / ||f||_{L^2_nu}");
    SobolevNormSpec h = base;
    h.s = nu;
    h.flavor = NormFlavor::Homogeneous;
    const auto rh = equivalence_probe(h, b, family);
    run.check("sobolev.homogeneous_below_inhomogeneous", "homogeneous-sobolev", rh.max, Relation::AtMost, 1 + 1e-12);
    const auto same = equivalence_probe(b, b, family);
    run.holds("equivalence.identical_specs", "sobolev-equivalent", same.min == 1 && same.max == 1);
  }

  if (env.profile.classical_1d) {
    const Grid& g = plan.grid();
    const auto f = sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2); });
    SobolevNormSpec s2 = base;
    s2.s = 2;
    // ||(1 + xi^2) f^||_2 by Plancherel and 1-D quadrature of the exact transform.
    boost::math::quadrature::exp_sinh<double> qd;
    const double oracle = std::sqrt(
        2 * qd.integrate([](double xi) { return xi > 40 ? 0.0 : std::pow(1 + xi * xi, 2) * std::exp(-xi * xi); }, 0.0,
                         std::numeric_limits<double>::infinity()));
    run.check("sobolev.fourier_oracle", "sobolev-norm", std::abs(sobolev_norm(s2, f) / oracle - 1), Relation::Below,
              1e-2, "Gaussian, s = 2, p = 2");
  }

  if (env.profile.rockland_pair) {
    SobolevNormSpec spectral = base, integer = base;
    spectral.s = integer.s = 2;
    integer.flavor = NormFlavor::IntegerX;
    const auto r1 = equivalence_probe(integer, spectral, family);
    run.check("equivalence.integer_vs_spectral", "integer-order", r1.spread(), Relation::Below, 20, "max/min");
    run.probe(pinned(run, env, "equivalence.integer_vs_spectral", "s=2 p=2", r1));

    PlanOptions po;
    po.order = plan.order();
    po.point_budget = cfg.point_budget;
    const auto sq = power(env.spec, 2);
    auto plan2 = std::make_shared<const SpectralPlan>(
        SpectralPlan::from_operator(normal_form(sq.expr, env.fields), plan.grid(), sq.degree, w, po));
    run.check("equivalence.square_positivity", "spectral-measure",
              plan2->min_eigenvalue() / std::abs(plan2->max_eigenvalue()), Relation::AtLeast, -1e-6);
    SobolevNormSpec other = spectral;
    other.plan = plan2;
    const auto r2 = equivalence_probe(spectral, other, family);
    run.check("equivalence.rockland_independence", "rockland-independence", r2.spread(), Relation::Below, 20,
              "R = -L against R = L^2, s = 2");
    run.probe(pinned(run, env, "equivalence.rockland_independence", "s=2 p=2", r2));

    const auto again1 = equivalence_probe(integer, spectral, family);
    const auto again2 = equivalence_probe(spectral, other, family);
    double drift = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      drift = std::max(drift, std::abs(again1.ratios[i] / r1.ratios[i] - 1));
      drift = std::max(drift, std::abs(again2.ratios[i] / r2.ratios[i] - 1));
    }
    run.check("equivalence.rerun_stability", "sobolev-equivalent", drift, Relation::AtMost, 1e-10);
  }

  {
    SobolevNormSpec e = base;
    if (Q == 1) {
      const auto res = embedding_probe(2, 4, 0, 0.25, e, family);
      run.check("embedding.lq_drift", "embedding", res.drift(), Relation::Below, 2, "(p,q,a,b) = (2,4,0,1/4)");
      const double oracle = fourier_embedding_sup(family, 4, 2, 0.25, kDefaultDilations, base.margin);
      run.check("embedding.lq_fourier_oracle", "embedding", std::abs(res.sup_all / oracle - 1), Relation::Below, 1e-1);
      run.probe(pinned(run, env, "embedding.lq", "p=2 q=4 a=0 b=0.25", {res.sup_undilated, res.sup_all, {}}));
      const auto sup = sup_embedding_probe(2, 1, e, family);
      run.check("embedding.sup_drift", "sup-embedding", sup.drift(), Relation::Below, 2, "(p,s) = (2,1)");
      const double so = fourier_embedding_sup(family, INFINITY, 2, 1, kDefaultDilations, base.margin);
      run.check("embedding.sup_fourier_oracle", "sup-embedding", std::abs(sup.sup_all / so - 1), Relation::Below, 1e-1);
      run.check("embedding.sup_sharp_constant", "sup-embedding", sup.sup_all, Relation::AtMost, std::sqrt(0.5) * 1.01,
                "sharp constant 2^{-1/2}");
      run.probe(pinned(run, env, "embedding.sup", "p=2 s=1", {sup.sup_undilated, sup.sup_all, {}}));
    } else {
      const double b = Q * 0.25;
      const auto res = embedding_probe(2, 4, 0, b, e, family);
      run.check("embedding.lq_drift", "embedding", res.drift(), Relation::Below, 2,
                "(p,q,a,b) = (2,4,0," + fmt(b) + ")");
      run.probe(pinned(run, env, "embedding.lq", "p=2 q=4 a=0 b=" + fmt(b), {res.sup_undilated, res.sup_all, {}}));
      const double s = Q / 2.0 + 1;
      const auto sup = sup_embedding_probe(2, s, e, family);
      run.check("embedding.sup_drift", "sup-embedding", sup.drift(), Relation::Below, 2, "(p,s) = (2," + fmt(s) + ")");
      run.probe(pinned(run, env, "embedding.sup", "p=2 s=" + fmt(s), {sup.sup_undilated, sup.sup_all, {}}));
    }
    bool refused = true;
    auto refuses = [&](auto&& f) {
      try {
        f();
        return false;
      } catch (const ProbeError&) {
        return true;
      }
    };
    const std::vector<GridFunction> one(family.begin(), family.begin() + 1);
    refused = refused && refuses([&] { embedding_probe(2, 2, 0, 0, e, one); });
    refused = refused && refuses([&] { embedding_probe(2, 4, 0, Q * 0.25 + 0.1, e, one); });
    refused = refused && refuses([&] { sup_embedding_probe(2, Q / 2.0, e, one); });
    run.holds("embedding.refusals", "embedding", refused, "p = q, off-relation and s = Q/p");
  }

  {
    SobolevNormSpec s = base;
    s.s = 0.5 * nu;
    run.check("interpolation.inequality", "interpolation", interpolation_inequality_excess(plan, 0.5 * nu, 1.5 * nu, family),
              Relation::AtMost, 1e-8, "a = nu/2, b = 3nu/2");
    run.check("duality.symmetric_powers", "sobolev-norm", duality_defect(plan, 0.5 * nu, family), Relation::AtMost, 1e-8);
  }

  {
    // Bump multiplication with a smooth plateau supported inside the box.
    const Grid& g = plan.grid();
    const auto phi = sample(g, [&](std::span<const double> x) {
      double r = 0;
      for (std::size_t j = 0; j < x.size(); ++j) r = std::max(r, std::abs(x[j]) / (0.6 * g.half_width(j)));
      if (r >= 1) return 0.0;
      if (r <= 0.5) return 1.0;
      const double u = (r - 0.5) / 0.5;
      return std::exp(1 - 1 / (1 - u * u));
    });
    const auto ones = sample(g, [](std::span<const double>) { return 1.0; });
    SobolevNormSpec s = base;
    s.s = nu;
    const auto unit = bump_multiplication_probe(ones, s, family);
    run.holds("bump.identity_multiplier", "bump-multiplication", unit.min == 1 && unit.max == 1);
    const auto r = bump_multiplication_probe(phi, s, family);
    run.check("bump.finite", "bump-multiplication", r.max, Relation::Below, INFINITY, "s = nu, p = 2");
    run.probe(pinned(run, env, "bump.multiplication", "s=nu p=2", r));
    SobolevNormSpec s0 = base;
    const auto r0 = bump_multiplication_probe(phi, s0, family);
    run.check("bump.order_zero", "bump-multiplication", r0.max - lp_norm(phi, INFINITY), Relation::AtMost, 1e-8);
  }

  if (w.size() > 1) {
    // X_1 X_2 has degree w_1 + w_2; (I+R)^{-[alpha]/nu} X^alpha is of type 0.
    DiffOpExpr e(w.size());
    e.add_term(1, {0, 1});
    const auto r = type_zero_probe(plan, normal_form(e, env.fields), w[0] + w[1], plan.order(), family);
    const auto row = pinned(run, env, "type_zero.x1x2", "alpha = X1 X2", r);
    run.check("type_zero.bounded", "type-zero", r.max, Relation::AtMost,
              row.baseline ? *row.baseline * (1 + 1e-10) : INFINITY, row.baseline ? "frozen baseline" : "no baseline");
    run.probe(row);
  }
}

// ---------------------------------------------------------------- sharpness

void sharpness_stage(Runner& run, Env& env) {
  const auto& cfg = run.config();
  const auto& plan = env.get_plan(cfg);
  const auto& lb = env.alg->labels();
  const Grid& g = plan.grid();
  const auto f = sample(g, [&](std::span<const double> x) {
    double r2 = 0;
    for (std::size_t j = 0; j < x.size(); ++j) r2 += std::pow(x[j] / (0.3 * g.half_width(j)), 2);
    return std::exp(-r2);
  });
  SobolevNormSpec base;
  base.plan = env.plan;
  base.margin = 3;
  base.fd_order = plan.order();
  const auto num = normal_form(parse_expr(lb[0] + "^2 + " + lb[1] + "^2", lb), env.fields);
  const std::vector<double> orders{6, 8, 10}, dil{1, 2, 4};
  const auto t = sharpness_probe(base, num, f, orders, dil);
  auto column = [&](int i) { return t.ratio[static_cast<std::size_t>(i)]; };
  const auto c10 = column(2);
  const double hi = *std::max_element(c10.begin(), c10.end()), lo = *std::min_element(c10.begin(), c10.end());
  run.check("sharpness.s10_bounded", "sharpness", hi / lo, Relation::Below, 5, "max/min over r in {1 2 4}");
  {
    // r = 1 entries against a direct evaluation on the undilated grid.
    const double numer = lp_norm(apply_diffop(num, f, {plan.order(), {}}), 2, interior_mask(g, base.margin));
    double worst = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      SobolevNormSpec s = base;
      s.s = orders[i];
      worst = std::max(worst, std::abs(t.ratio[i][0] / (numer / sobolev_norm(s, f)) - 1));
    }
    run.check("sharpness.undilated_row", "sharpness", worst, Relation::Below, 1e-12);
  }
  for (int i : {0, 1}) {
    const auto c = column(i);
    const double growth = std::min(c[1] / c[0], c[2] / c[1]);
    run.check("sharpness.s" + fmt(orders[i]) + "_increasing", "sharpness", growth, Relation::Above, 1,
              "min successive ratio");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto& c = t.ratio[i];
    RatioRange r{*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end()), c};
    run.probe(pinned(run, env, "sharpness.s" + fmt(orders[i]), "r in {1 2 4}", r));
  }
}

Profile builtin_profile(const std::string& name) {
  Profile p;
  p.name = name;
  if (name == "abelian1") {
    p.half_widths = {10};
    p.counts = {401};
    p.order = 4;
    p.classical_1d = true;
    p.family_scale = 5;
  } else if (name == "abelian3") {
    p.half_widths = {2.6, 2.6, 2.6};
    p.counts = {27, 27, 27};
    p.order = 8;
    p.newtonian = true;
    p.sobolev = false;
    p.geometry = false;
  } else if (name == "heisenberg") {
    p.half_widths = {2.4, 2.4, 0.7};
    p.counts = {23, 23, 37};
    p.order = 12;
    p.rockland_pair = true;
    p.family_scale = 2;
    p.family.center_fraction = 0.05;
    p.family.width_min = 0.17;
    p.family.width_max = 0.25;
  } else if (name == "heisenberg358") {
    p.op = "-X^10 - Y^6";
    p.half_widths = {1, 1, 1};
    p.counts = {17, 17, 41};
    p.order = 4;
    p.heat = p.potentials = p.sobolev = false;
    p.sharpness = true;
  } else if (name == "engel") {
    p.half_widths = {2, 2, 4, 8};
    p.counts = {11, 11, 11, 11};
    p.heat = p.potentials = p.sobolev = false;
  }
  return p;
}

}  // namespace

Profile resolve_profile(const GradedLieAlgebra& alg, const std::string& name, const RunConfig& cfg) {
  Profile p;
  const std::size_t n = alg.dim();
  if (name != "custom") {
    p = builtin_profile(name);
  } else {
    p.name = "custom";
    int count = 3;
    while (std::pow(count + 2, n) <= static_cast<double>(cfg.point_budget) && count + 2 <= 41) count += 2;
    p.counts.assign(n, count);
    for (int w : alg.weights()) p.half_widths.push_back(std::pow(2.0, w));
    p.family_scale = 2;
  }
  if (!cfg.op.empty()) p.op = cfg.op;
  if (cfg.scale) {
    p.half_widths.clear();
    for (int w : alg.weights()) p.half_widths.push_back(std::pow(*cfg.scale, w));
    if (p.family_scale > 0) p.family_scale = *cfg.scale;
  }
  if (!cfg.points.empty()) {
    if (cfg.points.size() == 1) p.counts.assign(n, cfg.points[0]);
    else if (cfg.points.size() == n) p.counts = cfg.points;
    else throw ConfigError("--points needs 1 or " + std::to_string(n) + " entries");
  }
  return p;
}

namespace {

RocklandSpec default_operator(const GradedLieAlgebra& alg, const Profile& p) {
  if (!p.op.empty()) return custom_operator(alg, p.op);
  if (alg.is_stratified()) return sublaplacian(alg);
  return build_rockland_example(alg, lcm_of(alg.weights()));
}

VerificationReport verify_one(const RunConfig& cfg, bool full, Clock::time_point start) {
  cfg.validate();
  VerificationReport rep;
  const auto path = resolve_group_path(cfg.group);
  Env env;
  env.alg = std::make_shared<const GradedLieAlgebra>(load_group(path));
  const std::string name = profile_name(cfg.group);
  const std::string group = name == "custom" ? path.stem().string() : name;
  Runner run(cfg, rep, group, start);
  env.profile = resolve_profile(*env.alg, name, cfg);

  run.stage("algebra", "gradation", [&] { algebra_stage(run, env); });
  rep.environment.push_back({group + " group", path.filename().string() + " weights " + join(env.alg->weights(), ",")});
  if (!full || !env.law) return rep;

  env.fields = left_invariant_fields(*env.law);
  const bool defaults = cfg.seed == kDefaultSeed && cfg.op.empty() && !cfg.scale && cfg.points.empty() &&
                        cfg.times.empty() && cfg.point_budget == kDefaultPointBudget;
  if (defaults) env.baselines = load_baselines(default_baselines_path());
  env.grid = Grid(env.profile.half_widths, env.profile.counts);
  try {
    env.grid.check_budget(cfg.point_budget);
  } catch (const BudgetExceeded& e) {
    rep.partial = true;
    rep.partial_reason = group + ": " + e.what();
    return rep;
  }
  try {
    env.spec = default_operator(*env.alg, env.profile);
    env.op = normal_form(env.spec.expr, env.fields);
  } catch (const std::exception& e) {
    run.holds("setup.completed", "gradation", false, e.what());
    return rep;
  }
  rep.environment.push_back({group + " operator", env.spec.expr.to_string(env.alg->labels()) + " (degree " +
                                                      std::to_string(env.spec.degree) + ")"});
  rep.environment.push_back({group + " grid", "half-widths " + join(env.profile.half_widths) + ", nodes " +
                                                  join(env.profile.counts) + ", stencil order " +
                                                  std::to_string(env.profile.order)});

  if (env.profile.geometry) run.stage("geometry", "pseudo-norm-example", [&] { geometry_stage(run, env); });
  if (env.profile.heat) run.stage("heat", "heat-kernel", [&] { heat_stage(run, env); });
  if (env.profile.potentials) run.stage("potentials", "riesz-kernel", [&] { potentials_stage(run, env); });
  if (env.profile.sobolev) run.stage("sobolev", "sobolev-norm", [&] { sobolev_stage(run, env); });
  if (env.profile.sharpness) run.stage("sharpness", "sharpness", [&] { sharpness_stage(run, env); });
  if (env.plan) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", env.plan->symmetrization_defect());
    rep.environment.push_back({group + " symmetrization defect", buf});
  }
  return rep;
}

void add_common_environment(VerificationReport& rep, const RunConfig& cfg) {
  char seed[32];
  std::snprintf(seed, sizeof seed, "0x%llX", static_cast<unsigned long long>(cfg.seed));
  rep.environment.insert(rep.environment.begin(), {{"version", version_string()},
                                                   {"seed", seed},
                                                   {"tol-scale", fmt(cfg.tol_scale)}});
}

}  // namespace

const SpectralPlan& Workspace::plan() { return *plan_ptr(); }

std::shared_ptr<const SpectralPlan> Workspace::plan_ptr() {
  if (!plan_) {
    PlanOptions po;
    po.order = profile.order;
    po.point_budget = budget_;
    plan_ = std::make_shared<const SpectralPlan>(SpectralPlan::from_operator(op, grid, spec.degree, alg->weights(), po));
  }
  return plan_;
}

Workspace prepare_workspace(const RunConfig& cfg) {
  cfg.validate();
  Workspace ws;
  const auto path = resolve_group_path(cfg.group);
  ws.alg = std::make_shared<const GradedLieAlgebra>(load_group(path));
  const std::string name = profile_name(cfg.group);
  ws.group = name == "custom" ? path.stem().string() : name;
  const auto v = validate_algebra(*ws.alg);
  if (!v.ok()) throw ConfigError(cfg.group + " is not a valid graded Lie algebra (" + v.violations.front().kind + ")");
  ws.law = std::make_shared<const GroupLaw>(bch_group_law(ws.alg));
  ws.fields = left_invariant_fields(*ws.law);
  ws.profile = resolve_profile(*ws.alg, name, cfg);
  ws.spec = default_operator(*ws.alg, ws.profile);
  ws.op = normal_form(ws.spec.expr, ws.fields);
  ws.grid = Grid(ws.profile.half_widths, ws.profile.counts);
  ws.grid.check_budget(cfg.point_budget);
  ws.budget_ = cfg.point_budget;
  return ws;
}

VerificationReport run_group_check(const RunConfig& cfg) {
  auto rep = verify_one(cfg, false, Clock::now());
  add_common_environment(rep, cfg);
  return rep;
}

VerificationReport run_verify(const RunConfig& cfg) {
  auto rep = verify_one(cfg, true, Clock::now());
  add_common_environment(rep, cfg);
  return rep;
}

VerificationReport run_default_suite(const RunConfig& cfg) {
  VerificationReport all;
  const auto start = Clock::now();
  for (const auto& g : builtin_groups()) {
    RunConfig c = cfg;
    c.group = g;
    all.merge(verify_one(c, true, start));
  }
  add_common_environment(all, cfg);
  return all;
}

}  // namespace gradecalc

#include "gradecalc/potentials.hpp"

#include "gradecalc/geometry.hpp"
#include "gradecalc/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>

namespace gradecalc {

double gamma_function(double x) { return std::tgamma(x); }

namespace {

template <int N>
void gauss_rule(std::vector<double>& x, std::vector<double>& w) {
  using Q = boost::math::quadrature::gauss<double, N>;
  const auto& a = Q::abscissa();
  const auto& b = Q::weights();
  x.clear();
  w.clear();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      x.push_back(0);
      w.push_back(b[i]);
      continue;
    }
    x.push_back(-a[i]);
    w.push_back(b[i]);
    x.push_back(a[i]);
    w.push_back(b[i]);
  }
}

// Gauss-Legendre nodes on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  switch (n) {
    case 4: gauss_rule<4>(x, w); break;
    case 8: gauss_rule<8>(x, w); break;
    case 16: gauss_rule<16>(x, w); break;
    case 24: gauss_rule<24>(x, w); break;
    case 48: gauss_rule<48>(x, w); break;
    default: throw std::invalid_argument("supported Gauss-Legendre sizes are 4, 8, 16, 24, 48");
  }
}

struct Geometry {
  int q;
  int nu;
};

Geometry geometry(const SpectralPlan& plan) { return {plan.homogeneous_dimension(), plan.degree()}; }

double default_floor(const SpectralPlan& plan) {
  double hmin = std::numeric_limits<double>::infinity();
  for (double h : plan.grid().spacings()) hmin = std::min(hmin, h);
  return 1e-4 * std::pow(hmin, plan.degree());
}

std::vector<char> exclusion_mask(const Grid& g, int steps) {
  std::vector<char> m(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto idx = g.multi_index(i);
    bool near = true;
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (std::abs(idx[j] - (g.count(j) - 1) / 2) > steps) near = false;
    m[i] = near ? 0 : 1;
  }
  return m;
}

// Largest probe time whose kernel stays contained.
double containment_time(const SpectralPlan& plan, double t_floor, const LadderOptions& opts) {
  std::vector<double> probes;
  for (double t = t_floor; t <= opts.t_cap * (1 + 1e-12); t *= std::exp(0.25)) probes.push_back(t);
  if (probes.empty()) probes.push_back(t_floor);
  auto fam = heat_kernel_family(plan, probes);
  double best = probes.front();
  for (std::size_t k = 0; k < probes.size(); ++k) {
    if (boundary_mass_fraction(fam.kernels[k], opts.containment_layer) > opts.containment_tolerance) break;
    best = probes[k];
  }
  return best;
}

PotentialKernel ladder_kernel(const SpectralPlan& plan, double a, bool damped, const LadderOptions& opts) {
  const auto [q, nu] = geometry(plan);
  const double theta = a / nu;
  const double gamma = gamma_function(theta);
  PotentialKernel k;
  k.a = a;
  k.t_floor = opts.t_floor > 0 ? opts.t_floor : default_floor(plan);
  const double T = containment_time(plan, k.t_floor, opts);
  k.containment_time = T;

  // Discrete part: the ladder sum folded into one spectral multiplier.
  auto quad = log_time_quadrature(k.t_floor, T, opts.panel_width, opts.points_per_panel);
  k.ladder_nodes = quad.nodes.size();
  auto ladder = [&](double l) {
    double s = 0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
      const double t = quad.nodes[i];
      s += quad.weights[i] * std::pow(t, theta - 1) * std::exp(-t * (l + (damped ? 1.0 : 0.0)));
    }
    return s / gamma;
  };
  const Grid& g = plan.grid();
  GridFunction d(g);
  d[g.origin_index()] = 1.0 / g.cell_volume();
  GridFunction discrete = plan.apply(ladder, d);
  GridFunction hT = heat_kernel(plan, T);

  // Self-similar tail beyond T.
  const auto& w = plan.weights();
  std::vector<double> us, uw;  // dilation factors u and weights multiplying h_T(D_u x)
  if (!damped) {
    // nu T^theta int_0^1 u^{Q-a-1} h_T(D_u x) du, u = v^{1/(Q-a)}.
    std::vector<double> x, wt;
    gauss_legendre(opts.tail_points, x, wt);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = 0.5 * (x[i] + 1);
      us.push_back(std::pow(v, 1.0 / (q - a)));
      uw.push_back(0.5 * wt[i] * nu * std::pow(T, theta) / (q - a) / gamma);
    }
  } else {
    // int_T^inf t^{theta-1} e^{-t} (T/t)^{Q/nu} h_T(D_{(T/t)^{1/nu}} x) dt in log t.
    auto tq = log_time_quadrature(T, T + 60.0, opts.panel_width, opts.points_per_panel);
    for (std::size_t i = 0; i < tq.nodes.size(); ++i) {
      const double t = tq.nodes[i];
      const double u = std::pow(T / t, 1.0 / nu);
      us.push_back(u);
      uw.push_back(tq.weights[i] * std::pow(t, theta - 1) * std::exp(-t) * std::pow(T / t, double(q) / nu) / gamma);
    }
  }
  GridFunction tail(g);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> x(g.dim());
    for (std::size_t i = b; i < e; ++i) {
      g.node(i, x.data());
      double s = 0;
      for (std::size_t m = 0; m < us.size(); ++m) {
        if (uw[m] == 0) continue;
        s += uw[m] * interpolate(hT, dilate(w, us[m], x), 3);
      }
      tail[i] = s;
    }
  });
  k.values = discrete + tail;
  k.reliable = exclusion_mask(g, opts.exclusion_steps);
  if (!damped) k.values[g.origin_index()] = std::numeric_limits<double>::quiet_NaN();
  return k;
}

}  // namespace

TimeQuadrature log_time_quadrature(double t_lo, double t_hi, double panel_width, int points_per_panel) {
  if (!(t_lo > 0) || !(t_hi >= t_lo)) throw std::invalid_argument("time range must satisfy 0 < t_lo <= t_hi");
  TimeQuadrature tq;
  if (t_hi == t_lo) return tq;
  const double s0 = std::log(t_lo), s1 = std::log(t_hi);
  const int panels = std::max(1, static_cast<int>(std::ceil((s1 - s0) / panel_width - 1e-9)));
  const double h = (s1 - s0) / panels;
  std::vector<double> x, w;
  gauss_legendre(points_per_panel, x, w);
  for (int p = 0; p < panels; ++p) {
    const double a = s0 + p * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = a + 0.5 * h * (x[i] + 1);
      const double t = std::exp(s);
      tq.nodes.push_back(t);
      tq.weights.push_back(0.5 * h * w[i] * t);
    }
  }
  return tq;
}

PotentialKernel riesz_kernel(const SpectralPlan& plan, double a, const LadderOptions& opts) {
  const int q = plan.homogeneous_dimension();
  if (!(a > 0 && a < q))
    throw std::invalid_argument("Riesz exponent must satisfy 0 < a < Q = " + std::to_string(q));
  return ladder_kernel(plan, a, false, opts);
}

PotentialKernel bessel_kernel(const SpectralPlan& plan, double a, const LadderOptions& opts) {
  if (!(a > 0)) throw std::invalid_argument("Bessel exponent must be positive");
  return ladder_kernel(plan, a, true, opts);
}

GridFunction fractional_apply(const SpectralPlan& plan, double s, const GridFunction& f, PowerBase base,
                              double zero_threshold) {
  const double tol = 1e-6 * std::abs(plan.max_eigenvalue());
  if (plan.min_eigenvalue() < -tol)
    throw NegativeSpectrum("operator has an eigenvalue " + std::to_string(plan.min_eigenvalue()) +
                           " below the positivity tolerance");
  const double e = s / plan.degree();
  if (base == PowerBase::OnePlus)
    return plan.apply([e](double l) { return std::pow(1 + std::max(l, 0.0), e); }, f);
  const double cut = zero_threshold * std::abs(plan.max_eigenvalue());
  return plan.apply(
      [e, cut](double l) {
        if (l <= cut) return e == 0 ? 1.0 : (e > 0 ? std::pow(std::max(l, 0.0), e) : 0.0);
        return std::pow(l, e);
      },
      f);
}

namespace {

GridFunction heat_quadrature(const SpectralPlan& plan, const GridFunction& f, double theta, bool damped, double t_lo,
                             double t_hi) {
  auto tq = log_time_quadrature(t_lo, t_hi, 0.5, 16);
  std::vector<std::function<double(double)>> gs;
  for (double t : tq.nodes) gs.push_back([t](double l) { return std::exp(-t * l); });
  auto heat = plan.apply_many(gs, f);
  const double gamma = gamma_function(theta);
  // Head [0, t_lo] with e^{-tR} ~ I: int_0^{t_lo} t^{theta-1} dt = t_lo^theta / theta.
  GridFunction out = (std::pow(t_lo, theta) / (theta * gamma)) * f;
  for (std::size_t i = 0; i < tq.nodes.size(); ++i) {
    const double t = tq.nodes[i];
    const double c = tq.weights[i] * std::pow(t, theta - 1) * (damped ? std::exp(-t) : 1.0) / gamma;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * heat[i][k];
  }
  return out;
}

}  // namespace

GridFunction balakrishnan_bessel_apply(const SpectralPlan& plan, double a, const GridFunction& f, double t_lo,
                                       double t_hi) {
  if (!(a > 0)) throw std::invalid_argument("exponent must be positive");
  return heat_quadrature(plan, f, a / plan.degree(), true, t_lo, t_hi);
}

GridFunction balakrishnan_riesz_apply(const SpectralPlan& plan, double a, const GridFunction& f, double t_hi,
                                      double t_lo) {
  const double theta = a / plan.degree();
  if (!(theta > 0 && theta < 1)) throw std::invalid_argument("need 0 < a/nu < 1");
  return heat_quadrature(plan, f, theta, false, t_lo, t_hi);
}

}  // namespace gradecalc

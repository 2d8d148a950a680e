#include "gradecalc/sobolev.hpp"

#include "gradecalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gradecalc {

NormFlavor parse_flavor(const std::string& name) {
  if (name == "spectral" || name == "inhomogeneous") return NormFlavor::Inhomogeneous;
  if (name == "homogeneous") return NormFlavor::Homogeneous;
  if (name == "integer") return NormFlavor::IntegerX;
  throw FlavorError("unknown norm flavor '" + name + "' (spectral, homogeneous, integer)");
}

std::string to_string(NormFlavor f) {
  switch (f) {
    case NormFlavor::Inhomogeneous: return "spectral";
    case NormFlavor::Homogeneous: return "homogeneous";
    case NormFlavor::IntegerX: return "integer";
  }
  return "spectral";
}

SobolevNormSpec SobolevNormSpec::dilated(double r) const {
  SobolevNormSpec d(*this);
  d.plan = std::make_shared<const SpectralPlan>(plan->rescaled(1 / r));
  return d;
}

std::vector<std::vector<int>> homogeneous_multi_indices(std::span<const int> weights, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(weights.size(), 0);
  auto rec = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j == weights.size()) {
      if (remaining == 0) out.push_back(alpha);
      return;
    }
    for (int k = 0; k * weights[j] <= remaining; ++k) {
      alpha[j] = k;
      self(self, j + 1, remaining - k * weights[j]);
    }
    alpha[j] = 0;
  };
  rec(rec, 0, order);
  return out;
}

namespace {

GridFunction on_grid(const Grid& g, const GridFunction& f) {
  if (f.grid() == g) return f;
  if (f.grid().counts() != g.counts()) throw std::invalid_argument("function does not match the plan grid");
  return GridFunction(g, f.values());
}

}  // namespace

double sobolev_norm(const SobolevNormSpec& spec, const GridFunction& f0) {
  if (!spec.plan) throw std::invalid_argument("norm spec has no plan");
  const SpectralPlan& plan = *spec.plan;
  const GridFunction f = on_grid(plan.grid(), f0);
  const auto mask = interior_mask(plan.grid(), spec.margin);
  switch (spec.flavor) {
    case NormFlavor::Inhomogeneous:
      if (spec.s == 0) return lp_norm(f, spec.p, mask);
      return lp_norm(fractional_apply(plan, spec.s, f, PowerBase::OnePlus), spec.p, mask);
    case NormFlavor::Homogeneous:
      if (spec.s == 0) return lp_norm(f, spec.p, mask);
      return lp_norm(fractional_apply(plan, spec.s, f, PowerBase::Bare), spec.p, mask);
    case NormFlavor::IntegerX: {
      const int nu = plan.degree();
      const double ell = spec.s / nu;
      if (spec.s < 0 || std::abs(ell - std::round(ell)) > 1e-12)
        throw FlavorError("integer flavor needs s to be a nonnegative multiple of nu = " + std::to_string(nu));
      if (spec.fields.size() != plan.grid().dim()) throw FlavorError("integer flavor needs the left-invariant fields");
      double total = lp_norm(f, spec.p, mask);
      if (spec.s == 0) return total;
      const std::size_t n = spec.fields.size();
      DiscretizationOptions dopt{spec.fd_order, {}};
      for (const auto& alpha : homogeneous_multi_indices(plan.weights(), static_cast<int>(std::lround(spec.s)))) {
        std::vector<int> word;
        for (std::size_t j = 0; j < n; ++j) word.insert(word.end(), alpha[j], static_cast<int>(j));
        DiffOpExpr e(n);
        e.add_term(1, word);
        total += lp_norm(apply_diffop(normal_form(e, spec.fields), f, dopt), spec.p, mask);
      }
      return total;
    }
  }
  return 0;
}

std::vector<GridFunction> bump_family(const Grid& g, std::span<const int> weights, double scale,
                                      const FamilyOptions& opts) {
  const std::size_t n = g.dim();
  // Per member: n centre coordinates, width, n modulation coefficients, cross coefficient.
  const std::size_t dim = 2 * n + 2;
  auto pts = quasi_random_points(dim, opts.count, opts.seed);
  std::vector<GridFunction> fam;
  fam.reserve(opts.count);
  for (const auto& u : pts) {
    std::vector<double> c(n), a(n), sc(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = (2 * u[j] - 1) * opts.center_fraction * std::pow(scale, weights[j]);
    const double w = opts.width_min + (opts.width_max - opts.width_min) * u[n];
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = (2 * u[n + 1 + j] - 1) * opts.modulation;
      sc[j] = std::pow(w * scale, weights[j]);
    }
    const double cross = (2 * u[2 * n + 1] - 1) * opts.modulation;
    fam.push_back(sample(g, [&](std::span<const double> x) {
      double r2 = 0, poly = 1;
      std::vector<double> z(n);
      for (std::size_t j = 0; j < n; ++j) {
        z[j] = (x[j] - c[j]) / sc[j];
        r2 += z[j] * z[j];
        poly += a[j] * z[j];
      }
      poly += cross * z[0] * z[n - 1];
      return poly * std::exp(-r2);
    }));
  }
  return fam;
}

RatioRange equivalence_probe(const SobolevNormSpec& a, const SobolevNormSpec& b,
                             const std::vector<GridFunction>& family) {
  RatioRange r{INFINITY, 0, {}};
  for (const auto& f : family) {
    const double na = sobolev_norm(a, f), nb = sobolev_norm(b, f);
    if (na == 0 || nb == 0) throw ProbeError("family member with zero norm");
    const double q = na / nb;
    r.ratios.push_back(q);
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
  }
  return r;
}

namespace {

EmbeddingResult sup_over(const SobolevNormSpec& num, const SobolevNormSpec& den, const std::vector<GridFunction>& family,
                         const std::vector<double>& dilations) {
  EmbeddingResult out;
  for (double r : dilations) {
    const SobolevNormSpec nr = r == 1 ? num : num.dilated(r);
    const SobolevNormSpec dr = r == 1 ? den : den.dilated(r);
    double sup = 0;
    for (const auto& f : family) {
      const double d = sobolev_norm(dr, f);
      if (d == 0) throw ProbeError("family member with zero norm");
      sup = std::max(sup, sobolev_norm(nr, f) / d);
    }
    out.sup_per_dilation.push_back(sup);
    out.sup_all = std::max(out.sup_all, sup);
    if (r == 1) out.sup_undilated = sup;
  }
  if (std::find(dilations.begin(), dilations.end(), 1.0) == dilations.end())
    throw ProbeError("dilation list must contain r = 1");
  return out;
}

}  // namespace

EmbeddingResult embedding_probe(double p, double q, double a, double b, const SobolevNormSpec& base,
                                const std::vector<GridFunction>& family, const std::vector<double>& dilations) {
  if (!(p > 1) || !(q > p) || std::isinf(q)) throw ProbeError("embedding probe needs 1 < p < q < inf");
  const int Q = base.plan->homogeneous_dimension();
  const double rel = Q * (1 / p - 1 / q);
  if (std::abs(b - a - rel) > 1e-12)
    throw ProbeError("exponents violate b - a = Q (1/p - 1/q) = " + std::to_string(rel));
  SobolevNormSpec num = base, den = base;
  num.flavor = den.flavor = NormFlavor::Inhomogeneous;
  num.p = q;
  num.s = a;
  den.p = p;
  den.s = b;
  return sup_over(num, den, family, dilations);
}

EmbeddingResult sup_embedding_probe(double p, double s, const SobolevNormSpec& base,
                                    const std::vector<GridFunction>& family, const std::vector<double>& dilations) {
  const int Q = base.plan->homogeneous_dimension();
  if (!(p > 1)) throw ProbeError("sup embedding probe needs p > 1");
  if (!(s > Q / p)) throw ProbeError("sup embedding probe needs s > Q/p = " + std::to_string(Q / p));
  SobolevNormSpec num = base, den = base;
  num.flavor = den.flavor = NormFlavor::Inhomogeneous;
  num.p = INFINITY;
  num.s = 0;
  den.p = p;
  den.s = s;
  return sup_over(num, den, family, dilations);
}

SharpnessTable sharpness_probe(const SobolevNormSpec& base, const PolyDiffOp& numerator_op, const GridFunction& f,
                               const std::vector<double>& orders, const std::vector<double>& dilations) {
  SharpnessTable t{orders, dilations, {}};
  t.ratio.assign(orders.size(), std::vector<double>(dilations.size()));
  for (std::size_t k = 0; k < dilations.size(); ++k) {
    const SobolevNormSpec dspec = base.dilated(dilations[k]);
    const GridFunction fr(dspec.plan->grid(), f.values());
    const auto mask = interior_mask(fr.grid(), base.margin);
    const double num = lp_norm(apply_diffop(numerator_op, fr, {base.fd_order, {}}), 2, mask);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      SobolevNormSpec s = dspec;
      s.p = 2;
      s.s = orders[i];
      s.flavor = NormFlavor::Inhomogeneous;
      t.ratio[i][k] = num / sobolev_norm(s, fr);
    }
  }
  return t;
}

RatioRange bump_multiplication_probe(const GridFunction& phi, const SobolevNormSpec& spec,
                                     const std::vector<GridFunction>& family) {
  RatioRange r{INFINITY, 0, {}};
  for (const auto& f : family) {
    const double q = sobolev_norm(spec, pointwise_product(phi, f)) / sobolev_norm(spec, f);
    r.ratios.push_back(q);
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
  }
  return r;
}

double interpolation_inequality_excess(const SpectralPlan& plan, double a, double b,
                                       const std::vector<GridFunction>& family) {
  if (!(a > 0 && b > a)) throw std::invalid_argument("need 0 < a < b");
  double worst = -INFINITY;
  for (const auto& f : family) {
    const double lhs = lp_norm(fractional_apply(plan, a, f), 2);
    const double rhs = std::pow(lp_norm(f, 2), 1 - a / b) * std::pow(lp_norm(fractional_apply(plan, b, f), 2), a / b);
    worst = std::max(worst, lhs / rhs - 1);
  }
  return worst;
}

double duality_defect(const SpectralPlan& plan, double s, const std::vector<GridFunction>& family) {
  double worst = 0;
  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    const auto& f = family[i];
    const auto& g = family[i + 1];
    const GridFunction af = fractional_apply(plan, s, f), ag = fractional_apply(plan, s, g);
    const double d = std::abs(inner_product(af, g) - inner_product(f, ag));
    worst = std::max(worst, d / (lp_norm(af, 2) * lp_norm(g, 2)));
  }
  return worst;
}

RatioRange type_zero_probe(const SpectralPlan& plan, const PolyDiffOp& x_alpha, double degree, int fd_order,
                           const std::vector<GridFunction>& family) {
  RatioRange r{INFINITY, 0, {}};
  for (const auto& f : family) {
    const GridFunction xf = apply_diffop(x_alpha, f, {fd_order, {}});
    const double q = lp_norm(fractional_apply(plan, -degree, xf), 2) / lp_norm(f, 2);
    r.ratios.push_back(q);
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
  }
  return r;
}

}  // namespace gradecalc

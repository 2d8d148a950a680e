#include "gradecalc/heatflow.hpp"

#include "gradecalc/geometry.hpp"
#include "gradecalc/parallel.hpp"

#include <cmath>

namespace gradecalc {

GridFunction heat_apply(const SpectralPlan& plan, const GridFunction& f, double t) {
  if (t < 0) throw std::invalid_argument("heat time must be nonnegative");
  if (t == 0) return f;
  return plan.apply([t](double l) { return std::exp(-t * l); }, f);
}

namespace {

GridFunction delta(const Grid& g) {
  GridFunction d(g);
  d[g.origin_index()] = 1.0 / g.cell_volume();
  return d;
}

}  // namespace

GridFunction heat_kernel(const SpectralPlan& plan, double t) {
  if (!(t > 0)) throw std::invalid_argument("heat kernel time must be positive");
  return heat_apply(plan, delta(plan.grid()), t);
}

HeatKernelFamily heat_kernel_family(const SpectralPlan& plan, const std::vector<double>& times) {
  std::vector<std::function<double(double)>> gs;
  for (double t : times) {
    if (!(t > 0)) throw std::invalid_argument("heat kernel time must be positive");
    gs.push_back([t](double l) { return std::exp(-t * l); });
  }
  return {times, plan.apply_many(gs, delta(plan.grid()))};
}

double smallest_usable_time(const SpectralPlan& plan) {
  return std::pow(3 * plan.grid().max_spacing(), plan.degree());
}

double mass_defect(const GridFunction& h) { return std::abs(haar_integrate(h) - 1); }

double symmetry_defect(const GridFunction& h) {
  const double m = lp_norm(h, INFINITY);
  return m == 0 ? 0.0 : lp_norm(h - reflect(h), INFINITY) / m;
}

double semigroup_defect(const GroupLaw& law, const GridFunction& ht, const GridFunction& hs,
                        const GridFunction& hts, double relative_cutoff) {
  ConvolutionOptions opts;
  opts.relative_cutoff = relative_cutoff;
  return lp_norm(group_convolve(law, ht, hs, opts) - hts, 1);
}

double self_similarity_defect(const GridFunction& ht, double t, const GridFunction& href, double ref,
                              std::span<const int> weights, int degree) {
  const Grid& g = ht.grid();
  int q = 0;
  for (int w : weights) q += w;
  const double ratio = ref / t;
  const double amp = std::pow(ratio, static_cast<double>(q) / degree);
  const double r = std::pow(ratio, 1.0 / degree);
  GridFunction pred(g);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> x(g.dim());
    for (std::size_t i = b; i < e; ++i) {
      g.node(i, x.data());
      pred[i] = amp * interpolate(href, dilate(weights, r, x), 3);
    }
  });
  const double base = lp_norm(ht, 1);
  return base == 0 ? 0.0 : lp_norm(ht - pred, 1) / base;
}

double boundary_mass_fraction(const GridFunction& h, int layer) {
  const Grid& g = h.grid();
  double total = 0, outer = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(h[i]);
    total += a;
    auto idx = g.multi_index(i);
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (idx[j] < layer || idx[j] > g.count(j) - 1 - layer) {
        outer += a;
        break;
      }
  }
  return total == 0 ? 0.0 : outer / total;
}

}  // namespace gradecalc

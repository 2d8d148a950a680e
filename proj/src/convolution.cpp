#include "gradecalc/convolution.hpp"

#include "gradecalc/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gradecalc {

GridFunction group_convolve(const GroupLaw& law, const GridFunction& f, const GridFunction& g,
                            const ConvolutionOptions& opts) {
  const Grid& grid = f.grid();
  if (!(grid == g.grid())) throw std::invalid_argument("convolution operands live on different grids");
  if (grid.dim() != law.dim()) throw std::invalid_argument("grid dimension differs from group dimension");
  const std::size_t n = law.dim();

  double fmax = 0;
  for (double v : f.values()) fmax = std::max(fmax, std::abs(v));
  const double cut = opts.relative_cutoff * fmax;
  std::vector<std::size_t> support;
  std::vector<double> neg_y;  // -y for each support node
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0 || std::abs(f[i]) <= cut) continue;
    support.push_back(i);
    auto y = grid.node(i);
    for (double c : y) neg_y.push_back(-c);
  }

  // Evaluate low-weight coordinates first so out-of-box points are rejected early.
  std::vector<std::size_t> order(n);
  for (std::size_t l = 0; l < n; ++l) order[l] = l;
  const auto& w = law.algebra().weights();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });

  GridFunction out(grid);
  const double dv = grid.cell_volume();
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(n), z(n);
    std::vector<CompiledPolynomial> px(n);
    for (std::size_t xi = begin; xi < end; ++xi) {
      grid.node(xi, x.data());
      for (std::size_t l = 0; l < n; ++l) px[l] = law.compiled()[l].partial(x, n);
      double sum = 0;
      for (std::size_t s = 0; s < support.size(); ++s) {
        const double* a = &neg_y[s * n];
        bool inside = true;
        for (std::size_t l : order) {
          z[l] = px[l](a);
          if (std::abs(z[l]) > grid.half_width(l) * (1 + 1e-12)) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        sum += f[support[s]] * interpolate(g, z, opts.interpolation_order);
      }
      out[xi] = sum * dv;
    }
  });
  return out;
}

}  // namespace gradecalc

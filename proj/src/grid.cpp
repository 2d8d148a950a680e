#include "gradecalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace gradecalc {

Grid::Grid(std::vector<double> half_widths, std::vector<int> counts)
    : half_(std::move(half_widths)), counts_(std::move(counts)) {
  if (half_.size() != counts_.size() || half_.empty()) throw std::invalid_argument("grid axis count mismatch");
  const std::size_t n = half_.size();
  spacing_.resize(n);
  strides_.resize(n);
  size_ = 1;
  cell_volume_ = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (counts_[j] < 3 || counts_[j] % 2 == 0) throw std::invalid_argument("grid point counts must be odd and >= 3");
    if (!(half_[j] > 0)) throw std::invalid_argument("grid half-widths must be positive");
    spacing_[j] = 2 * half_[j] / (counts_[j] - 1);
    cell_volume_ *= spacing_[j];
  }
  for (std::size_t j = n; j-- > 0;) {
    strides_[j] = size_;
    size_ *= static_cast<std::size_t>(counts_[j]);
  }
}

Grid Grid::dilation_adapted(std::span<const int> weights, double scale, std::vector<int> counts) {
  if (!(scale > 0)) throw std::invalid_argument("grid scale must be positive");
  std::vector<double> half;
  for (int w : weights) half.push_back(std::pow(scale, w));
  return Grid(std::move(half), std::move(counts));
}

double Grid::max_spacing() const { return *std::max_element(spacing_.begin(), spacing_.end()); }

std::vector<int> Grid::multi_index(std::size_t flat) const {
  std::vector<int> idx(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    idx[j] = static_cast<int>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return idx;
}

std::size_t Grid::flat_index(std::span<const int> idx) const {
  std::size_t f = 0;
  for (std::size_t j = 0; j < dim(); ++j) f += static_cast<std::size_t>(idx[j]) * strides_[j];
  return f;
}

std::vector<double> Grid::node(std::size_t flat) const {
  std::vector<double> x(dim());
  node(flat, x.data());
  return x;
}

void Grid::node(std::size_t flat, double* out) const {
  for (std::size_t j = 0; j < dim(); ++j) {
    out[j] = coordinate(j, static_cast<int>(flat / strides_[j]));
    flat %= strides_[j];
  }
}

std::size_t Grid::origin_index() const {
  std::vector<int> idx(dim());
  for (std::size_t j = 0; j < dim(); ++j) idx[j] = (counts_[j] - 1) / 2;
  return flat_index(idx);
}

bool Grid::contains(std::span<const double> x) const {
  for (std::size_t j = 0; j < dim(); ++j)
    if (std::abs(x[j]) > half_[j] * (1 + 1e-12)) return false;
  return true;
}

Grid Grid::dilated(std::span<const int> weights, double r) const {
  if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
  if (weights.size() != dim()) throw std::invalid_argument("weight count does not match grid");
  std::vector<double> half(half_);
  for (std::size_t j = 0; j < dim(); ++j) half[j] *= std::pow(r, weights[j]);
  return Grid(std::move(half), counts_);
}

void Grid::check_budget(std::size_t budget) const {
  if (size_ > budget)
    throw BudgetExceeded("grid has " + std::to_string(size_) + " points, budget is " + std::to_string(budget));
}

GridFunction sample(const Grid& g, const std::function<double(std::span<const double>)>& f) {
  GridFunction out(g);
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, x.data());
    out[i] = f(x);
  }
  return out;
}

std::vector<char> interior_mask(const Grid& g, int margin) {
  std::vector<char> m(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto idx = g.multi_index(i);
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (idx[j] < margin || idx[j] > g.count(j) - 1 - margin) {
        m[i] = 0;
        break;
      }
  }
  return m;
}

std::vector<char> ball_mask(const Grid& g, const std::vector<double>& lower, const std::vector<double>& upper) {
  std::vector<char> m(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto x = g.node(i);
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (x[j] < lower[j] || x[j] > upper[j]) {
        m[i] = 0;
        break;
      }
  }
  return m;
}

double haar_integrate(const GridFunction& f) {
  double s = 0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double haar_integrate(const GridFunction& f, const std::vector<char>& mask) {
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mask[i]) s += f[i];
  return s * f.grid().cell_volume();
}

namespace {

template <class Pred>
double lp_impl(const GridFunction& f, double p, Pred use) {
  if (!(p >= 1)) throw std::invalid_argument("p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (use(i)) {
        double a = std::abs(f[i]);
        if (std::isnan(a)) return a;
        m = std::max(m, a);
      }
    return m;
  }
  double s = 0;
  if (p == 1) {
    for (std::size_t i = 0; i < f.size(); ++i)
      if (use(i)) s += std::abs(f[i]);
    return s * f.grid().cell_volume();
  }
  if (p == 2) {
    for (std::size_t i = 0; i < f.size(); ++i)
      if (use(i)) s += f[i] * f[i];
    return std::sqrt(s * f.grid().cell_volume());
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    if (use(i)) s += std::pow(std::abs(f[i]), p);
  return std::pow(s * f.grid().cell_volume(), 1 / p);
}

}  // namespace

double lp_norm(const GridFunction& f, double p) {
  return lp_impl(f, p, [](std::size_t) { return true; });
}

double lp_norm(const GridFunction& f, double p, const std::vector<char>& mask) {
  return lp_impl(f, p, [&](std::size_t i) { return mask[i] != 0; });
}

double lp_distance(const GridFunction& f, const GridFunction& g, double p) { return lp_norm(f - g, p); }

double lp_distance(const GridFunction& f, const GridFunction& g, double p, const std::vector<char>& mask) {
  return lp_norm(f - g, p, mask);
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid functions live on different grids");
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.grid().cell_volume();
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grid function size mismatch");
  GridFunction r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grid function size mismatch");
  GridFunction r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

GridFunction operator*(double c, const GridFunction& a) {
  GridFunction r(a);
  for (auto& v : r.values()) v *= c;
  return r;
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grid function size mismatch");
  GridFunction r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= b[i];
  return r;
}

GridFunction reflect(const GridFunction& g) {
  GridFunction r(g.grid());
  const std::size_t n = g.size();
  // On a centred grid, flat index of -x is n-1-i.
  for (std::size_t i = 0; i < n; ++i) r[i] = g[n - 1 - i];
  return r;
}

double interpolate(const GridFunction& f, std::span<const double> x, int order) {
  if (order != 1 && order != 3) throw std::invalid_argument("interpolation order must be 1 or 3");
  const Grid& g = f.grid();
  const std::size_t n = g.dim();
  constexpr double snap = 1e-10;
  int idx[8][4];
  double wts[8][4];
  int cnt[8];
  if (n > 8) throw std::invalid_argument("interpolation supports at most 8 axes");
  for (std::size_t j = 0; j < n; ++j) {
    const double u = (x[j] + g.half_width(j)) / g.spacing(j);
    const int last = g.count(j) - 1;
    if (u < -snap || u > last + snap) return 0.0;
    double i0d = std::floor(u);
    double t = u - i0d;
    int i0 = static_cast<int>(i0d);
    if (t < snap) t = 0;
    else if (t > 1 - snap) {
      t = 0;
      ++i0;
    }
    if (t == 0) {
      if (i0 < 0 || i0 > last) return 0.0;
      idx[j][0] = i0;
      wts[j][0] = 1;
      cnt[j] = 1;
      continue;
    }
    if (order == 1) {
      idx[j][0] = i0;
      wts[j][0] = 1 - t;
      idx[j][1] = i0 + 1;
      wts[j][1] = t;
      cnt[j] = 2;
    } else {
      const double tm1 = t + 1, t1 = t - 1, t2 = t - 2;
      idx[j][0] = i0 - 1;
      wts[j][0] = -t * t1 * t2 / 6;
      idx[j][1] = i0;
      wts[j][1] = tm1 * t1 * t2 / 2;
      idx[j][2] = i0 + 1;
      wts[j][2] = -tm1 * t * t2 / 2;
      idx[j][3] = i0 + 2;
      wts[j][3] = tm1 * t * t1 / 6;
      cnt[j] = 4;
    }
  }
  double sum = 0;
  int pos[8] = {0};
  const auto& v = f.values();
  while (true) {
    double w = 1;
    std::size_t flat = 0;
    bool inside = true;
    for (std::size_t j = 0; j < n; ++j) {
      const int i = idx[j][pos[j]];
      if (i < 0 || i >= g.count(j)) {
        inside = false;
        break;
      }
      w *= wts[j][pos[j]];
      flat += static_cast<std::size_t>(i) * g.stride(j);
    }
    if (inside) sum += w * v[flat];
    std::size_t j = n;
    while (j-- > 0) {
      if (++pos[j] < cnt[j]) break;
      pos[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return sum;
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_name) {
  const Grid& g = f.grid();
  for (std::size_t j = 0; j < g.dim(); ++j) os << "x" << j + 1 << ",";
  os << value_name << "\n";
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, x.data());
    for (double c : x) {
      put(os, c);
      os << ",";
    }
    put(os, f[i]);
    os << "\n";
  }
}

void write_csv_family(std::ostream& os, const std::vector<GridFunction>& fs, const std::vector<double>& times,
                      const std::string& param_name) {
  if (fs.size() != times.size()) throw std::invalid_argument("family and parameter list differ in length");
  if (fs.empty()) return;
  const Grid& g = fs[0].grid();
  for (std::size_t j = 0; j < g.dim(); ++j) os << "x" << j + 1 << ",";
  os << param_name << ",value\n";
  std::vector<double> x(g.dim());
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.node(i, x.data());
      for (double c : x) {
        put(os, c);
        os << ",";
      }
      put(os, times[k]);
      os << ",";
      put(os, fs[k][i]);
      os << "\n";
    }
}

}  // namespace gradecalc

#include "gradecalc/discretize.hpp"
#include "gradecalc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <mutex>
#include <numbers>

namespace gradecalc {

std::vector<double> fornberg_weights(int m, const std::vector<int>& offsets) {
  const int n = static_cast<int>(offsets.size());
  if (m < 0 || n <= m) throw StencilError("stencil needs more points than the derivative order");
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(m + 1, Rational(0)));
  Rational c1 = 1, c4 = offsets[0];
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    Rational c2 = 1, c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      Rational c3 = Rational(offsets[i]) - Rational(offsets[j]);
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (Rational(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - Rational(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = to_double(c[i][m]);
  return w;
}

int stencil_half_width(int m, int order) {
  if (order < 2 || order % 2) throw StencilError("stencil accuracy order must be even and >= 2");
  if (m < 0) throw StencilError("negative derivative order");
  if (m == 0) return 0;
  return (m + 1) / 2 - 1 + order / 2;
}

namespace {

std::mutex cache_mu;

const Stencil& cached(int m, int order, int lo, int width) {
  static std::map<std::tuple<int, int, int, int>, Stencil> cache;
  std::lock_guard<std::mutex> lock(cache_mu);
  auto key = std::make_tuple(m, order, lo, width);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Stencil s;
  for (int k = 0; k < width; ++k) s.offsets.push_back(lo + k);
  if (m == 0) {
    s.offsets = {0};
    s.weights = {1.0};
  } else {
    s.weights = fornberg_weights(m, s.offsets);
  }
  return cache.emplace(key, std::move(s)).first->second;
}

}  // namespace

const Stencil& centered_stencil(int m, int order) {
  const int p = stencil_half_width(m, order);
  return cached(m, order, -p, 2 * p + 1);
}

Eigen::SparseMatrix<double, Eigen::RowMajor> axis_derivative(int m, int count, int order, AxisMode mode) {
  const int p = stencil_half_width(m, order);
  const int width = 2 * p + 1;
  if (mode == AxisMode::OneSided && count < width)
    throw StencilError("stencil of width " + std::to_string(width) + " exceeds an axis of " + std::to_string(count) +
                       " points");
  std::vector<Eigen::Triplet<double>> trips;
  const Stencil& central = centered_stencil(m, order);
  for (int i = 0; i < count; ++i) {
    if (mode == AxisMode::OneSided && (i - p < 0 || i + p > count - 1)) {
      const int lo = std::clamp(i - p, 0, count - width);
      const Stencil& s = cached(m, order, lo - i, width);
      for (std::size_t k = 0; k < s.offsets.size(); ++k) trips.emplace_back(i, i + s.offsets[k], s.weights[k]);
      continue;
    }
    for (std::size_t k = 0; k < central.offsets.size(); ++k) {
      int col = i + central.offsets[k];
      if (mode == AxisMode::Periodic) col = ((col % count) + count) % count;
      else if (col < 0 || col >= count) continue;
      trips.emplace_back(i, col, central.weights[k]);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> d(count, count);
  d.setFromTriplets(trips.begin(), trips.end());
  return d;
}

std::complex<double> periodic_symbol(int m, int order, int kappa, int count) {
  const Stencil& s = centered_stencil(m, order);
  std::complex<double> sum = 0;
  for (std::size_t k = 0; k < s.offsets.size(); ++k) {
    const double phase = 2 * std::numbers::pi * static_cast<double>(kappa) * s.offsets[k] / count;
    sum += s.weights[k] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  // Even derivatives have real symbols, odd ones purely imaginary.
  if (m % 2 == 0) sum.imag(0);
  else sum.real(0);
  return sum;
}

}  // namespace gradecalc

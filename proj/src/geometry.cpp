#include "gradecalc/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gradecalc {

Point dilate(std::span<const int> weights, double r, std::span<const double> x) {
  if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
  if (weights.size() != x.size()) throw std::invalid_argument("point dimension mismatch");
  Point y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::pow(r, weights[j]) * x[j];
  return y;
}

RationalPoint dilate(std::span<const int> weights, const Rational& r, std::span<const Rational> x) {
  if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
  if (weights.size() != x.size()) throw std::invalid_argument("point dimension mismatch");
  RationalPoint y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    Rational p = 1;
    for (int k = 0; k < weights[j]; ++k) p *= r;
    y[j] = p * x[j];
  }
  return y;
}

PseudoNorm::PseudoNorm(std::vector<int> weights, int nu0) : weights_(std::move(weights)), nu0_(nu0) {
  if (nu0_ < 1) throw std::invalid_argument("nu0 must be a positive integer");
  for (int w : weights_)
    if (w < 1 || nu0_ % w != 0)
      throw std::invalid_argument("nu0 = " + std::to_string(nu0_) + " is not a common multiple of the weights");
}

PseudoNorm PseudoNorm::minimal(std::vector<int> weights) {
  int l = 1;
  for (int w : weights) l = std::lcm(l, w);
  return PseudoNorm(std::move(weights), l);
}

double PseudoNorm::operator()(std::span<const double> x) const {
  if (x.size() != weights_.size()) throw std::invalid_argument("point dimension mismatch");
  // x_j^{2 nu0/w_j} = (|x_j|^{1/w_j})^{2 nu0}; factor out the largest base.
  double m = 0;
  std::vector<double> base(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    base[j] = std::pow(std::abs(x[j]), 1.0 / weights_[j]);
    m = std::max(m, base[j]);
  }
  if (m == 0) return 0;
  double s = 0;
  for (double b : base) s += std::pow(b / m, 2 * nu0_);
  return m * std::pow(s, 1.0 / (2 * nu0_));
}

Point PseudoNorm::normalize(std::span<const double> x) const {
  double r = (*this)(x);
  if (r == 0) throw std::invalid_argument("cannot normalize the origin");
  return dilate(weights_, 1 / r, x);
}

double pseudo_norm(std::span<const double> x, std::span<const int> weights, int nu0) {
  return PseudoNorm(std::vector<int>(weights.begin(), weights.end()), nu0)(x);
}

std::vector<std::vector<double>> quasi_random_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  boost::random::sobol gen(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> shift(dim);
  for (auto& s : shift) s = uni(rng);
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t d = 0; d < dim; ++d) {
      double u = (static_cast<double>(gen()) + 0.5) * scale + shift[d];
      pts[i][d] = u - std::floor(u);
    }
  return pts;
}

namespace {

// Generator of (unit x, unit y, u) triples from one quasi-random stream.
template <class F>
void for_unit_pairs(const PseudoNorm& norm, std::size_t samples, std::uint64_t seed, F&& f) {
  const std::size_t n = norm.weights().size();
  boost::random::sobol gen(2 * n + 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> shift(2 * n + 1);
  for (auto& s : shift) s = uni(rng);
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  std::vector<double> u(2 * n + 1), x(n), y(n);
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t d = 0; d < u.size(); ++d) {
      double v = (static_cast<double>(gen()) + 0.5) * scale + shift[d];
      u[d] = v - std::floor(v);
    }
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = 2 * u[j] - 1;
      y[j] = 2 * u[n + j] - 1;
    }
    if (norm(x) == 0 || norm(y) == 0) continue;
    f(norm.normalize(x), norm.normalize(y), u[2 * n]);
  }
}

}  // namespace

TriangleEstimate quasi_triangle_constant(const GroupLaw& law, const PseudoNorm& norm, std::size_t samples,
                                         std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  // The pair (x, 0) attains ratio 1.
  TriangleEstimate est{1, samples};
  const auto& w = norm.weights();
  for_unit_pairs(norm, samples, seed, [&](const Point& x, const Point& yu, double u) {
    const double rho = std::pow(4.0, 2 * u - 1);
    Point y = dilate(w, rho, yu);
    est.constant = std::max(est.constant, norm(law.multiply(x, y)) / (1 + rho));
  });
  return est;
}

TriangleEstimate reverse_triangle_constant(const GroupLaw& law, const PseudoNorm& norm, double b,
                                           std::size_t samples, std::uint64_t seed) {
  if (!(b > 0)) throw std::invalid_argument("b must be positive");
  TriangleEstimate est{0, samples};
  const auto& w = norm.weights();
  for_unit_pairs(norm, samples, seed, [&](const Point& x, const Point& yu, double u) {
    const double rho = b * std::max(u, 1e-6);
    Point y = dilate(w, rho, yu);
    est.constant = std::max(est.constant, std::abs(norm(law.multiply(x, y)) - 1) / rho);
  });
  return est;
}

double SphereQuadrature::total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

SphereQuadrature build_sphere_quadrature(const PseudoNorm& norm, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = norm.weights().size();
  const int q = std::accumulate(norm.weights().begin(), norm.weights().end(), 0);
  // Unit ball lies in [-1,1]^n since |x_j|^{1/w_j} <= |x|.
  const std::size_t per_axis =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::pow(double(samples), 1.0 / n))));
  std::size_t cells = 1;
  for (std::size_t j = 0; j < n; ++j) cells *= per_axis;
  const double cell_volume = std::pow(2.0 / per_axis, double(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  SphereQuadrature quad{norm, {}, {}};
  std::vector<double> x(n);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t j = n; j-- > 0;) {
      const std::size_t k = rest % per_axis;
      rest /= per_axis;
      x[j] = -1 + (k + uni(rng)) * (2.0 / per_axis);
    }
    const double r = norm(x);
    if (r == 0 || r > 1) continue;
    quad.nodes.push_back(norm.normalize(x));
    quad.weights.push_back(q * cell_volume);
  }
  return quad;
}

double PolarComparison::relative_gap() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

PolarComparison polar_integral_check(const std::function<double(std::span<const double>)>& f,
                                     const SphereQuadrature& quad, const Grid& lhs_grid, double r_max) {
  PolarComparison out;
  out.lhs = haar_integrate(sample(lhs_grid, f));
  const auto& w = quad.norm.weights();
  const int q = std::accumulate(w.begin(), w.end(), 0);
  double rhs = 0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const Point& y = quad.nodes[i];
    auto radial = [&](double r) { return r <= 0 ? 0.0 : f(dilate(w, r, y)) * std::pow(r, q - 1); };
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(radial, 0.0, r_max, 8, 1e-11);
    rhs += quad.weights[i] * v;
  }
  out.rhs = rhs;
  return out;
}

}  // namespace gradecalc

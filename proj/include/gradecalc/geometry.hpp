#pragma once

#include "gradecalc/algebra.hpp"
#include "gradecalc/grid.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gradecalc {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

Point dilate(std::span<const int> weights, double r, std::span<const double> x);
RationalPoint dilate(std::span<const int> weights, const Rational& r, std::span<const Rational> x);

// |x| = (sum_j x_j^{2 nu0 / w_j})^{1/(2 nu0)}.
class PseudoNorm {
 public:
  PseudoNorm(std::vector<int> weights, int nu0);
  // Smallest admissible nu0: lcm of the weights.
  static PseudoNorm minimal(std::vector<int> weights);

  double operator()(std::span<const double> x) const;
  int nu0() const { return nu0_; }
  const std::vector<int>& weights() const { return weights_; }
  // D_{1/|x|} x, x != 0.
  Point normalize(std::span<const double> x) const;

 private:
  std::vector<int> weights_;
  int nu0_;
};

double pseudo_norm(std::span<const double> x, std::span<const int> weights, int nu0);

// Cranley-Patterson shifted Sobol points in [0,1)^dim; prefixes are stable in `count`.
std::vector<std::vector<double>> quasi_random_points(std::size_t dim, std::size_t count, std::uint64_t seed);

struct TriangleEstimate {
  double constant = 0;
  std::size_t samples = 0;
};

// max |xy| / (|x| + |y|) over quasi-random pairs.
TriangleEstimate quasi_triangle_constant(const GroupLaw& law, const PseudoNorm& norm, std::size_t samples,
                                         std::uint64_t seed = kDefaultSeed);
// max | |xy| - |x| | / |y| over pairs with |y| <= b |x|. No reference value exists for this constant.
TriangleEstimate reverse_triangle_constant(const GroupLaw& law, const PseudoNorm& norm, double b,
                                           std::size_t samples, std::uint64_t seed = kDefaultSeed);

struct SphereQuadrature {
  PseudoNorm norm;
  std::vector<Point> nodes;
  std::vector<double> weights;
  double total_mass() const;
};

// Stratified jittered samples of the unit ball projected to the sphere; each carries Q |cell|.
SphereQuadrature build_sphere_quadrature(const PseudoNorm& norm, std::size_t samples,
                                         std::uint64_t seed = kDefaultSeed);

struct PolarComparison {
  double lhs = 0;  // grid quadrature of f
  double rhs = 0;  // sum_i w_i int_0^rmax f(D_r y_i) r^{Q-1} dr
  double relative_gap() const;
};

PolarComparison polar_integral_check(const std::function<double(std::span<const double>)>& f,
                                     const SphereQuadrature& quad, const Grid& lhs_grid, double r_max);

}  // namespace gradecalc

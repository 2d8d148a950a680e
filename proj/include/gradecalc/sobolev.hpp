#pragma once

#include "gradecalc/potentials.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace gradecalc {

enum class NormFlavor { Inhomogeneous, Homogeneous, IntegerX };
NormFlavor parse_flavor(const std::string& name);
std::string to_string(NormFlavor f);

struct SobolevNormSpec {
  std::shared_ptr<const SpectralPlan> plan;
  double s = 0;
  double p = 2;
  NormFlavor flavor = NormFlavor::Inhomogeneous;
  // Integer flavor: fields realizing X^alpha and the stencil order.
  std::vector<LeftInvariantField> fields;
  int fd_order = 4;
  // Norms are taken over nodes at least `margin` steps from every face.
  int margin = 0;

  // Same spec viewed on D_{1/r}G, so that samples of f there are the samples of f o D_r.
  SobolevNormSpec dilated(double r) const;
};

class FlavorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double sobolev_norm(const SobolevNormSpec& spec, const GridFunction& f);

// Multi-indices alpha with sum w_j alpha_j = order, as words X_1^{a_1}...X_n^{a_n}.
std::vector<std::vector<int>> homogeneous_multi_indices(std::span<const int> weights, int order);

struct FamilyOptions {
  std::size_t count = 50;
  std::uint64_t seed = 0xC0FFEE;
  double center_fraction = 0.1;  // centres in +-fraction * R^{w_j}
  double width_min = 0.12;       // widths (fraction of the scale R)
  double width_max = 0.25;
  double modulation = 0.5;  // linear modulation coefficients in +-modulation
};

// Gaussian x polynomial bumps (1 + sum a_j z_j + b z_1 z_n) exp(-|z|^2), z_j = (x_j - c_j)/(w R)^{w_j}.
std::vector<GridFunction> bump_family(const Grid& g, std::span<const int> weights, double scale,
                                      const FamilyOptions& opts = {});

struct RatioRange {
  double min = 0, max = 0;
  std::vector<double> ratios;
  double spread() const { return min > 0 ? max / min : INFINITY; }
};

class ProbeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ||f||_A / ||f||_B over the family.
RatioRange equivalence_probe(const SobolevNormSpec& a, const SobolevNormSpec& b, const std::vector<GridFunction>& family);

inline const std::vector<double> kDefaultDilations = {0.25, 0.5, 1.0, 2.0, 4.0};

struct EmbeddingResult {
  double sup_undilated = 0;
  double sup_all = 0;
  std::vector<double> sup_per_dilation;
  double drift() const { return sup_undilated > 0 ? sup_all / sup_undilated : INFINITY; }
};

// sup ||f||_{L^q_a} / ||f||_{L^p_b}; requires 1 < p < q < inf and b - a = Q (1/p - 1/q).
EmbeddingResult embedding_probe(double p, double q, double a, double b, const SobolevNormSpec& base,
                                const std::vector<GridFunction>& family,
                                const std::vector<double>& dilations = kDefaultDilations);
// sup ||f||_inf / ||f||_{L^p_s}; requires s > Q/p.
EmbeddingResult sup_embedding_probe(double p, double s, const SobolevNormSpec& base,
                                    const std::vector<GridFunction>& family,
                                    const std::vector<double>& dilations = kDefaultDilations);

struct SharpnessTable {
  std::vector<double> orders;
  std::vector<double> dilations;
  std::vector<std::vector<double>> ratio;  // ratio[s][r]
};

// ||L f_r||_2 / ||f_r||_{L^2_s}: L a left-invariant operator (normal form), plan for the
// Sobolev norm.
SharpnessTable sharpness_probe(const SobolevNormSpec& base, const PolyDiffOp& numerator_op, const GridFunction& f,
                               const std::vector<double>& orders, const std::vector<double>& dilations);

// sup ||phi f||_{L^p_s} / ||f||_{L^p_s}.
RatioRange bump_multiplication_probe(const GridFunction& phi, const SobolevNormSpec& spec,
                                     const std::vector<GridFunction>& family);

// max over f of ||A^a f|| / (||f||^{1-a/b} ||A^b f||^{a/b}) - 1, A = (I+R)^{1/nu}, p = 2.
double interpolation_inequality_excess(const SpectralPlan& plan, double a, double b,
                                       const std::vector<GridFunction>& family);
// max |<A f, g> - <f, A g>| / (||A f|| ||g||) over consecutive family pairs, A = (I+R)^{s/nu}.
double duality_defect(const SpectralPlan& plan, double s, const std::vector<GridFunction>& family);
// sup ||(I+R)^{-[alpha]/nu} X^alpha f||_2 / ||f||_2.
RatioRange type_zero_probe(const SpectralPlan& plan, const PolyDiffOp& x_alpha, double degree, int fd_order,
                           const std::vector<GridFunction>& family);

}  // namespace gradecalc

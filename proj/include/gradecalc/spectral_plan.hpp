#pragma once

#include "gradecalc/calculus.hpp"
#include "gradecalc/discretize.hpp"
#include "gradecalc/grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

namespace gradecalc {

struct PlanOptions {
  int order = 4;
  // Axes whose coordinate appears in no operator coefficient are wrapped and diagonalized
  // by a DFT; all other axes use `boundary`.
  bool periodic_free_axes = true;
  AxisMode boundary = AxisMode::ZeroExtension;
  double positivity_tolerance = 1e-6;
  std::size_t point_budget = kDefaultPointBudget;
};

class EigensolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unitary eigendecomposition of a discretized operator, block-diagonal over DFT modes of
// the periodic axes.
class SpectralPlan {
 public:
  // Dense symmetric route for an explicit matrix (symmetrized as (A + A^T)/2).
  static SpectralPlan from_matrix(const Eigen::MatrixXd& a, const Grid& g, int degree, std::vector<int> weights);
  static SpectralPlan from_operator(const PolyDiffOp& op, const Grid& g, int degree, std::vector<int> weights,
                                    const PlanOptions& opts = {});
  static SpectralPlan build(const GroupLaw& law, const RocklandSpec& spec, const Grid& g,
                            const PlanOptions& opts = {});

  const Grid& grid() const { return grid_; }
  int degree() const { return degree_; }
  const std::vector<int>& weights() const { return weights_; }
  int homogeneous_dimension() const;
  const std::vector<AxisMode>& axis_modes() const { return modes_; }
  int order() const { return order_; }

  std::vector<double> eigenvalues() const;  // sorted, with multiplicity
  double min_eigenvalue() const { return lambda_min_; }
  double max_eigenvalue() const { return lambda_max_; }
  // ||A - A^*||_F / ||A||_F before symmetrization.
  double symmetrization_defect() const { return sym_defect_; }
  // Probe estimate of ||A_sym - V L V^*|| / max|lambda|.
  double reconstruction_residual() const { return recon_residual_; }
  bool positive(double tol = 1e-6) const { return lambda_min_ >= -tol * std::abs(lambda_max_); }
  std::size_t block_count() const { return modes_of_block_.size(); }

  // V g(L) V^* f; values of g at each eigenvalue.
  GridFunction apply(const std::function<double(double)>& g, const GridFunction& f) const;
  std::vector<GridFunction> apply_many(const std::vector<std::function<double(double)>>& gs,
                                       const GridFunction& f) const;

  // The plan on D_r G: same eigenvectors, eigenvalues scaled by r^{-nu}. Exact for
  // homogeneous operators discretized on dilation-compatible grids.
  SpectralPlan rescaled(double r) const;

 private:
  struct Block {
    Eigen::VectorXd lambda;
    Eigen::MatrixXcd vectors;
  };
  struct ModeRef {
    std::size_t block;
    bool conjugate;
  };

  SpectralPlan() = default;
  void finish();
  std::vector<std::complex<double>> forward(const GridFunction& f) const;
  GridFunction backward(std::vector<std::complex<double>>& data) const;

  Grid grid_;
  int degree_ = 0;
  int order_ = 4;
  std::vector<int> weights_;
  std::vector<AxisMode> modes_;
  std::vector<std::size_t> periodic_axes_, block_axes_;
  std::vector<std::size_t> block_offsets_;  // flat offsets of block-axis nodes
  std::vector<std::size_t> mode_offsets_;   // flat offsets of periodic-axis nodes, per mode
  std::shared_ptr<const std::vector<Block>> blocks_;
  std::vector<ModeRef> mode_block_;
  std::vector<std::vector<std::size_t>> modes_of_block_;
  double lambda_scale_ = 1;
  double lambda_min_ = 0, lambda_max_ = 0;
  double sym_defect_ = 0, recon_residual_ = 0;
};

}  // namespace gradecalc

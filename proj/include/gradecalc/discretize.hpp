#pragma once

#include "gradecalc/calculus.hpp"
#include "gradecalc/grid.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <vector>

namespace gradecalc {

// Finite-difference weights for the m-th derivative at 0 from integer offsets (exact rationals).
std::vector<double> fornberg_weights(int m, const std::vector<int>& offsets);

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // per unit spacing
};

// Centred stencil of accuracy `order` (even) for the m-th derivative.
const Stencil& centered_stencil(int m, int order);
int stencil_half_width(int m, int order);

enum class AxisMode {
  OneSided,       // shifted stencils near the faces
  ZeroExtension,  // samples outside the box are 0 (Dirichlet-type)
  Periodic,       // wrap-around
};

struct DiscretizationOptions {
  int order = 4;
  std::vector<AxisMode> modes;  // empty: OneSided on every axis
  AxisMode mode(std::size_t axis) const { return modes.empty() ? AxisMode::OneSided : modes[axis]; }
};

class StencilError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sparse 1-D derivative matrix of order m on `count` nodes with unit spacing.
Eigen::SparseMatrix<double, Eigen::RowMajor> axis_derivative(int m, int count, int order, AxisMode mode);
// Symbol sum_k w_k exp(2 pi i k kappa / count) of the centred periodic stencil.
std::complex<double> periodic_symbol(int m, int order, int kappa, int count);

GridFunction apply_diffop(const PolyDiffOp& op, const GridFunction& f, const DiscretizationOptions& opts = {});
GridFunction apply_diffop(const DiffOpExpr& e, const std::vector<LeftInvariantField>& fields, const GridFunction& f,
                          const DiscretizationOptions& opts = {});

Eigen::SparseMatrix<double, Eigen::RowMajor> discretize_sparse(const PolyDiffOp& op, const Grid& g,
                                                               const DiscretizationOptions& opts = {});
Eigen::MatrixXd discretize(const PolyDiffOp& op, const Grid& g, const DiscretizationOptions& opts = {});

// Largest stencil half-width used by op; the natural interior-mask margin.
int stencil_margin(const PolyDiffOp& op, int order);

}  // namespace gradecalc

#include "gradecalc/discretize.hpp"

#include "gradecalc/parallel.hpp"

#include <cmath>

namespace gradecalc {

namespace {

using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Apply a 1-D matrix along `axis` of a flattened array.
void apply_axis(const RowSparse& d, const Grid& g, std::size_t axis, const std::vector<double>& in,
                std::vector<double>& out) {
  const std::size_t stride = g.stride(axis);
  const std::size_t count = static_cast<std::size_t>(g.count(axis));
  out.assign(in.size(), 0.0);
  parallel_for(in.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const std::size_t pos = (i / stride) % count;
      const std::size_t base = i - pos * stride;
      double s = 0;
      for (RowSparse::InnerIterator it(d, static_cast<Eigen::Index>(pos)); it; ++it)
        s += it.value() * in[base + static_cast<std::size_t>(it.col()) * stride];
      out[i] = s;
    }
  });
}

std::vector<double> coefficient_values(const Polynomial& c, const Grid& g) {
  CompiledPolynomial cp(c);
  std::vector<double> v(g.size());
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, x.data());
    v[i] = cp(x.data());
  }
  return v;
}

void check_stencils(const PolyDiffOp& op, const Grid& g, const DiscretizationOptions& opts) {
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const int m = static_cast<int>(op.max_order(j));
    if (!m) continue;
    const int p = stencil_half_width(m, opts.order);
    if (g.count(j) < 2 * p + 1)
      throw StencilError("stencil exceeds grid: axis " + std::to_string(j + 1) + " has " +
                         std::to_string(g.count(j)) + " points, stencil needs " + std::to_string(2 * p + 1));
  }
}

}  // namespace

int stencil_margin(const PolyDiffOp& op, int order) {
  int m = 0;
  for (std::size_t j = 0; j < op.num_vars(); ++j)
    m = std::max(m, stencil_half_width(static_cast<int>(op.max_order(j)), order));
  return m;
}

GridFunction apply_diffop(const PolyDiffOp& op, const GridFunction& f, const DiscretizationOptions& opts) {
  const Grid& g = f.grid();
  if (op.num_vars() != g.dim()) throw std::invalid_argument("operator arity differs from grid dimension");
  check_stencils(op, g, opts);
  GridFunction out(g);
  std::vector<double> a, b;
  for (const auto& [beta, c] : op.terms()) {
    a = f.values();
    double scale = 1;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (!beta[j]) continue;
      auto d = axis_derivative(static_cast<int>(beta[j]), g.count(j), opts.order, opts.mode(j));
      apply_axis(d, g, j, a, b);
      a.swap(b);
      scale *= std::pow(g.spacing(j), -static_cast<double>(beta[j]));
    }
    const auto cv = coefficient_values(c, g);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += scale * cv[i] * a[i];
  }
  return out;
}

GridFunction apply_diffop(const DiffOpExpr& e, const std::vector<LeftInvariantField>& fields, const GridFunction& f,
                          const DiscretizationOptions& opts) {
  return apply_diffop(normal_form(e, fields), f, opts);
}

RowSparse discretize_sparse(const PolyDiffOp& op, const Grid& g, const DiscretizationOptions& opts) {
  if (op.num_vars() != g.dim()) throw std::invalid_argument("operator arity differs from grid dimension");
  check_stencils(op, g, opts);
  const std::size_t n = g.dim();
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& [beta, c] : op.terms()) {
    std::vector<RowSparse> mats(n);
    double scale = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!beta[j]) continue;
      mats[j] = axis_derivative(static_cast<int>(beta[j]), g.count(j), opts.order, opts.mode(j));
      scale *= std::pow(g.spacing(j), -static_cast<double>(beta[j]));
    }
    const auto cv = coefficient_values(c, g);
    for (std::size_t row = 0; row < g.size(); ++row) {
      if (cv[row] == 0) continue;
      const auto idx = g.multi_index(row);
      // Tensor product over axes, recursive.
      auto rec = [&](auto&& self, std::size_t axis, std::size_t col, double w) -> void {
        if (axis == n) {
          trips.emplace_back(static_cast<int>(row), static_cast<int>(col), scale * cv[row] * w);
          return;
        }
        if (!beta[axis]) {
          self(self, axis + 1, col + static_cast<std::size_t>(idx[axis]) * g.stride(axis), w);
          return;
        }
        for (RowSparse::InnerIterator it(mats[axis], idx[axis]); it; ++it)
          self(self, axis + 1, col + static_cast<std::size_t>(it.col()) * g.stride(axis), w * it.value());
      };
      rec(rec, 0, 0, 1.0);
    }
  }
  RowSparse a(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Eigen::MatrixXd discretize(const PolyDiffOp& op, const Grid& g, const DiscretizationOptions& opts) {
  return Eigen::MatrixXd(discretize_sparse(op, g, opts));
}

}  // namespace gradecalc

#include "gradecalc/discretize.hpp"
#include "gradecalc/geometry.hpp"
#include "gradecalc/group_io.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gradecalc;

namespace {

GradedLieAlgebra group(const std::string& name) { return load_group(resolve_group_path(name)); }

double bump(double r2) { return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0; }

double sup_on(const GridFunction& f, const std::vector<char>& mask) {
  double m = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mask[i]) m = std::max(m, std::abs(f[i]));
  return m;
}

}  // namespace

TEST(Stencil, FornbergClassics) {
  EXPECT_EQ(fornberg_weights(2, {-1, 0, 1}), (std::vector<double>{1, -2, 1}));
  const auto& s = centered_stencil(1, 4);
  ASSERT_EQ(s.offsets, (std::vector<int>{-2, -1, 0, 1, 2}));
  EXPECT_NEAR(s.weights[0], 1.0 / 12, 1e-15);
  EXPECT_NEAR(s.weights[1], -2.0 / 3, 1e-15);
  EXPECT_EQ(s.weights[2], 0);
  EXPECT_EQ(stencil_half_width(2, 4), 2);
  EXPECT_EQ(stencil_half_width(4, 4), 3);
}

TEST(Stencil, OneSidedExactOnPolynomials) {
  const int order = 4, n = 11;
  const auto d = axis_derivative(1, n, order, AxisMode::OneSided);
  Eigen::VectorXd p(n), dp(n);
  for (int i = 0; i < n; ++i) {
    p[i] = std::pow(i, 4) - 3 * i;
    dp[i] = 4 * std::pow(i, 3) - 3;
  }
  EXPECT_LT((d * p - dp).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(axis_derivative(4, 5, 8, AxisMode::OneSided), StencilError);
}

TEST(Stencil, PeriodicSymbolMatchesDft) {
  const int n = 15, order = 6;
  for (int m : {1, 2, 3}) {
    const auto& s = centered_stencil(m, order);
    for (int k = 0; k < n; ++k) {
      std::complex<double> sym = 0;
      for (std::size_t i = 0; i < s.offsets.size(); ++i)
        sym += s.weights[i] * std::exp(std::complex<double>(0, 2 * M_PI * s.offsets[i] * k / n));
      const auto got = periodic_symbol(m, order, k, n);
      EXPECT_NEAR(std::abs(got - sym), 0, 1e-12) << m << " " << k;
    }
  }
}

TEST(ApplyDiffop, SineFourthOrder) {
  const auto alg = group("abelian1");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  const auto op = parse_expr("-X^2", alg.labels());
  std::vector<double> errs;
  for (int n : {41, 81}) {
    Grid g({3}, {n});
    const auto f = sample(g, [](std::span<const double> x) { return std::sin(x[0]); });
    const auto r = apply_diffop(op, fields, f, {4, {}});
    errs.push_back(lp_distance(r, f, INFINITY, interior_mask(g, 3)));
  }
  EXPECT_LT(errs[0], 1e-4);
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 4.0, 0.6);
}

TEST(ApplyDiffop, CommutatorIdentity) {
  const auto alg = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  Grid g({1.5, 1.5, 1.5}, {31, 31, 31});
  const auto f = sample(g, [](std::span<const double> x) {
    return std::exp(-(x[0] * x[0] + 1.3 * x[1] * x[1] + 0.7 * x[2] * x[2])) * (1 + 0.4 * x[0] - 0.3 * x[2]);
  });
  DiscretizationOptions opt{4, {}};
  const auto lb = alg.labels();
  const auto xy = apply_diffop(parse_expr("X Y", lb), fields, f, opt);
  const auto yx = apply_diffop(parse_expr("Y X", lb), fields, f, opt);
  const auto t = apply_diffop(parse_expr("T", lb), fields, f, opt);
  const auto defect = xy - yx - t;
  const double d2 = g.max_spacing() * g.max_spacing();
  EXPECT_LT(sup_on(defect, interior_mask(g, 4)), 10 * d2);
}

TEST(ApplyDiffop, FieldsIntegrateToZero) {
  const auto alg = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  Grid g({1.2, 1.2, 1.2}, {31, 31, 31});
  const auto f = sample(g, [](std::span<const double> x) {
    return bump(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) * (1 + x[0] * x[1]);
  });
  for (int j = 0; j < 3; ++j)
    EXPECT_LT(std::abs(haar_integrate(apply_diffop(DiffOpExpr::field(3, j), fields, f, {4, {}}))), 1e-6);
}

TEST(ApplyDiffop, OperatorHomogeneity) {
  // apply(e, f o D_r) = r^{deg} (apply(e, f)) o D_r on the pair (D_{1/r} G, G).
  for (const auto& [name, text] : {std::pair{"heisenberg", "X^4 + Y^4 - T^2"}, std::pair{"heisenberg358", "X Y - T"}}) {
    const auto alg = group(name);
    const auto fields = left_invariant_fields(bch_group_law(alg));
    const auto& w = alg.weights();
    const auto e = parse_expr(text, alg.labels());
    const long deg = homogeneous_degree(e, w).degree();
    Grid g({1, 1, 1}, {15, 15, 15});
    auto f = [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); };
    const double r = 1.5;
    const Grid gs = g.dilated(w, 1 / r);
    const auto fr = sample(gs, [&](std::span<const double> x) { return f(dilate(w, r, x)); });
    const auto lhs = apply_diffop(e, fields, fr, {4, {}});
    const auto rhs = apply_diffop(e, fields, sample(g, f), {4, {}});
    double err = 0, scale = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(lhs[i] - std::pow(r, deg) * rhs[i]));
      scale = std::max(scale, std::abs(lhs[i]));
    }
    EXPECT_LT(err, 1e-10 * scale) << name;
  }
}

namespace {

double interior_transpose_gap(const DiffOpExpr& e, const std::vector<LeftInvariantField>& fields, const Grid& g,
                              int order, double& scale) {
  const DiscretizationOptions opt{order, std::vector<AxisMode>(g.dim(), AxisMode::ZeroExtension)};
  const auto mask = interior_mask(g, stencil_margin(normal_form(e, fields), order));
  const Eigen::MatrixXd a = discretize(normal_form(e, fields), g, opt);
  const Eigen::MatrixXd at = discretize(normal_form(transpose(e), fields), g, opt);
  double diff = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k)
      if (mask[i] && mask[k]) diff = std::max(diff, std::abs(at(i, k) - a(k, i)));
  scale = a.norm();
  return diff;
}

}  // namespace

TEST(Discretize, TransposeMatchesMatrixTranspose) {
  // Exact whenever no coefficient depends on a variable it is differentiated in.
  const auto alg = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  Grid g({1, 1, 1}, {11, 11, 11});
  for (const auto& text : {"X", "T X", "X^2 + Y^2", "X^4 + Y^4 - T^2"}) {
    double scale = 0;
    const double gap = interior_transpose_gap(parse_expr(text, alg.labels()), fields, g, 4, scale);
    EXPECT_LT(gap, 1e-8 * scale) << text;
  }
}

TEST(Discretize, TransposeGapConvergesOtherwise) {
  const auto alg = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  const auto e = parse_expr("X Y", alg.labels());
  double s1 = 0, s2 = 0;
  const double coarse = interior_transpose_gap(e, fields, Grid({1, 1, 1}, {9, 9, 9}), 2, s1) / s1;
  const double fine = interior_transpose_gap(e, fields, Grid({1, 1, 1}, {13, 13, 13}), 2, s2) / s2;
  EXPECT_LT(fine, coarse);
}

TEST(Discretize, DenseMatchesApply) {
  const auto alg = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(alg));
  Grid g({1, 1, 1}, {9, 9, 9});
  const auto op = normal_form(parse_expr("X^2 + Y T", alg.labels()), fields);
  const auto f = sample(g, [](std::span<const double> x) { return std::cos(x[0] + 2 * x[1] - x[2]); });
  const Eigen::MatrixXd a = discretize(op, g);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(f.values().data(), f.size());
  const Eigen::VectorXd av = a * v;
  const auto r = apply_diffop(op, f);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(av[i], r[i], 1e-10);
}

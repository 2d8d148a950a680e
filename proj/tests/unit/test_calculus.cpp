#include "gradecalc/calculus.hpp"
#include "gradecalc/discretize.hpp"
#include "gradecalc/geometry.hpp"
#include "gradecalc/group_io.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gradecalc;

namespace {

GradedLieAlgebra group(const std::string& name) { return load_group(resolve_group_path(name)); }

Polynomial v3(int i) { return Polynomial::variable(3, i); }

PolyDiffOp first_order(std::vector<std::pair<unsigned, Polynomial>> parts) {
  PolyDiffOp op(3);
  for (auto& [axis, c] : parts) {
    PolyDiffOp::MultiIndex b(3, 0);
    b[axis] = 1;
    op.add_term(b, c);
  }
  return op;
}

}  // namespace

TEST(Fields, AbelianArePartials) {
  const auto fields = left_invariant_fields(bch_group_law(group("abelian3")));
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      EXPECT_EQ(fields[j].coefficients[k], Polynomial::constant(3, j == k ? 1 : 0)) << j << k;
}

TEST(Fields, HeisenbergExplicit) {
  const auto fields = left_invariant_fields(bch_group_law(group("heisenberg")));
  const Rational half = make_rational(1, 2);
  EXPECT_EQ(PolyDiffOp::from_field(fields[0]), first_order({{0, Polynomial::constant(3, 1)}, {2, -half * v3(1)}}));
  EXPECT_EQ(PolyDiffOp::from_field(fields[1]), first_order({{1, Polynomial::constant(3, 1)}, {2, half * v3(0)}}));
  EXPECT_EQ(PolyDiffOp::from_field(fields[2]), first_order({{2, Polynomial::constant(3, 1)}}));
}

TEST(Fields, ReproduceStructureConstants) {
  for (const auto& name : {"heisenberg", "heisenberg358", "engel", "abelian3"}) {
    const auto alg = group(name);
    const auto fields = left_invariant_fields(bch_group_law(alg));
    const std::size_t n = alg.dim();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto xj = PolyDiffOp::from_field(fields[j]), xk = PolyDiffOp::from_field(fields[k]);
        PolyDiffOp rhs(n);
        for (std::size_t l = 0; l < n; ++l) {
          const Rational& c = alg.structure_constant(static_cast<int>(j), static_cast<int>(k), static_cast<int>(l));
          if (c != 0) {
            auto term = PolyDiffOp::from_field(fields[l]);
            term *= c;
            rhs += term;
          }
        }
        EXPECT_EQ(xj * xk - xk * xj, rhs) << name << " " << j << "," << k;
      }
  }
}

TEST(Fields, CoefficientHomogeneity) {
  for (const auto& name : {"heisenberg358", "engel"}) {
    const auto alg = group(name);
    const auto fields = left_invariant_fields(bch_group_law(alg));
    const auto& w = alg.weights();
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t k = 0; k < w.size(); ++k) {
        const auto& a = fields[j].coefficients[k];
        if (w[k] < w[j]) EXPECT_TRUE(a.is_zero());
        else EXPECT_TRUE(a.is_zero() || a.is_weighted_homogeneous(w, w[k] - w[j]));
        EXPECT_EQ(a.constant_term(), j == k ? 1 : 0);
      }
  }
}

TEST(Fields, LeftInvarianceExact) {
  // X_j (f o L_g) = (X_j f) o L_g for a polynomial f, in exact arithmetic.
  const auto law = bch_group_law(group("heisenberg"));
  const auto fields = left_invariant_fields(law);
  const Polynomial f = v3(0) * v3(0) * v3(2) + make_rational(3) * v3(1) * v3(2) * v3(2) - v3(0) * v3(1);
  const std::vector<Rational> g{make_rational(1, 3), make_rational(-2), make_rational(5, 7)};
  // L_g x = g x as polynomials in x.
  std::vector<Polynomial> gx;
  for (const auto& m : law.coordinates()) {
    std::vector<Polynomial> sub;
    for (int i = 0; i < 3; ++i) sub.push_back(Polynomial::constant(3, g[i]));
    for (int i = 0; i < 3; ++i) sub.push_back(v3(i));
    gx.push_back(m.substitute(sub));
  }
  for (const auto& fld : fields) {
    const auto op = PolyDiffOp::from_field(fld);
    EXPECT_EQ(op.apply(f.substitute(gx)), op.apply(f).substitute(gx));
  }
}

TEST(Fields, LeftInvarianceOnGrid) {
  // Grid X_j applied to f o L_g against the analytic (X_j f)(g x).
  const auto law = bch_group_law(group("heisenberg"));
  const auto fields = left_invariant_fields(law);
  const std::vector<double> g{0.2, -0.1, 0.15};
  const std::vector<double> c{1, 2, 1};
  auto f = [&](std::span<const double> x) { return std::exp(-(c[0] * x[0] * x[0] + c[1] * x[1] * x[1] + c[2] * x[2] * x[2])); };
  Grid grid({1, 1, 1}, {41, 41, 41});
  const auto fl = sample(grid, [&](std::span<const double> x) { return f(law.multiply(g, x)); });
  const auto mask = interior_mask(grid, 5);
  for (int j = 0; j < 3; ++j) {
    const auto lhs = apply_diffop(DiffOpExpr::field(3, j), fields, fl, {8, {}});
    const CompiledPolynomial a0(fields[j].coefficients[0]), a1(fields[j].coefficients[1]), a2(fields[j].coefficients[2]);
    double err = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!mask[i]) continue;
      const auto y = law.multiply(g, grid.node(i));
      const double fy = f(y);
      const double d[3] = {-2 * c[0] * y[0] * fy, -2 * c[1] * y[1] * fy, -2 * c[2] * y[2] * fy};
      const double xf = a0(y.data()) * d[0] + a1(y.data()) * d[1] + a2(y.data()) * d[2];
      err = std::max(err, std::abs(lhs[i] - xf));
    }
    EXPECT_LT(err, 1e-6) << j;
  }
}

TEST(Rockland, Examples) {
  const auto a1 = group("abelian1");
  const auto r1 = build_rockland_example(a1, 1);
  EXPECT_EQ(r1.degree, 2);
  EXPECT_EQ(r1.expr, -1 * power(DiffOpExpr::field(1, 0), 2));
  const auto h = group("heisenberg");
  const auto r = build_rockland_example(h, 2);
  EXPECT_EQ(r.degree, 4);
  EXPECT_EQ(r.expr.to_string(h.labels()), parse_expr("X^4 + Y^4 - T^2", h.labels()).to_string(h.labels()));
  EXPECT_EQ(r.provenance, Provenance::Example2Nu0);
  EXPECT_THROW(build_rockland_example(h, 1), std::invalid_argument);
}

TEST(Rockland, Sublaplacian) {
  const auto h = group("heisenberg");
  const auto l = sublaplacian(h);
  EXPECT_EQ(l.degree, 2);
  EXPECT_EQ(l.expr, parse_expr("-X^2 - Y^2", h.labels()));
  EXPECT_EQ(to_string(l.provenance), "sublaplacian-negative");
  const auto a = group("abelian3");
  EXPECT_EQ(sublaplacian(a).expr, parse_expr("-X1^2 - X2^2 - X3^2", a.labels()));
  EXPECT_THROW(sublaplacian(group("heisenberg358")), StratificationError);
}

TEST(Rockland, PowersAndDegrees) {
  const auto h = group("heisenberg");
  const auto sq = power(sublaplacian(h), 2);
  EXPECT_EQ(sq.degree, 4);
  EXPECT_EQ(sq.expr, parse_expr("(X^2 + Y^2)^2", h.labels()));
  const auto ht = group("heisenberg358");
  const auto info = homogeneous_degree(parse_expr("X^2 + Y^2", ht.labels()), ht.weights());
  EXPECT_FALSE(info.homogeneous());
  EXPECT_EQ(info.degrees, (std::set<long>{6, 10}));
  EXPECT_EQ(homogeneous_degree(parse_expr("T", h.labels()), h.weights()).degree(), 2);
  EXPECT_THROW(custom_operator(ht, "X^2 + Y^2"), std::invalid_argument);
  EXPECT_EQ(custom_operator(h, "X^2 + Y^2 - 1*T").degree, 2);
}

TEST(Transpose, Examples) {
  const auto h = group("heisenberg");
  const auto& lb = h.labels();
  for (int j = 0; j < 3; ++j) EXPECT_EQ(transpose(DiffOpExpr::field(3, j)), -1 * DiffOpExpr::field(3, j));
  const auto r = parse_expr("X^4 + Y^4 - T^2", lb);
  EXPECT_EQ(transpose(r), r);
  EXPECT_EQ(transpose(parse_expr("X Y", lb)), parse_expr("Y X", lb));
  const auto e = parse_expr("2 X Y T - 1/3 Y^3 + T", lb);
  EXPECT_EQ(transpose(transpose(e)), e);
  EXPECT_EQ(homogeneous_degree(transpose(r), h.weights()).degree(), 4);
}

TEST(Parser, GrammarAndErrors) {
  const std::vector<std::string> lb{"X", "Y", "T"};
  const auto e = parse_expr("X^4 + Y^4 - 1*T^2", lb);
  EXPECT_EQ(e.terms().size(), 3u);
  EXPECT_EQ(parse_expr("0.5 X - 1/2 X", lb).terms().size(), 0u);
  EXPECT_EQ(parse_expr("X*Y", lb), parse_expr("X Y", lb));
  try {
    parse_expr("X^2 + Q", lb);
    FAIL();
  } catch (const ExprParseError& err) {
    EXPECT_EQ(err.position(), 6u);
    EXPECT_NE(std::string(err.what()).find('^'), std::string::npos);
  }
  EXPECT_THROW(parse_expr("X^", lb), ExprParseError);
  EXPECT_THROW(parse_expr("(X + Y", lb), ExprParseError);
  const std::vector<std::string> many{"X1", "X12"};
  EXPECT_EQ(parse_expr("X12 X1", many).terms().front().word, (std::vector<int>{1, 0}));
}

TEST(Commutator, OfFieldsMatchesBracket) {
  const auto h = group("heisenberg");
  const auto fields = left_invariant_fields(bch_group_law(h));
  const auto c = commutator(DiffOpExpr::field(3, 0), DiffOpExpr::field(3, 1)) - DiffOpExpr::field(3, 2);
  EXPECT_TRUE(normal_form(c, fields).is_zero());
}

#include "gradecalc/algebra.hpp"
#include "gradecalc/group_io.hpp"

#include <gtest/gtest.h>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

using namespace gradecalc;

namespace {

GradedLieAlgebra heisenberg(std::vector<int> w = {1, 1, 2}) {
  return GradedLieAlgebra(std::move(w), {{0, 1, 2, make_rational(1)}}, {"X", "Y", "T"});
}

// Filiform algebra of step 7: [X_1, X_k] = X_{k+1}.
GradedLieAlgebra filiform7() {
  std::vector<BracketEntry> b;
  for (int k = 1; k < 7; ++k) b.push_back({0, k, k + 1, make_rational(1)});
  return GradedLieAlgebra({1, 1, 2, 3, 4, 5, 6, 7}, b);
}

Polynomial var(int i) { return Polynomial::variable(6, i); }

}  // namespace

TEST(Validate, HeisenbergIsValid) { EXPECT_TRUE(validate_algebra(heisenberg()).ok()); }

TEST(Validate, AbelianPlaneIsValid) { EXPECT_TRUE(validate_algebra(GradedLieAlgebra({1, 1}, {})).ok()); }

TEST(Validate, GradingViolationReportsTriple) {
  const auto rep = validate_algebra(heisenberg({1, 1, 1}));
  ASSERT_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.kind == "grading" && v.j == 0 && v.k == 1 && v.l == 2) found = true;
  EXPECT_TRUE(found);
}

TEST(Validate, JacobiViolation) {
  // Free step-3 algebra on two generators.
  GradedLieAlgebra a({1, 1, 2, 3, 3},
                     {{0, 1, 2, make_rational(1)}, {0, 2, 3, make_rational(1)}, {1, 2, 4, make_rational(1)}});
  EXPECT_TRUE(validate_algebra(a).ok());
  // [X2,X3]=X4, [X3,X1]=X5, [X1,X2]=X6, [X1,X4]=X7: the Jacobi sum on (X1,X2,X3) is X7.
  GradedLieAlgebra b({1, 1, 1, 2, 2, 2, 3}, {{1, 2, 3, make_rational(1)},
                                             {2, 0, 4, make_rational(1)},
                                             {0, 1, 5, make_rational(1)},
                                             {0, 3, 6, make_rational(1)}});
  const auto rep = validate_algebra(b);
  ASSERT_FALSE(rep.ok());
  for (const auto& v : rep.violations) EXPECT_EQ(v.kind, "jacobi");
}

TEST(Validate, DecreasingWeightsRejected) {
  GradedLieAlgebra a({2, 1}, {});
  bool weights = false;
  for (const auto& v : validate_algebra(a).violations) weights |= v.kind == "weights";
  EXPECT_TRUE(weights);
}

TEST(Algebra, DimensionStepStratification) {
  EXPECT_EQ(homogeneous_dimension(heisenberg()), 4);
  EXPECT_EQ(homogeneous_dimension(heisenberg({3, 5, 8})), 16);
  EXPECT_EQ(heisenberg().step(), 2);
  EXPECT_TRUE(heisenberg().is_stratified());
  EXPECT_FALSE(heisenberg({3, 5, 8}).is_stratified());
  EXPECT_EQ(filiform7().step(), 7);
}

TEST(Bch, HeisenbergLaw) {
  const auto law = bch_group_law(heisenberg());
  const auto& m = law.coordinates();
  EXPECT_EQ(m[0], var(0) + var(3));
  EXPECT_EQ(m[1], var(1) + var(4));
  EXPECT_EQ(m[2], var(2) + var(5) + make_rational(1, 2) * (var(0) * var(4) - var(1) * var(3)));
  const std::vector<double> a{1, 0, 0}, b{0, 1, 0};
  EXPECT_EQ(law.multiply(a, b), (Point{1, 1, 0.5}));
}

TEST(Bch, AbelianLawIsAddition) {
  const auto law = bch_group_law(GradedLieAlgebra({1, 1, 1}, {}));
  for (int l = 0; l < 3; ++l) EXPECT_EQ(law.coordinates()[l], Polynomial::variable(6, l) + Polynomial::variable(6, l + 3));
}

TEST(Bch, AnisotropicHeisenbergSharesPolynomials) {
  const auto a = bch_group_law(heisenberg());
  const auto b = bch_group_law(heisenberg({3, 5, 8}));
  EXPECT_EQ(a.coordinates(), b.coordinates());
  EXPECT_TRUE(check_group_law(b).ok());
  for (const auto& c : b.coordinates()) {
    for (long d : c.weighted_degrees(std::vector<int>{3, 5, 8, 3, 5, 8})) EXPECT_TRUE(d == 3 || d == 5 || d == 8);
  }
}

TEST(Bch, InvariantsHoldSymbolically) {
  for (const auto& name : {"abelian1", "abelian3", "heisenberg", "heisenberg358", "engel"}) {
    const auto law = bch_group_law(load_group(resolve_group_path(name)));
    const auto chk = check_group_law(law);
    EXPECT_TRUE(chk.identity) << name;
    EXPECT_TRUE(chk.associativity) << name;
    EXPECT_TRUE(chk.homogeneity) << name;
    EXPECT_TRUE(chk.inverse) << name;
  }
}

TEST(Bch, RandomRationalTriplesAssociate) {
  for (const auto& name : {"heisenberg", "heisenberg358", "engel"}) {
    const auto law = bch_group_law(load_group(resolve_group_path(name)));
    const std::size_t n = law.dim();
    boost::random::mt19937 rng(0xC0FFEE);
    boost::random::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    auto point = [&] {
      RationalPoint p(n);
      for (auto& v : p) v = make_rational(num(rng), den(rng));
      return p;
    };
    for (int trial = 0; trial < 1000; ++trial) {
      const auto x = point(), y = point(), z = point();
      ASSERT_EQ(law.multiply(law.multiply(x, y), z), law.multiply(x, law.multiply(y, z))) << name;
      const auto e = law.multiply(x, law.invert(x));
      for (const auto& c : e) ASSERT_EQ(c, 0) << name;
    }
  }
}

TEST(Bch, EngelStepThreeTerm) {
  // Engel: [X1,X2]=X3, [X1,X3]=X4; the degree-3 BCH term contributes x1^2 y2 / 12-type monomials.
  const auto law = bch_group_law(load_group(resolve_group_path("engel")));
  const auto& m4 = law.coordinates()[3];
  EXPECT_TRUE(m4.is_weighted_homogeneous(std::vector<int>{1, 1, 2, 3, 1, 1, 2, 3}, 3));
  EXPECT_GT(m4.terms().size(), 4u);
}

TEST(Bch, StepBeyondTableRejected) {
  EXPECT_TRUE(validate_algebra(filiform7()).ok());
  EXPECT_THROW(bch_group_law(filiform7()), UnsupportedStep);
}

TEST(Bch, InvalidAlgebraRejected) { EXPECT_THROW(bch_group_law(heisenberg({1, 1, 1})), std::invalid_argument); }

TEST(Bch, DynkinCoefficientsThroughDegreeThree) {
  // log(e^X e^Y) = X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12 + ...
  Rational one{}, xy{}, xxy{}, yxy{};
  for (const auto& w : bch_terms(3)) {
    if (w.letters.size() == 1) one += w.coefficient;
    if (w.letters == std::vector<bool>{false, true}) xy += w.coefficient;
    if (w.letters == std::vector<bool>{true, false}) xy -= w.coefficient;
    if (w.letters == std::vector<bool>{false, false, true}) xxy += w.coefficient;
    if (w.letters == std::vector<bool>{false, true, false}) xxy -= w.coefficient;
    if (w.letters == std::vector<bool>{true, false, true}) yxy += w.coefficient;
    if (w.letters == std::vector<bool>{true, true, false}) yxy -= w.coefficient;
  }
  EXPECT_EQ(one, 2);
  EXPECT_EQ(xy, make_rational(1, 2));
  EXPECT_EQ(xxy, make_rational(1, 12));
  EXPECT_EQ(yxy, make_rational(-1, 12));
}

TEST(GroupIo, ParsesShippedFiles) {
  const auto h = load_group(resolve_group_path("heisenberg"));
  EXPECT_EQ(h.weights(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(h.labels(), (std::vector<std::string>{"X", "Y", "T"}));
  EXPECT_EQ(h.structure_constant(0, 1, 2), 1);
  EXPECT_EQ(h.structure_constant(1, 0, 2), -1);
  EXPECT_EQ(parse_group(group_to_json(h)).weights(), h.weights());
}

TEST(GroupIo, MalformedJsonHasLineAndColumn) {
  try {
    parse_group("{\n  \"n\": 3,\n  \"weights\": [1, 1, 2\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GE(e.column(), 1u);
  }
}

TEST(GroupIo, DuplicateTripleRejected) {
  EXPECT_THROW(parse_group(R"({"n":3,"weights":[1,1,2],"brackets":[[1,2,3,1,1],[1,2,3,1,1]],"labels":["X","Y","T"]})"),
               ParseError);
}

TEST(GroupIo, ExactRationalsIngested) {
  const auto a = parse_group(R"({"n":3,"weights":[1,1,2],"brackets":[[1,2,3,2,3]],"labels":["A","B","C"]})");
  EXPECT_EQ(a.structure_constant(0, 1, 2), make_rational(2, 3));
  EXPECT_THROW(parse_group(R"({"n":2,"weights":[1,1],"brackets":[],"labels":["A"]})"), ParseError);
  EXPECT_THROW(parse_group(R"({"n":3,"weights":[1,1,2],"brackets":[[1,2,3,1,0]],"labels":["A","B","C"]})"),
               ParseError);
}

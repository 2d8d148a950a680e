#include "gradecalc/group_io.hpp"
#include "gradecalc/sobolev.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace gradecalc;

namespace {

struct Fixture {
  std::vector<LeftInvariantField> fields;
  std::shared_ptr<const SpectralPlan> plan;
};

Fixture make(const std::string& name, const Grid& g, int order = 4) {
  const auto law = bch_group_law(load_group(resolve_group_path(name)));
  PlanOptions po;
  po.order = order;
  return {left_invariant_fields(law),
          std::make_shared<const SpectralPlan>(SpectralPlan::build(law, sublaplacian(law.algebra()), g, po))};
}

const Grid kLine({10}, {201});
const Grid kHeis({2, 2, 1}, {13, 13, 17});

}  // namespace

TEST(Sobolev, ZeroOrderIsLebesgue) {
  const auto fx = make("abelian1", kLine);
  const auto fam = bump_family(kLine, std::vector<int>{1}, 5);
  for (double p : {1.5, 2.0, 3.0}) {
    SobolevNormSpec s{fx.plan, 0, p};
    EXPECT_EQ(sobolev_norm(s, fam[0]), lp_norm(fam[0], p));
  }
}

TEST(Sobolev, FourierMultiplierOnTheLine) {
  // f = exp(-x^2/2) has unitary transform exp(-xi^2/2), so ||(1 + xi^2) f^||_2^2 = 11 sqrt(pi) / 4.
  const auto fx = make("abelian1", kLine, 8);
  const auto f = sample(kLine, [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2); });
  SobolevNormSpec s{fx.plan, 2, 2};
  EXPECT_NEAR(sobolev_norm(s, f) / std::sqrt(11 * std::sqrt(std::numbers::pi) / 4), 1, 1e-4);
}

TEST(Sobolev, IntegerFlavorRequiresMultipleOfDegree) {
  const auto fx = make("heisenberg", kHeis);
  const auto f = bump_family(kHeis, std::vector<int>{1, 1, 2}, 1, {.count = 1})[0];
  SobolevNormSpec s{fx.plan, 3, 2, NormFlavor::IntegerX, fx.fields};
  EXPECT_THROW(sobolev_norm(s, f), FlavorError);
  s.s = 2;
  EXPECT_GT(sobolev_norm(s, f), lp_norm(f, 2));
  EXPECT_EQ(parse_flavor("spectral"), NormFlavor::Inhomogeneous);
  EXPECT_EQ(parse_flavor("integer"), NormFlavor::IntegerX);
  EXPECT_THROW(parse_flavor("sideways"), FlavorError);
}

TEST(Sobolev, HomogeneousMultiIndices) {
  const std::vector<int> w{1, 1, 2};
  const auto a = homogeneous_multi_indices(w, 2);
  // X^2, XY, Y^2, T.
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(homogeneous_multi_indices(std::vector<int>{3, 5, 8}, 10).size(), 1u);
}

TEST(Sobolev, FamilyIsDeterministic) {
  const std::vector<int> w{1, 1, 2};
  const auto a = bump_family(kHeis, w, 1), b = bump_family(kHeis, w, 1);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].values(), b[i].values());
  const auto c = bump_family(kHeis, w, 1, {.seed = 7});
  EXPECT_NE(a[3].values(), c[3].values());
}

TEST(Probes, IdenticalSpecsGiveUnitRatio) {
  const auto fx = make("heisenberg", kHeis);
  const auto fam = bump_family(kHeis, std::vector<int>{1, 1, 2}, 1, {.count = 10});
  SobolevNormSpec s{fx.plan, 2, 2};
  const auto r = equivalence_probe(s, s, fam);
  EXPECT_EQ(r.min, 1);
  EXPECT_EQ(r.max, 1);
  EXPECT_EQ(r.ratios.size(), 10u);
}

TEST(Probes, EmbeddingRefusals) {
  const auto fx = make("heisenberg", kHeis);
  const auto fam = bump_family(kHeis, std::vector<int>{1, 1, 2}, 1, {.count = 2});
  SobolevNormSpec s{fx.plan};
  EXPECT_THROW(embedding_probe(2, 2, 0, 0, s, fam), ProbeError);
  EXPECT_THROW(embedding_probe(2, 4, 0, 1.5, s, fam), ProbeError);
  EXPECT_THROW(embedding_probe(0.5, 4, 0, 1, s, fam), ProbeError);
  EXPECT_THROW(sup_embedding_probe(2, 2, s, fam), ProbeError);
  EXPECT_NO_THROW(sup_embedding_probe(2, 3, s, fam, {1.0}));
}

TEST(Probes, InterpolationAndDuality) {
  const auto fx = make("heisenberg", kHeis);
  const auto fam = bump_family(kHeis, std::vector<int>{1, 1, 2}, 1, {.count = 20});
  EXPECT_LE(interpolation_inequality_excess(*fx.plan, 0.7, 2.3, fam), 1e-10);
  EXPECT_LE(duality_defect(*fx.plan, 1.5, fam), 1e-10);
}

TEST(Probes, BumpMultiplicationByOne) {
  const auto fx = make("abelian1", kLine);
  const auto fam = bump_family(kLine, std::vector<int>{1}, 5, {.count = 8});
  const auto ones = sample(kLine, [](std::span<const double>) { return 1.0; });
  const auto r = bump_multiplication_probe(ones, {fx.plan, 2, 2}, fam);
  EXPECT_EQ(r.min, 1);
  EXPECT_EQ(r.max, 1);
}

TEST(Probes, DilatedSpecMatchesRescaledPlan) {
  const auto fx = make("heisenberg", kHeis);
  SobolevNormSpec s{fx.plan, 2, 2};
  const auto d = s.dilated(2);
  EXPECT_EQ(d.plan->grid(), kHeis.dilated(std::vector<int>{1, 1, 2}, 0.5));
  EXPECT_EQ(d.s, s.s);
}

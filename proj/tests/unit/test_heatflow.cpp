#include "gradecalc/group_io.hpp"
#include "gradecalc/heatflow.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace gradecalc;

namespace {

struct Setup {
  GroupLaw law;
  std::vector<LeftInvariantField> fields;
  RocklandSpec spec;
};

Setup setup(const std::string& name) {
  auto law = bch_group_law(load_group(resolve_group_path(name)));
  auto fields = left_invariant_fields(law);
  auto spec = sublaplacian(law.algebra());
  return {std::move(law), std::move(fields), std::move(spec)};
}

double gaussian(double x, double t) { return std::exp(-x * x / (4 * t)) / std::sqrt(4 * std::numbers::pi * t); }

}  // namespace

TEST(HeatFlow, GaussianOnTheLine) {
  const auto s = setup("abelian1");
  const auto plan = SpectralPlan::build(s.law, s.spec, Grid({8}, {321}), {.order = 6});
  for (double t : {0.05, 0.3, 1.0}) {
    const auto h = heat_kernel(plan, t);
    double err = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double x = h.grid().node(i)[0];
      if (std::abs(x) < 4) err = std::max(err, std::abs(h[i] - gaussian(x, t)));
    }
    EXPECT_LT(err / gaussian(0, t), 1e-4) << t;
    EXPECT_LT(mass_defect(h), 1e-12);
  }
}

TEST(HeatFlow, DirichletSpectrum) {
  // Second-order stencil with homogeneous Dirichlet data: lambda_k = (2 - 2 cos(k pi/(n+1))) / h^2.
  const auto s = setup("abelian1");
  const int n = 41;
  const Grid g({2}, {n});
  PlanOptions po;
  po.order = 2;
  po.periodic_free_axes = false;
  const auto plan = SpectralPlan::from_operator(normal_form(s.spec.expr, s.fields), g, 2, {1}, po);
  const auto ev = plan.eigenvalues();
  ASSERT_EQ(ev.size(), static_cast<std::size_t>(n));
  const double h = g.spacing(0);
  for (int k = 1; k <= n; ++k) {
    const double exact = (2 - 2 * std::cos(k * std::numbers::pi / (n + 1))) / (h * h);
    EXPECT_NEAR(ev[k - 1], exact, 1e-9 * exact);
  }
  EXPECT_TRUE(plan.positive());
  // Dirichlet loss of mass grows with time.
  EXPECT_LT(mass_defect(heat_kernel(plan, 0.05)), mass_defect(heat_kernel(plan, 0.5)));
}

TEST(HeatFlow, MatrixIdentity) {
  const Grid g({1, 1}, {5, 7});
  const auto plan = SpectralPlan::from_matrix(Eigen::MatrixXd::Identity(35, 35), g, 2, {1, 1});
  const auto f = sample(g, [](std::span<const double> x) { return 1 + x[0] - x[1] * x[1]; });
  const auto e = heat_apply(plan, f, 0.7);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(e[i], std::exp(-0.7) * f[i], 1e-14);
  EXPECT_EQ(heat_apply(plan, f, 0).values(), f.values());
}

TEST(HeatFlow, ExactCompositionOnHeisenberg) {
  const auto s = setup("heisenberg");
  const auto plan = SpectralPlan::build(s.law, s.spec, Grid({2, 2, 1}, {13, 13, 17}), {.order = 4});
  EXPECT_TRUE(plan.positive());
  EXPECT_LT(plan.reconstruction_residual(), 1e-10);
  const auto f = heat_kernel(plan, 0.05);
  const auto a = heat_apply(plan, heat_apply(plan, f, 0.1), 0.2);
  const auto b = heat_apply(plan, f, 0.3);
  EXPECT_LT(lp_distance(a, b, 2), 1e-10 * lp_norm(b, 2));
}

TEST(HeatFlow, RescaledPlanScalesEigenvalues) {
  const auto s = setup("heisenberg");
  const auto plan = SpectralPlan::build(s.law, s.spec, Grid({2, 2, 1}, {11, 11, 13}));
  const auto r = plan.rescaled(2.0);
  EXPECT_EQ(r.grid(), plan.grid().dilated(plan.weights(), 2.0));
  const auto a = plan.eigenvalues(), b = r.eigenvalues();
  for (std::size_t i = 0; i < a.size(); i += 97) EXPECT_NEAR(b[i], a[i] / 4, 1e-12 * std::abs(a.back()));
}

TEST(HeatFlow, DefectHelpers) {
  const Grid g({3}, {61});
  const auto even = sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
  EXPECT_LT(symmetry_defect(even), 1e-15);
  const auto odd = sample(g, [](std::span<const double> x) { return x[0] * std::exp(-x[0] * x[0]); });
  EXPECT_NEAR(symmetry_defect(odd), 2.0, 1e-12);
  EXPECT_NEAR(mass_defect((1 / haar_integrate(even)) * even), 0, 1e-14);
}

TEST(HeatFlow, SmallestUsableTime) {
  const auto s = setup("abelian1");
  const Grid g({2}, {41});
  const auto plan = SpectralPlan::build(s.law, s.spec, g);
  EXPECT_NEAR(smallest_usable_time(plan), std::pow(3 * g.spacing(0), 2), 1e-15);
}

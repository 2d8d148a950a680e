#pragma once

#include "gradecalc/heatflow.hpp"

#include <vector>

namespace gradecalc {

double gamma_function(double x);

// Composite Gauss-Legendre rule in s = log t on [log t_lo, log t_hi]; weights include dt = t ds.
struct TimeQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
TimeQuadrature log_time_quadrature(double t_lo, double t_hi, double panel_width = 1.0, int points_per_panel = 8);

struct LadderOptions {
  // Lower end of the discrete ladder; 0 selects 1e-4 * (min spacing)^nu.
  double t_floor = 0;
  // Upper cap for the containment search.
  double t_cap = 50;
  // A kernel counts as contained while at most this fraction of its L1 mass lies in the
  // outer `containment_layer` nodes.
  double containment_tolerance = 1e-7;
  int containment_layer = 2;
  double panel_width = 1.0;
  int points_per_panel = 8;
  int tail_points = 48;
  // Nodes within this many grid steps (Chebyshev index distance) of 0 are unreliable.
  int exclusion_steps = 3;
};

struct PotentialKernel {
  double a = 0;
  GridFunction values;          // NaN sentinel at the origin for Riesz kernels
  std::vector<char> reliable;   // outside the exclusion zone
  double t_floor = 0;
  double containment_time = 0;  // largest discretely propagated time
  std::size_t ladder_nodes = 0;
};

// I_a = Gamma(a/nu)^{-1} int t^{a/nu-1} h_t dt, 0 < a < Q.
PotentialKernel riesz_kernel(const SpectralPlan& plan, double a, const LadderOptions& opts = {});
// B_a = Gamma(a/nu)^{-1} int t^{a/nu-1} e^{-t} h_t dt, a > 0.
PotentialKernel bessel_kernel(const SpectralPlan& plan, double a, const LadderOptions& opts = {});

enum class PowerBase { OnePlus, Bare };  // (I+R)^{s/nu} or R^{s/nu}

// V g(L) V^* f with g = (1+l)^{s/nu} or l^{s/nu}. For the bare base, eigenvalues below
// zero_threshold * lambda_max are clamped to 0 (s >= 0) or projected out (s < 0).
GridFunction fractional_apply(const SpectralPlan& plan, double s, const GridFunction& f,
                              PowerBase base = PowerBase::OnePlus, double zero_threshold = 1e-10);

// (I+R)^{-theta} f = Gamma(theta)^{-1} int_0^inf t^{theta-1} e^{-t} e^{-tR} f dt, theta = a/nu,
// evaluated by quadrature over heat propagations.
GridFunction balakrishnan_bessel_apply(const SpectralPlan& plan, double a, const GridFunction& f,
                                       double t_lo = 1e-8, double t_hi = 50);
// R^{-theta} f = Gamma(theta)^{-1} lim_N int_0^N t^{theta-1} e^{-tR} f dt, 0 < theta < 1.
GridFunction balakrishnan_riesz_apply(const SpectralPlan& plan, double a, const GridFunction& f, double t_hi,
                                      double t_lo = 1e-8);

}  // namespace gradecalc

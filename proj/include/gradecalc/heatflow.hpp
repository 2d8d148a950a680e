#pragma once

#include "gradecalc/convolution.hpp"
#include "gradecalc/spectral_plan.hpp"

#include <vector>

namespace gradecalc {

// e^{-tR} f; t = 0 is the identity.
GridFunction heat_apply(const SpectralPlan& plan, const GridFunction& f, double t);
// h_t: propagated discrete delta of mass 1 at the origin.
GridFunction heat_kernel(const SpectralPlan& plan, double t);

struct HeatKernelFamily {
  std::vector<double> times;
  std::vector<GridFunction> kernels;
};
HeatKernelFamily heat_kernel_family(const SpectralPlan& plan, const std::vector<double>& times);

// Smallest resolved time (3 max spacing)^nu.
double smallest_usable_time(const SpectralPlan& plan);

// |int h_t - 1|.
double mass_defect(const GridFunction& h);
// ||h(x) - h(x^{-1})||_inf / ||h||_inf; inversion is x -> -x in exponential coordinates.
double symmetry_defect(const GridFunction& h);
// ||h_t * h_s - h_{t+s}||_1, convolution with multilinear interpolation.
double semigroup_defect(const GroupLaw& law, const GridFunction& ht, const GridFunction& hs,
                        const GridFunction& hts, double relative_cutoff = 1e-12);

// Relative L1 defect of h_t against the self-similar image of h_ref:
// h_t(x) = (ref/t)^{Q/nu} h_ref(D_{(ref/t)^{1/nu}} x), h_ref interpolated (cubic).
double self_similarity_defect(const GridFunction& ht, double t, const GridFunction& href, double ref,
                              std::span<const int> weights, int degree);

// Fraction of int |h| carried by nodes within `layer` steps of a non-periodic face or, for
// periodic axes, by the outer `layer` nodes (wrap-around region).
double boundary_mass_fraction(const GridFunction& h, int layer);

}  // namespace gradecalc

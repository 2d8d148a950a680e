#pragma once

#include "gradecalc/algebra.hpp"
#include "gradecalc/grid.hpp"

namespace gradecalc {

struct ConvolutionOptions {
  int interpolation_order = 1;
  // Skip source nodes with |f(y)| <= relative_cutoff * max|f|; 0 keeps every nonzero node.
  double relative_cutoff = 0.0;
};

// (f*g)(x) = sum_y f(y) g(y^{-1} x) dV with g interpolated and zero outside the box.
GridFunction group_convolve(const GroupLaw& law, const GridFunction& f, const GridFunction& g,
                            const ConvolutionOptions& opts = {});

}  // namespace gradecalc

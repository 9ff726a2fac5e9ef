#pragma once

#include <optional>
#include <vector>

#include "critpt/laurent.hpp"
#include "critpt/mc.hpp"

namespace critpt {

// Geometry of a compact curve carrying the line bundle: genus, degree c1(L),
// and the Calabi integral int rho^2 omega. The Calabi value is stored as an
// exact rational multiple of pi (the model cases; e.g. the round metric on
// the projective line with c1 = 1 has 4*pi). An arbitrary real value can be
// supplied instead, which marks the N^{-1} coefficient as non-exact.
struct CurveGeometry {
  int genus = 0;
  int degree = 1;
  BigRational calabi_over_pi{0};
  std::optional<double> calabi_inexact;  // set => overrides calabi_over_pi

  double calabi() const {
    return calabi_inexact ? *calabi_inexact : to_double(calabi_over_pi) * kPi;
  }
};

// Three-term expansion of the expected number of critical points of Morse
// index q (1 = saddles, 2 = local maxima) on a curve:
//   q=1:  (4/3) c1 N + (8/9)(2g-2) + (calabi/(27 pi)) N^{-1}
//   q=2:  (1/3) c1 N - (1/9)(2g-2) + (calabi/(27 pi)) N^{-1}
LaurentSeries curve_expansion(const CurveGeometry& geom, int q);

// Sum of the two strata: (5/3) c1 N + (7/9)(2g-2) + (2 calabi/(27 pi)) N^{-1}.
LaurentSeries curve_expansion_total(const CurveGeometry& geom);

// Topological/metric inputs of the general three-term expansion of the
// expected count in dimension m (numbers, already integrated):
//   c1(L)^m, c1(M).c1(L)^{m-1}, c1(M)^2.c1(L)^{m-2}, c2(M).c1(L)^{m-2},
//   and the Calabi functional int rho^2 dV.
struct ExpansionTopology {
  double c1L_m = 0.0;
  double c1M_c1L = 0.0;
  double c1M2_c1L = 0.0;
  double c2M_c1L = 0.0;
  double calabi = 0.0;
};

// Universal constants entering the expansion; those not derivable in-scope
// (beta2q', beta2q'') are accepted as opaque inputs and may be omitted only
// when their topological multiplier vanishes.
struct ExpansionConstants {
  std::optional<double> b0q;
  std::optional<double> beta1q;
  std::optional<double> beta2q;
  std::optional<double> beta2q_c1sq;   // beta'_2q
  std::optional<double> beta2q_c2;     // beta''_2q
};

struct CountExpansion {
  LaurentSeries series;  // N^m, N^{m-1}, N^{m-2} terms
  // N^{m-2} coefficient split by origin
  double calabi_term = 0.0;
  double c1sq_term = 0.0;
  double c2_term = 0.0;
};

// Assembles
//   [pi^m b0q / m!  c1(L)^m] N^m
// + [pi^m beta1q / (m-1)!  c1(M).c1(L)^{m-1}] N^{m-1}
// + [beta2q Calabi + beta'_2q c1(M)^2.c1(L)^{m-2} + beta''_2q c2(M).c1(L)^{m-2}] N^{m-2}.
// Throws naming the slot if a needed constant is missing.
CountExpansion general_count_expansion(int m, const ExpansionTopology& topo, const ExpansionConstants& constants,
                                   int q);

// Weighted least squares of N^{-m} * value against {1, N^{-1}, N^{-2}, ...}
// (n_terms basis functions, integer powers only). Weights come from the
// estimates' standard errors; exact inputs (all zero errors) fall back to an
// unweighted fit. Returns float coefficients with propagated errors.
LaurentSeries fit_expansion(const std::vector<std::pair<double, MCEstimate>>& densities,
                            int model_degree, int n_terms);

}  // namespace critpt

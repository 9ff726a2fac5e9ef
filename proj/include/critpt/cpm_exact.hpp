#pragma once

#include <vector>

#include "critpt/laurent.hpp"
#include "critpt/polynomial.hpp"

namespace critpt {

// Signed monomial expansion of |prod_j lambda_j| * Delta(lambda) restricted
// to the ordered region Y_p = {l_1 > ... > l_p > 0 > l_{p+1} > ... > l_m},
// as a polynomial in the lambda_j themselves.
struct SignedMonomialSum {
  struct Term {
    BigRational coeff;
    std::vector<int> exponents;  // length m, nonnegative
  };
  std::vector<Term> terms;
};

// Expansion of the Morse-stratum integrand on Y_p (p = 2m - q); like
// monomials are combined.
SignedMonomialSum expand_integrand(int m, int p);

// Exact value of  int_{Y_p} prod_j lambda_j^{a_j} e^{-sum lambda_j}
//                 * (e^{c lambda_m} if p < m)  d lambda
// with c = ((m+2)N - 2)/N, as a rational function of N. Signs from the
// negative coordinates are included. Computed by the gap substitution
// (difference coordinates), which turns every factor into
// int_0^infty t^a e^{-beta t} dt = a!/beta^{a+1} with beta affine in c.
RationalFunctionN ordered_region_integral(const std::vector<int>& exponents, int m, int p);

// Expected number of critical points of Morse index q on projective space
// with the Fubini-Study metric, exact in the tensor power N (valid N >= 2).
RationalFunctionN cpm_expected_number(int m, int q);

// Sum over all Morse indices, reduced.
RationalFunctionN cpm_total(int m);

// The Chern-class polynomial sum_{j=0}^m (-1)^j C(m+1, j) N^{m-j}.
PolynomialN chern_polynomial(int m);

// Alternating sum over Morse indices. Must reduce to chern_polynomial(m)
// exactly; a mismatch throws with both sides printed.
RationalFunctionN chern_check(int m);

// Leading terms of f at N -> infinity: polynomial long division followed by a
// geometric expansion of the remainder. Exact coefficients.
LaurentSeries series_expand(const RationalFunctionN& f, int terms);

}  // namespace critpt

#pragma once

#include <cmath>
#include <vector>

#include "critpt/rational.hpp"

namespace critpt {

// Truncated expansion sum_k c_k N^{top_degree - k}. Coefficients are either
// exact rationals or floats with an uncertainty; the provenance is flagged
// per coefficient so exact and fitted series are never silently mixed.
struct LaurentCoeff {
  bool is_exact = true;
  BigRational exact{0};
  double value = 0.0;      // always valid (double of `exact` when exact)
  double std_error = 0.0;  // only meaningful when !is_exact

  static LaurentCoeff from_exact(BigRational r) {
    LaurentCoeff c;
    c.is_exact = true;
    c.value = to_double(r);
    c.exact = std::move(r);
    return c;
  }
  static LaurentCoeff from_value(double v, double err = 0.0) {
    LaurentCoeff c;
    c.is_exact = false;
    c.value = v;
    c.std_error = err;
    return c;
  }
};

struct LaurentSeries {
  int top_degree = 0;
  std::vector<LaurentCoeff> coeffs;  // descending powers, starting at top_degree

  int truncation_order() const { return static_cast<int>(coeffs.size()); }

  const LaurentCoeff& coeff_of_power(int d) const {
    return coeffs.at(static_cast<std::size_t>(top_degree - d));
  }

  static LaurentSeries exact(int top, std::vector<BigRational> descending) {
    LaurentSeries s;
    s.top_degree = top;
    s.coeffs.reserve(descending.size());
    for (auto& r : descending) s.coeffs.push_back(LaurentCoeff::from_exact(std::move(r)));
    return s;
  }

  double eval(double n) const {
    double acc = 0.0;
    for (int k = 0; k < truncation_order(); ++k)
      acc += coeffs[static_cast<std::size_t>(k)].value *
             std::pow(n, static_cast<double>(top_degree - k));
    return acc;
  }
};

}  // namespace critpt

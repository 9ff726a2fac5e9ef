#include "critpt/curve.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace critpt {

namespace {

LaurentSeries curve_series(const CurveGeometry& geom, const BigRational& lead,
                           const BigRational& euler_coeff, const BigRational& calabi_coeff) {
  const BigRational chi(2 * geom.genus - 2);
  LaurentSeries s;
  s.top_degree = 1;
  s.coeffs.push_back(LaurentCoeff::from_exact(lead * geom.degree));
  s.coeffs.push_back(LaurentCoeff::from_exact(euler_coeff * chi));
  if (geom.calabi_inexact) {
    s.coeffs.push_back(
        LaurentCoeff::from_value(to_double(calabi_coeff) * *geom.calabi_inexact / kPi));
  } else {
    s.coeffs.push_back(LaurentCoeff::from_exact(calabi_coeff * geom.calabi_over_pi));
  }
  return s;
}

}  // namespace

LaurentSeries curve_expansion(const CurveGeometry& geom, int q) {
  switch (q) {
    case 1:
      return curve_series(geom, rat(4, 3), rat(8, 9), rat(1, 27));
    case 2:
      return curve_series(geom, rat(1, 3), rat(-1, 9), rat(1, 27));
    default:
      throw numeric_error("curve_expansion: q must be 1 (saddles) or 2 (maxima)");
  }
}

LaurentSeries curve_expansion_total(const CurveGeometry& geom) {
  return curve_series(geom, rat(5, 3), rat(7, 9), rat(2, 27));
}

CountExpansion general_count_expansion(int m, const ExpansionTopology& topo, const ExpansionConstants& constants,
                                   int q) {
  if (m < 1) throw numeric_error("general_count_expansion needs m >= 1");
  if (q < m || q > 2 * m) throw numeric_error("general_count_expansion needs m <= q <= 2m");

  auto need = [](const std::optional<double>& c, double multiplier, const char* slot) {
    if (!c) {
      if (multiplier == 0.0) return 0.0;
      throw numeric_error(std::string("general_count_expansion: missing constant '") + slot +
                          "' with nonzero multiplier");
    }
    return *c * multiplier;
  };

  double fact_m = 1.0, fact_m1 = 1.0;
  for (int j = 2; j <= m; ++j) fact_m *= j;
  for (int j = 2; j <= m - 1; ++j) fact_m1 *= j;
  const double pim = std::pow(kPi, m);

  CountExpansion out;
  const double lead = need(constants.b0q, pim / fact_m * topo.c1L_m, "b0q");
  const double sub = need(constants.beta1q, pim / fact_m1 * topo.c1M_c1L, "beta1q");
  out.calabi_term = need(constants.beta2q, topo.calabi, "beta2q");
  out.c1sq_term = need(constants.beta2q_c1sq, topo.c1M2_c1L, "beta2q'");
  out.c2_term = need(constants.beta2q_c2, topo.c2M_c1L, "beta2q''");

  out.series.top_degree = m;
  out.series.coeffs.push_back(LaurentCoeff::from_value(lead));
  out.series.coeffs.push_back(LaurentCoeff::from_value(sub));
  out.series.coeffs.push_back(
      LaurentCoeff::from_value(out.calabi_term + out.c1sq_term + out.c2_term));
  return out;
}

LaurentSeries fit_expansion(const std::vector<std::pair<double, MCEstimate>>& densities,
                            int model_degree, int n_terms) {
  const int n = static_cast<int>(densities.size());
  if (n_terms < 1) throw numeric_error("fit_expansion: n_terms must be >= 1");
  if (n < n_terms)
    throw numeric_error("fit_expansion: need at least " + std::to_string(n_terms) +
                        " distinct N values, got " + std::to_string(n));

  bool weighted = true;
  for (const auto& [np, est] : densities) {
    if (!std::isfinite(est.mean)) throw numeric_error("fit_expansion: non-finite input");
    if (est.std_error <= 0.0) weighted = false;
  }

  Eigen::MatrixXd design(n, n_terms);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const double np = densities[static_cast<std::size_t>(i)].first;
    const auto& est = densities[static_cast<std::size_t>(i)].second;
    const double scale = std::pow(np, -model_degree);
    y[i] = est.mean * scale;
    const double sigma = weighted ? est.std_error * scale : 1.0;
    w[i] = 1.0 / sigma;
    for (int k = 0; k < n_terms; ++k) design(i, k) = std::pow(np, -k);
  }

  Eigen::MatrixXd dw = w.asDiagonal() * design;
  Eigen::VectorXd yw = w.asDiagonal() * y;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dw);
  if (qr.rank() < n_terms)
    throw numeric_error("fit_expansion: rank-deficient design (too few distinct N values)");
  Eigen::VectorXd beta = qr.solve(yw);

  // covariance of the coefficients: (X^T W X)^{-1} with W = diag(1/sigma^2);
  // for unweighted exact data the reported errors are zero
  Eigen::MatrixXd xtwx = dw.transpose() * dw;
  Eigen::MatrixXd cov = xtwx.inverse();

  LaurentSeries s;
  s.top_degree = 0;
  for (int k = 0; k < n_terms; ++k) {
    double err = weighted ? std::sqrt(std::max(0.0, cov(k, k))) : 0.0;
    s.coeffs.push_back(LaurentCoeff::from_value(beta[k], err));
  }
  return s;
}

}  // namespace critpt

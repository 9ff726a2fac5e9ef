#include <doctest.h>

#include <cmath>

#include "critpt/cpm_exact.hpp"
#include "critpt/curve.hpp"
#include "critpt/gauss_integrals.hpp"
#include "critpt/reference.hpp"

using namespace critpt;

namespace {

CurveGeometry round_sphere() {
  CurveGeometry geom;
  geom.genus = 0;
  geom.degree = 1;
  geom.calabi_over_pi = BigRational(4);
  return geom;
}

}  // namespace

TEST_CASE("curve expansion closed forms") {
  {
    LaurentSeries s = curve_expansion(round_sphere(), 1);
    CHECK(s.top_degree == 1);
    CHECK(s.coeffs[0].exact == rat(4, 3));
    CHECK(s.coeffs[1].exact == rat(-16, 9));
    CHECK(s.coeffs[2].exact == rat(4, 27));
  }
  {
    LaurentSeries s = curve_expansion(round_sphere(), 2);
    CHECK(s.coeffs[0].exact == rat(1, 3));
    CHECK(s.coeffs[1].exact == rat(2, 9));
    CHECK(s.coeffs[2].exact == rat(4, 27));
  }
  {
    // flat torus factor: no Euler term, no Calabi term
    CurveGeometry torus;
    torus.genus = 1;
    torus.degree = 1;
    torus.calabi_over_pi = BigRational(0);
    LaurentSeries s = curve_expansion_total(torus);
    CHECK(s.coeffs[0].exact == rat(5, 3));
    CHECK(s.coeffs[1].exact == rat(0));
    CHECK(s.coeffs[2].exact == rat(0));
  }
  CHECK_THROWS_AS(curve_expansion(round_sphere(), 3), numeric_error);
}

TEST_CASE("curve expansion ties exactly to the exact rational counts") {
  for (int q = 1; q <= 2; ++q) {
    LaurentSeries series = series_expand(cpm_expected_number(1, q), 3);
    LaurentSeries curve = curve_expansion(round_sphere(), q);
    REQUIRE(series.top_degree == curve.top_degree);
    for (int k = 0; k < 3; ++k)
      CHECK(series.coeffs[static_cast<std::size_t>(k)].exact ==
            curve.coeffs[static_cast<std::size_t>(k)].exact);
  }
  LaurentSeries total = series_expand(cpm_total(1), 3);
  LaurentSeries curve_total = curve_expansion_total(round_sphere());
  for (int k = 0; k < 3; ++k)
    CHECK(total.coeffs[static_cast<std::size_t>(k)].exact ==
          curve_total.coeffs[static_cast<std::size_t>(k)].exact);
}

TEST_CASE("the 1/N coefficient is shared by the two strata") {
  RngStream dummy(0, 0);
  (void)dummy;
  for (int g : {0, 1, 2}) {
    CurveGeometry geom;
    geom.genus = g;
    geom.degree = 3;
    geom.calabi_over_pi = BigRational(7, 2);
    LaurentSeries a = curve_expansion(geom, 1);
    LaurentSeries b = curve_expansion(geom, 2);
    CHECK(a.coeffs[2].exact == b.coeffs[2].exact);
  }
}

TEST_CASE("general count expansion assembly") {
  {
    // m=1 with the published constants reproduces the curve expansion
    ExpansionTopology topo;
    topo.c1L_m = 1.0;          // c1(L)
    topo.c1M_c1L = 2.0;        // c1(M) of the sphere
    topo.calabi = 4.0 * kPi;   // round metric
    ExpansionConstants constants;
    constants.b0q = 4.0 / (3.0 * kPi);
    constants.beta1q = -8.0 / (9.0 * kPi);
    constants.beta2q = 1.0 / (27.0 * kPi);
    CountExpansion e = general_count_expansion(1, topo, constants, 1);
    CHECK(e.series.coeffs[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(e.series.coeffs[1].value == doctest::Approx(-16.0 / 9.0).epsilon(1e-12));
    CHECK(e.series.coeffs[2].value == doctest::Approx(4.0 / 27.0).epsilon(1e-12));
  }
  {
    // all constants zero: zero series
    ExpansionTopology topo;
    topo.c1L_m = 1.0;
    ExpansionConstants constants;
    constants.b0q = 0.0;
    constants.beta1q = 0.0;
    constants.beta2q = 0.0;
    constants.beta2q_c1sq = 0.0;
    constants.beta2q_c2 = 0.0;
    CountExpansion e = general_count_expansion(2, topo, constants, 3);
    for (const auto& c : e.series.coeffs) CHECK(c.value == 0.0);
  }
  {
    // flat-factor model at m=2: only the Calabi slot contributes at N^{m-2}
    ExpansionTopology topo;
    topo.c1L_m = 1.0;
    topo.calabi = 2.5;
    ExpansionConstants constants;
    constants.b0q = 0.1;
    constants.beta1q = 0.0;
    constants.beta2q = reference::beta2q(2, 2);
    CountExpansion e = general_count_expansion(2, topo, constants, 2);
    CHECK(e.series.coeffs[2].value ==
          doctest::Approx(reference::beta2q(2, 2) * 2.5).epsilon(1e-12));
    CHECK(e.calabi_term == doctest::Approx(reference::beta2q(2, 2) * 2.5));
    CHECK(e.c1sq_term == 0.0);
  }
  {
    // a missing constant with a nonzero multiplier names its slot
    ExpansionTopology topo;
    topo.c1L_m = 1.0;
    topo.c1M2_c1L = 1.0;
    ExpansionConstants constants;
    constants.b0q = 0.5;
    constants.beta1q = 0.0;
    constants.beta2q = 0.0;
    bool threw = false;
    try {
      general_count_expansion(2, topo, constants, 2);
    } catch (const numeric_error& e) {
      threw = true;
      CHECK(std::string(e.what()).find("beta2q'") != std::string::npos);
    }
    CHECK(threw);
  }
}

TEST_CASE("fit_expansion recovers exact truncated-series coefficients") {
  LaurentSeries truth = series_expand(cpm_total(1), 3);
  std::vector<std::pair<double, MCEstimate>> data;
  for (double np : {10.0, 20.0, 40.0, 80.0}) {
    MCEstimate e;
    e.mean = truth.eval(np) / kPi;
    data.emplace_back(np, e);
  }
  LaurentSeries fit = fit_expansion(data, 1, 3);
  for (int k = 0; k < 3; ++k) {
    const double target = truth.coeffs[static_cast<std::size_t>(k)].value / kPi;
    CHECK(std::abs(fit.coeffs[static_cast<std::size_t>(k)].value - target) <= 1e-9);
  }

  // on the full rational function the omitted tail biases the trailing
  // coefficient at the known ~1e-3 level, while the leading one stays tight
  std::vector<std::pair<double, MCEstimate>> full;
  RationalFunctionN f = cpm_total(1);
  for (double np : {10.0, 20.0, 40.0, 80.0}) {
    MCEstimate e;
    e.mean = f.eval(np) / kPi;
    full.emplace_back(np, e);
  }
  LaurentSeries fit_full = fit_expansion(full, 1, 3);
  CHECK(std::abs(fit_full.coeffs[0].value - 5.0 / (3.0 * kPi)) < 2e-5);
  CHECK(std::abs(fit_full.coeffs[2].value - truth.coeffs[2].value / kPi) < 2e-2);
  CHECK(std::abs(fit_full.coeffs[2].value - truth.coeffs[2].value / kPi) > 1e-4);
}

TEST_CASE("fit_expansion flat input and rank checks") {
  {
    std::vector<std::pair<double, MCEstimate>> data;
    for (double np : {10.0, 20.0, 40.0}) {
      MCEstimate e;
      e.mean = 0.75 * np;  // density growing exactly like N^m, m = 1
      data.emplace_back(np, e);
    }
    LaurentSeries fit = fit_expansion(data, 1, 3);
    CHECK(fit.coeffs[0].value == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(std::abs(fit.coeffs[1].value) < 1e-9);
    CHECK(std::abs(fit.coeffs[2].value) < 1e-8);
  }
  {
    std::vector<std::pair<double, MCEstimate>> data;
    MCEstimate e;
    e.mean = 1.0;
    data.emplace_back(10.0, e);
    data.emplace_back(20.0, e);
    CHECK_THROWS_AS(fit_expansion(data, 1, 3), numeric_error);
  }
}

TEST_CASE("fitted trailing coefficient is consistent with the Calabi estimates") {
  // product model at m=2: the N^{m-2} density coefficient over rho^2 = 4
  // equals the summed Calabi coefficient; MC noise dominates, so this is an
  // agreement-within-errors check of the whole chain
  std::vector<std::pair<double, MCEstimate>> data;
  for (double np : {10.0, 20.0, 40.0, 80.0}) {
    data.emplace_back(np, density_general(line_times_flat_covariance(2, np), 400000,
                                          900 + static_cast<std::uint64_t>(np)));
  }
  LaurentSeries fit = fit_expansion(data, 2, 3);
  Beta2Profile profile = beta2_profile(2, 400000, 901);
  const MCEstimate& beta_total = profile.totals[2];
  const double fitted_beta = fit.coeffs[2].value / 4.0;
  const double sigma = std::sqrt(std::pow(fit.coeffs[2].std_error / 4.0, 2) +
                                 std::pow(beta_total.std_error, 2));
  CHECK(std::abs(fitted_beta - beta_total.mean) <= 3.0 * sigma);
}

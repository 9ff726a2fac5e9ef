#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "critpt/cp1_empirical.hpp"
#include "critpt/reference.hpp"

using namespace critpt;

namespace {

// evaluate the critical equation directly: f'(z)(1+|z|^2) - N conj(z) f(z)
Complex crit_eq(const Eigen::VectorXcd& a, int degree, Complex z) {
  Complex f(0, 0), fp(0, 0);
  for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
    fp = fp * z + f;
    f = f * z + a[j];
  }
  return fp * (1.0 + std::norm(z)) - static_cast<double>(degree) * std::conj(z) * f;
}

// SU(2)-rotated section: coefficients of (beta z + conj(alpha))^N f(g^{-1} z)
RandomSection rotate_section(const RandomSection& s, Complex alpha, Complex beta) {
  const int n = s.degree;
  Eigen::VectorXcd a = chart_coefficients(s, 0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n + 1);
  // term a_j (alpha z - conj(beta))^j (beta z + conj(alpha))^{N-j}
  for (int j = 0; j <= n; ++j) {
    Eigen::VectorXcd poly = Eigen::VectorXcd::Zero(n + 1);
    poly[0] = 1.0;
    int deg = 0;
    auto mul_linear = [&](Complex c1, Complex c0) {
      for (int k = deg + 1; k >= 1; --k) poly[k] = poly[k] * c0 + poly[k - 1] * c1;
      poly[0] *= c0;
      ++deg;
    };
    for (int rep = 0; rep < j; ++rep) mul_linear(alpha, -std::conj(beta));
    for (int rep = 0; rep < n - j; ++rep) mul_linear(beta, std::conj(alpha));
    out += a[j] * poly;
  }
  RandomSection rotated;
  rotated.degree = n;
  rotated.coeffs.resize(n + 1);
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    rotated.coeffs[k] = out[k] / std::sqrt(binom);
    binom = binom * (n - k) / (k + 1);
  }
  return rotated;
}

}  // namespace

TEST_CASE("section sampling moments") {
  RngStream rng(606, 0);
  const int degree = 7;
  const int trials = 20000;
  Eigen::VectorXd second = Eigen::VectorXd::Zero(degree + 1);
  double norm_at_zero = 0.0;
  for (int t = 0; t < trials; ++t) {
    RandomSection s = sample_section(rng, degree);
    for (int j = 0; j <= degree; ++j) second[j] += std::norm(s.coeffs[j]);
    // ||s(0)||_h^2 = |c_0|^2: only j = 0 contributes at the origin
    norm_at_zero += std::norm(s.coeffs[0]);
  }
  second /= trials;
  norm_at_zero /= trials;
  const double gate = 4.0 / std::sqrt(static_cast<double>(trials));
  for (int j = 0; j <= degree; ++j) CHECK(std::abs(second[j] - 1.0) < gate);
  CHECK(std::abs(norm_at_zero - 1.0) < gate);
}

TEST_CASE("sampled sections have full degree, so N zeros") {
  RngStream rng(607, 0);
  for (int t = 0; t < 50; ++t) {
    RandomSection s = sample_section(rng, 5);
    Eigen::VectorXcd a = chart_coefficients(s, 0);
    CHECK(std::abs(a[5]) > 0.0);  // leading coefficient nonzero almost surely
  }
}

TEST_CASE("constant section has a single maximum at the origin") {
  RandomSection s;
  s.degree = 6;
  s.coeffs = Eigen::VectorXcd::Zero(7);
  s.coeffs[0] = Complex(1.0, 0.0);
  CriticalPointSet found = find_critical_points(s);
  REQUIRE(found.points.size() == 1);
  CHECK(found.points[0].chart == 0);
  CHECK(std::abs(found.points[0].location) < 1e-10);
  CHECK(found.points[0].morse_index == 2);
  CHECK(found.maxima == 1);
  // the constant section is not generic: its zero divisor collapses to one
  // point, so the signed-count identity cannot hold and the set is flagged
  CHECK(found.status == FindStatus::incomplete);
  // log-norm at the maximum is log|c_0| = 0
  CHECK(std::abs(found.points[0].log_norm) < 1e-10);
  auto index = morse_classify(s, 0, Complex(0.0, 0.0));
  REQUIRE(index.has_value());
  CHECK(*index == 2);
}

TEST_CASE("monomial sections are degenerate and get flagged") {
  RandomSection s;
  s.degree = 5;
  s.coeffs = Eigen::VectorXcd::Zero(6);
  s.coeffs[2] = Complex(1.0, 0.0);  // a circle of critical points
  CriticalPointSet found = find_critical_points(s);
  CHECK(found.status == FindStatus::degenerate);
}

TEST_CASE("generic sections: roots verified, zeros excluded, signed count exact") {
  RngStream rng(2025, 0);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    RandomSection s = sample_section(rng, 4);
    CriticalPointSet found = find_critical_points(s);
    if (found.status != FindStatus::ok) continue;
    ++checked;
    CHECK(found.saddles - found.maxima == 2);  // N - 2
    for (const auto& rec : found.points) {
      Eigen::VectorXcd a = chart_coefficients(s, rec.chart);
      // residual bound in the record
      CHECK(rec.residual < 1e-9);
      // the critical equation really vanishes there
      Complex g = crit_eq(a, s.degree, rec.location);
      CHECK(std::abs(g) < 1e-7 * a.norm());
      // not a zero of the section
      Complex f(0, 0);
      for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j)
        f = f * rec.location + a[j];
      CHECK(std::abs(f) > 1e-10 * a.norm());
      CHECK(std::abs(rec.location) <= 1.0 + 1e-5);
      CHECK((rec.morse_index == 1 || rec.morse_index == 2));
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("empirical counts match the exact expectations at N=3") {
  EmpiricalCounts counts = empirical_counts(3, 600, 77);
  const double saddle_target = to_double(reference::expected_count(1, 1).eval(rat(3)));
  const double max_target = to_double(reference::expected_count(1, 2).eval(rat(3)));
  const double total_target = to_double(reference::expected_total(1).eval(rat(3)));
  CHECK(std::abs(counts.saddles.mean - saddle_target) < 4.0 * counts.saddles.std_error);
  CHECK(std::abs(counts.maxima.mean - max_target) < 4.0 * counts.maxima.std_error);
  CHECK(std::abs(counts.total.mean - total_target) < 4.0 * counts.total.std_error);
  CHECK(counts.euler_violation_rate < 0.02);
  CHECK(counts.total.mean == doctest::Approx(25.0 / 7.0).epsilon(0.05));
}

TEST_CASE("root finding stays complete at larger degree") {
  EmpiricalCounts counts = empirical_counts(20, 60, 13);
  CHECK(counts.euler_violation_rate == 0.0);
  const double saddle_target = to_double(reference::expected_count(1, 1).eval(rat(20)));
  CHECK(std::abs(counts.saddles.mean - saddle_target) < 4.0 * counts.saddles.std_error);
}

TEST_CASE("empirical counts are deterministic across worker counts") {
  MCOptions w1, w8;
  w1.workers = 1;
  w8.workers = 8;
  EmpiricalCounts a = empirical_counts(4, 150, 31, w1);
  EmpiricalCounts b = empirical_counts(4, 150, 31, w8);
  CHECK(a.saddles.mean == b.saddles.mean);
  CHECK(a.maxima.mean == b.maxima.mean);
  CHECK(a.saddles.std_error == b.saddles.std_error);
  CHECK(a.euler_violation_rate == b.euler_violation_rate);
}

TEST_CASE("rotation invariance of the critical set") {
  RngStream rng(404, 0);
  for (int rep = 0; rep < 6; ++rep) {
    RandomSection s = sample_section(rng, 5);
    CriticalPointSet base = find_critical_points(s);
    if (base.status != FindStatus::ok) continue;
    // random SU(2) element
    Complex alpha = rng.complex_gaussian(), beta = rng.complex_gaussian();
    double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    RandomSection rotated = rotate_section(s, alpha, beta);
    CriticalPointSet moved = find_critical_points(rotated);
    REQUIRE(moved.status == FindStatus::ok);
    CHECK(moved.saddles == base.saddles);
    CHECK(moved.maxima == base.maxima);
    // the log-norm multiset is preserved up to the unitary change of frame
    std::vector<double> a_norms, b_norms;
    for (const auto& r : base.points) a_norms.push_back(r.log_norm);
    for (const auto& r : moved.points) b_norms.push_back(r.log_norm);
    std::sort(a_norms.begin(), a_norms.end());
    std::sort(b_norms.begin(), b_norms.end());
    REQUIRE(a_norms.size() == b_norms.size());
    for (std::size_t i = 0; i < a_norms.size(); ++i)
      CHECK(a_norms[i] == doctest::Approx(b_norms[i]).epsilon(1e-6));
  }
}

TEST_CASE("re-running the solver from a returned point is a fixed point") {
  RngStream rng(505, 0);
  RandomSection s = sample_section(rng, 6);
  CriticalPointSet found = find_critical_points(s);
  REQUIRE(found.status == FindStatus::ok);
  for (const auto& rec : found.points) {
    Eigen::VectorXcd a = chart_coefficients(s, rec.chart);
    // one Newton step from the root moves by less than 1e-12
    Complex z = rec.location;
    Complex f(0, 0), fp(0, 0), fpp(0, 0);
    for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
      fpp = fpp * z + fp;
      fp = fp * z + f;
      f = f * z + a[j];
    }
    fpp *= 2.0;
    const double r2 = std::norm(z);
    const double n = s.degree;
    Complex g = fp * (1.0 + r2) - n * std::conj(z) * f;
    Complex gz = fpp * (1.0 + r2) + (1.0 - n) * std::conj(z) * fp;
    Complex gzb = fp * z - n * f;
    const double det = std::norm(gz) - std::norm(gzb);
    Complex step = (gzb * std::conj(g) - std::conj(gz) * g) / det;
    CHECK(std::abs(step) < 1e-12 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("dump rows carry one record per critical point") {
  std::vector<CriticalPointDumpRow> dump;
  EmpiricalCounts counts = empirical_counts(3, 40, 11, {}, &dump);
  std::int64_t from_counts = 0;
  from_counts += static_cast<std::int64_t>(counts.total.mean * counts.total.n_samples + 0.5);
  std::int64_t clean_rows = 0;
  for (const auto& row : dump) {
    CHECK(row.trial >= 0);
    CHECK(row.trial < 40);
    CHECK((row.record.morse_index == 1 || row.record.morse_index == 2));
    ++clean_rows;
  }
  CHECK(clean_rows >= from_counts);  // flagged trials also dump their points
}

#include "critpt/cp1_empirical.hpp"

#include <array>
#include <cmath>

namespace critpt {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kPolishTol = 1e-13;
constexpr double kDedupChordal = 1e-6;
constexpr double kZeroGuard = 1e-10;
constexpr double kHessianGuard = 1e-8;
constexpr double kChartSlack = 1e-6;

struct Poly {
  // f, f', f'' by Horner
  const Eigen::VectorXcd* a;
  void eval(Complex z, Complex& f, Complex& fp, Complex& fpp) const {
    f = Complex(0, 0);
    fp = Complex(0, 0);
    fpp = Complex(0, 0);
    for (int j = static_cast<int>(a->size()) - 1; j >= 0; --j) {
      fpp = fpp * z + fp;
      fp = fp * z + f;
      f = f * z + (*a)[j];
    }
    fpp *= 2.0;
  }
};

struct CritEq {
  Poly poly;
  int degree;

  // G = f'(z)(1+|z|^2) - N conj(z) f(z) and its Wirtinger derivatives
  void eval(Complex z, Complex& g, Complex& gz, Complex& gzb, double& scale) const {
    Complex f, fp, fpp;
    poly.eval(z, f, fp, fpp);
    const double r2 = std::norm(z);
    const Complex zb = std::conj(z);
    const double n = static_cast<double>(degree);
    g = fp * (1.0 + r2) - n * zb * f;
    gz = fpp * (1.0 + r2) + (1.0 - n) * zb * fp;
    gzb = fp * z - n * f;
    scale = std::abs(fp) * (1.0 + r2) + n * (std::abs(f) + std::abs(fp));
  }

  // damped Newton from the seed; returns the root if converged
  std::optional<Complex> solve(Complex z) const {
    Complex g, gz, gzb;
    double scale;
    for (int iter = 0; iter < 80; ++iter) {
      eval(z, g, gz, gzb, scale);
      const double gn = std::abs(g);
      if (gn <= kPolishTol * (scale + 1e-300)) return z;
      const double det = std::norm(gz) - std::norm(gzb);
      if (std::abs(det) < 1e-14 * (std::norm(gz) + std::norm(gzb)) + 1e-300) return std::nullopt;
      Complex step = (gzb * std::conj(g) - std::conj(gz) * g) / det;
      double sn = std::abs(step);
      if (sn > 0.5) step *= 0.5 / sn;
      // backtrack on |G|
      double t = 1.0;
      Complex g2, u2, v2;
      double s2;
      for (int back = 0; back < 30; ++back) {
        eval(z + t * step, g2, u2, v2, s2);
        if (std::abs(g2) < gn) break;
        t *= 0.5;
      }
      if (std::abs(g2) >= gn) return std::nullopt;  // stalled
      z += t * step;
    }
    eval(z, g, gz, gzb, scale);
    if (std::abs(g) <= kResidualTol * (scale + 1e-300)) return z;
    return std::nullopt;
  }
};

std::array<double, 3> sphere_point(int chart, Complex z) {
  const double r2 = std::norm(z);
  const double inv = 1.0 / (1.0 + r2);
  double x = 2.0 * z.real() * inv;
  double y = 2.0 * z.imag() * inv;
  double h = (r2 - 1.0) * inv;
  if (chart == 1) {  // w = 1/z: (x, y, h) -> (x, -y, -h)
    y = -y;
    h = -h;
  }
  return {x, y, h};
}

double chordal(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dh = a[2] - b[2];
  return 0.5 * std::sqrt(dx * dx + dy * dy + dh * dh);
}

}  // namespace

RandomSection sample_section(RngStream& rng, int degree) {
  RandomSection s;
  s.degree = degree;
  s.coeffs.resize(degree + 1);
  for (int j = 0; j <= degree; ++j) s.coeffs[j] = rng.complex_gaussian();
  return s;
}

Eigen::VectorXcd chart_coefficients(const RandomSection& s, int chart) {
  const int n = s.degree;
  Eigen::VectorXcd a(n + 1);
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    const int src = chart == 0 ? j : n - j;
    a[src] = s.coeffs[j] * std::sqrt(binom);
    binom = binom * (n - j) / (j + 1);
  }
  return a;
}

std::optional<int> morse_classify(const RandomSection& s, int chart, Complex z) {
  Eigen::VectorXcd a = chart_coefficients(s, chart);
  Poly poly{&a};
  Complex f, fp, fpp;
  poly.eval(z, f, fp, fpp);
  if (std::abs(f) <= kZeroGuard * a.norm())
    throw numeric_error("morse_classify: point is a zero of the section");
  const double r2 = std::norm(z);
  const double n = static_cast<double>(s.degree);
  const double inv2 = 1.0 / ((1.0 + r2) * (1.0 + r2));
  const Complex hess_zz = (fpp * f - fp * fp) / (f * f) + n * std::conj(z) * std::conj(z) * inv2;
  const double hess_mixed = -n * inv2;
  if (hess_mixed >= 0.0)
    throw numeric_error("morse_classify: positive-trace Hessian (impossible for s != 0)");
  const double det4 = hess_mixed * hess_mixed - std::norm(hess_zz);
  const double scale = std::max(std::norm(hess_zz), hess_mixed * hess_mixed);
  if (std::abs(det4) < kHessianGuard * scale) return std::nullopt;
  return det4 < 0.0 ? 1 : 2;
}

CriticalPointSet find_critical_points(const RandomSection& s) {
  const int n = s.degree;
  CriticalPointSet out;

  struct Candidate {
    int chart;
    Complex z;
    double residual;
    std::array<double, 3> sphere;
  };
  std::vector<Candidate> roots;

  const int seeds = 40 * n;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int chart = 0; chart < 2; ++chart) {
    Eigen::VectorXcd a = chart_coefficients(s, chart);
    CritEq eq{Poly{&a}, n};
    const double anorm = a.norm();
    for (int i = 0; i < seeds; ++i) {
      const double r = std::sqrt((i + 0.5) / seeds);
      const double th = golden * i;
      auto root = eq.solve(Complex(r * std::cos(th), r * std::sin(th)));
      if (!root) continue;
      Complex z = *root;
      if (std::abs(z) > 1.0 + kChartSlack) continue;  // owned by the other chart
      Complex g, gz, gzb;
      double scale;
      eq.eval(z, g, gz, gzb, scale);
      if (std::abs(g) > kResidualTol * (scale + 1e-300)) continue;
      Complex f, fp, fpp;
      eq.poly.eval(z, f, fp, fpp);
      if (std::abs(f) <= kZeroGuard * anorm) continue;  // zero of s, not a critical point
      Candidate cand{chart, z, std::abs(g) / (scale + 1e-300), sphere_point(chart, z)};
      bool dup = false;
      for (auto& existing : roots) {
        if (chordal(existing.sphere, cand.sphere) < kDedupChordal) {
          if (cand.residual < existing.residual) existing = cand;
          dup = true;
          break;
        }
      }
      if (!dup) roots.push_back(cand);
    }
  }

  bool degenerate = false;
  for (const auto& cand : roots) {
    auto index = morse_classify(s, cand.chart, cand.z);
    if (!index) {
      degenerate = true;
      continue;
    }
    Eigen::VectorXcd a = chart_coefficients(s, cand.chart);
    Poly poly{&a};
    Complex f, fp, fpp;
    poly.eval(cand.z, f, fp, fpp);
    const double log_norm =
        std::log(std::abs(f)) - 0.5 * n * std::log1p(std::norm(cand.z));
    out.points.push_back({cand.chart, cand.z, *index, cand.residual, log_norm});
    if (*index == 1)
      ++out.saddles;
    else
      ++out.maxima;
  }

  if (degenerate)
    out.status = FindStatus::degenerate;
  else if (out.saddles - out.maxima != n - 2)
    out.status = FindStatus::incomplete;
  else
    out.status = FindStatus::ok;
  return out;
}

namespace {

struct TrialBlock {
  detail::VecAccum acc;  // saddles, maxima, total over clean trials
  std::int64_t flagged = 0;
  std::int64_t violations = 0;
  std::vector<CriticalPointDumpRow> dump;
};

}  // namespace

EmpiricalCounts empirical_counts(int degree, std::int64_t trials, std::uint64_t seed,
                                 const MCOptions& opt, std::vector<CriticalPointDumpRow>* dump) {
  if (degree < 2) throw numeric_error("empirical_counts needs degree >= 2");
  const std::int64_t block = std::min<std::int64_t>(opt.block_size, 64);
  auto blocks = detail::run_blocks<TrialBlock>(
      trials, block, opt.workers, [&](std::int64_t b, std::int64_t first, std::int64_t count) {
        TrialBlock tb;
        tb.acc.init(3);
        RngStream rng(seed, static_cast<std::uint64_t>(b));
        for (std::int64_t i = 0; i < count; ++i) {
          RandomSection s = sample_section(rng, degree);
          CriticalPointSet found = find_critical_points(s);
          if (dump) {
            for (const auto& record : found.points)
              tb.dump.push_back({first + i, record});
          }
          if (found.status != FindStatus::ok) {
            ++tb.flagged;
            ++tb.violations;  // identity failed or could not be verified
            continue;
          }
          double x[3] = {static_cast<double>(found.saddles), static_cast<double>(found.maxima),
                         static_cast<double>(found.saddles + found.maxima)};
          tb.acc.add(x);
        }
        return tb;
      });

  TrialBlock total;
  total.acc.init(3);
  for (auto& tb : blocks) {
    total.acc.merge(tb.acc);
    total.flagged += tb.flagged;
    total.violations += tb.violations;
    if (dump)
      dump->insert(dump->end(), tb.dump.begin(), tb.dump.end());
  }

  EmpiricalCounts out;
  out.degree = degree;
  out.trials = trials;
  out.seed = seed;
  out.n_flagged = total.flagged;
  out.euler_violation_rate =
      trials > 0 ? static_cast<double>(total.violations) / static_cast<double>(trials) : 0.0;
  auto to_est = [&](int i) {
    MCEstimate e;
    e.n_samples = total.acc.n;
    e.n_rejected = total.flagged;
    e.seed = seed;
    if (total.acc.n > 0) {
      e.mean = total.acc.mean[static_cast<std::size_t>(i)];
      double var = total.acc.n > 1
                       ? total.acc.m2[static_cast<std::size_t>(i)] /
                             static_cast<double>(total.acc.n - 1)
                       : 0.0;
      e.std_error = std::sqrt(var / static_cast<double>(total.acc.n));
    }
    return e;
  };
  out.saddles = to_est(0);
  out.maxima = to_est(1);
  out.total = to_est(2);
  return out;
}

}  // namespace critpt

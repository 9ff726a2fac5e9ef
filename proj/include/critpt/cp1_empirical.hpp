#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "critpt/mc.hpp"
#include "critpt/rng.hpp"

namespace critpt {

// A Gaussian random section of the degree-N bundle over the projective line:
// s(z) = sum_j c_j sqrt(C(N,j)) z^j in the affine frame, with c_j iid
// standard complex Gaussians (the monomials sqrt(C(N,j)) z^j are orthonormal
// for the Fubini-Study inner product).
struct RandomSection {
  int degree = 0;
  Eigen::VectorXcd coeffs;  // the c_j, length N+1
};

RandomSection sample_section(RngStream& rng, int degree);

// Monomial coefficients a_j = c_j sqrt(C(N,j)) of the section in the given
// chart (chart 1 is the chart at infinity, where the coefficient order
// reverses).
Eigen::VectorXcd chart_coefficients(const RandomSection& s, int chart);

struct CriticalPointRecord {
  int chart = 0;        // 0 or 1 (at infinity)
  Complex location;     // affine coordinate in its chart, |location| <= 1 + tol
  int morse_index = 0;  // 1 (saddle) or 2 (local maximum)
  double residual = 0.0;
  double log_norm = 0.0;  // log ||s||_h at the point
};

enum class FindStatus {
  ok,          // all points located, classified, and the signed count checks out
  degenerate,  // a near-singular Hessian was met; the sample is not generic
  incomplete,  // signed-count identity failed: suspected missed roots
};

struct CriticalPointSet {
  std::vector<CriticalPointRecord> points;
  FindStatus status = FindStatus::ok;
  int saddles = 0;
  int maxima = 0;
};

// Locates every solution of f'(z)(1+|z|^2) - N conj(z) f(z) = 0 on the
// sphere: dense seeding (>= 40 N points per chart in each closed unit disk)
// plus damped Newton on the real/imaginary system, duplicates merged within
// 1e-6 chordal distance, every root verified to residual < 1e-9 x local
// derivative scale. Zeros of the section are never reported.
CriticalPointSet find_critical_points(const RandomSection& s);

// Morse index of log ||s||_h at a verified critical point with s(z) != 0,
// from the exact analytic 2x2 real Hessian of log|f|^2 - N log(1+|z|^2):
// 1 if its determinant is negative, 2 if positive with negative trace.
// Near-singular Hessians return nullopt (degenerate).
std::optional<int> morse_classify(const RandomSection& s, int chart, Complex z);

struct EmpiricalCounts {
  int degree = 0;
  std::int64_t trials = 0;
  MCEstimate saddles;  // per-sample means over clean trials
  MCEstimate maxima;
  MCEstimate total;
  std::int64_t n_flagged = 0;  // trials excluded from the means
  double euler_violation_rate = 0.0;
  std::uint64_t seed = 0;
};

struct CriticalPointDumpRow {
  std::int64_t trial = 0;
  CriticalPointRecord record;
};

// Averages per-sample Morse-index counts over independent trials. Flagged
// trials (degenerate or incomplete) are excluded from the means and counted;
// euler_violation_rate is the fraction of all trials whose signed count
// failed to equal N - 2 (or could not be verified).
EmpiricalCounts empirical_counts(int degree, std::int64_t trials, std::uint64_t seed,
                                 const MCOptions& opt = {},
                                 std::vector<CriticalPointDumpRow>* dump = nullptr);

}  // namespace critpt

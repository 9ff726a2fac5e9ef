#pragma once

#include <array>
#include <map>
#include <vector>

#include "critpt/covariance.hpp"
#include "critpt/mc.hpp"

namespace critpt {

// Degeneracy gate for Morse-index classification; degenerate samples are
// rejected and counted, and runs with n_rejected/n_samples >= 1e-6 fail
// downstream checks.
inline constexpr double kIndexTol = 1e-12;

// Per-Morse-index quantities, q = m .. 2m.
struct MorseProfile {
  int m = 0;
  std::map<int, MCEstimate> values;  // q -> estimate
  MCEstimate total;                  // unstratified estimate
  MCEstimate signed_sum;             // sum_q (-1)^{m+q} b0q, directly accumulated
};

enum class Beta2Method { gamma, f_average, baugher };
const char* beta2_method_name(Beta2Method method);

struct Beta2Profile {
  int m = 0;
  // values[method][q], q = m .. 2m
  std::array<std::map<int, MCEstimate>, 3> values;
  std::array<MCEstimate, 3> totals;
};

// Leading universal density of expected critical points:
// pi^{-m} E[ |det(2 H H* - |x|^2 I)| ] over standard jets.
MCEstimate estimate_b0(int m, std::int64_t n_samples, std::uint64_t seed,
                       const MCOptions& opt = {});

// Same integrand restricted to Morse index q (index(2HH*-|x|^2 I) == q - m).
MCEstimate estimate_b0q(int m, int q, std::int64_t n_samples, std::uint64_t seed,
                        const MCOptions& opt = {});

// All Morse strata at once, reported as leading coefficients
// n_q(m) = pi^m/m! * b0q(m) of the expected count, plus the unstratified
// total and the alternating b0q sum.
MorseProfile morse_leading_table(int m, std::int64_t n_samples, std::uint64_t seed,
                                 const MCOptions& opt = {});

// Coefficient of the Calabi functional in the N^{m-2} term of the expected
// count, by one of three integrands that must agree:
//   gamma:     (1/4) pi^{-m} E[ gamma(H) 1_q |det(2HH*-|x|^2 I)| ],
//              gamma(H) = |H_11|^4/2 - 2|H_11|^2 + 1  (raw entry H_11)
//   f_average: gamma replaced by its Haar average F(HH*)
//   baugher:   pi^{-m}/((m+1)(m+2)(m+3)) E[ |x|^2 1_q |det(2HH*-|x|^2 I)| ]
MCEstimate estimate_beta2q(int m, int q, Beta2Method method, std::int64_t n_samples,
                           std::uint64_t seed, const MCOptions& opt = {});

// All strata and all three methods from one pass over the samples.
Beta2Profile beta2_profile(int m, std::int64_t n_samples, std::uint64_t seed,
                           const MCOptions& opt = {});

// Expected critical-point density for general jet covariance data:
// pi^{-m}/det(A) * E_{(H,x) ~ Gaussian(Lambda)}[ |det(H H* - |x|^2 I)| ].
// (No factor 2 inside the determinant; that factor belongs to the rescaled
// universal-constant normalization above.)
MCEstimate density_general(const JetCovariance& cov, std::int64_t n_samples, std::uint64_t seed,
                           const MCOptions& opt = {});

// density_general restricted to index(H H* - |x|^2 I) == q - m.
MCEstimate density_morse_general(const JetCovariance& cov, int q, std::int64_t n_samples,
                                 std::uint64_t seed, const MCOptions& opt = {});

struct ComplexMCEstimate {
  Complex mean{0.0, 0.0};
  double std_error = 0.0;  // sqrt((Var Re + Var Im)/n)
  std::int64_t n_samples = 0;
  std::int64_t n_rejected = 0;
  std::uint64_t seed = 0;
};

struct IZCheckResult {
  ComplexMCEstimate mc;
  Complex exact{0.0, 0.0};
  double rel_err = 0.0;
};

// Haar-sample mean of exp(i <D(xi), U D(lambda) U*>) against the closed-form
// Itzykson-Zuber-Harish-Chandra value
//   (-i)^{m(m-1)/2} (prod_{j<m} j!) det[e^{i lambda_j xi_k}] / (Delta(lambda) Delta(xi)).
IZCheckResult iz_check(int m, const std::vector<double>& lambda_diag,
                       const std::vector<double>& xi_diag, std::int64_t n_samples,
                       std::uint64_t seed, const MCOptions& opt = {});

struct MomentCheck {
  MCEstimate mc;
  double exact = 0.0;
  double rel_err = 0.0;
};

struct SymMomentCheckResult {
  MomentCheck second;  // E |(g H g^t)_11|^2  vs  2 Tr(HH*) / (m(m+1))
  MomentCheck fourth;  // E |(g H g^t)_11|^4  vs  (8 (Tr HH*)^2 + 16 Tr((HH*)^2)) / (m..(m+3))
};

// Haar averages of |(g H g^t)_11|^{2,4} for complex symmetric H against their
// closed forms. Exposed on the CLI as `g24-check`.
SymMomentCheckResult haar_symmetric_moment_check(int m, const CMat& h, std::int64_t n_samples,
                                                 std::uint64_t seed, const MCOptions& opt = {});

// |det| of a small Hermitian matrix (closed form for dim <= 3).
double hermitian_det(const CMat& herm);

}  // namespace critpt

#include "critpt/gauss_integrals.hpp"

#include <cmath>

namespace critpt {

namespace {

double pow_pi(int m) { return std::pow(kPi, m); }

// P = 2 H H* - |x|^2 I for a sampled standard jet, eigenvalues ascending.
struct JetSample {
  CMat q;        // H H*
  double v;      // |x|^2
  double h11sq;  // |H_11|^2
};

inline JetSample draw_standard(RngStream& rng, int m, CMat& p_out) {
  JetPair jet = sample_standard_jet(rng, m);
  JetSample s;
  s.q = jet.h * jet.h.adjoint();
  s.v = std::norm(jet.x);
  s.h11sq = std::norm(jet.h(0, 0));
  p_out = 2.0 * s.q;
  for (int i = 0; i < m; ++i) p_out(i, i) -= s.v;
  return s;
}

struct B0Kernel {
  int m;
  int width() const { return 1; }
  bool operator()(RngStream& rng, double* out) const {
    CMat p;
    draw_standard(rng, m, p);
    out[0] = hermitian_det(p);
    out[0] = std::abs(out[0]);
    return true;
  }
};

// strata 0..m, then the unstratified total, then the alternating sum
struct MorseKernel {
  int m;
  int width() const { return m + 3; }
  bool operator()(RngStream& rng, double* out) const {
    CMat p;
    draw_standard(rng, m, p);
    double eigs[kMaxDim];
    RVec w;
    if (m <= 3) {
      hermitian_eigenvalues_fast3(p.data(), m, eigs);
    } else {
      w = hermitian_eigenvalues(p);
      for (int i = 0; i < m; ++i) eigs[i] = w[i];
    }
    auto k = index_of_sorted(eigs, m, kIndexTol);
    if (!k) return false;
    double det = 1.0;
    for (int i = 0; i < m; ++i) det *= eigs[i];
    det = std::abs(det);
    for (int i = 0; i <= m; ++i) out[i] = (i == *k) ? det : 0.0;
    out[m + 1] = det;
    out[m + 2] = (*k % 2 == 0) ? det : -det;  // (-1)^{m+q} = (-1)^{q-m}
    return true;
  }
};

// layout: [gamma k=0..m][f k=0..m][baugher k=0..m][gamma tot][f tot][baugher tot]
struct Beta2Kernel {
  int m;
  int width() const { return 3 * (m + 1) + 3; }
  bool operator()(RngStream& rng, double* out) const {
    CMat p;
    JetSample s = draw_standard(rng, m, p);
    double eigs[kMaxDim];
    RVec w;
    if (m <= 3) {
      hermitian_eigenvalues_fast3(p.data(), m, eigs);
    } else {
      w = hermitian_eigenvalues(p);
      for (int i = 0; i < m; ++i) eigs[i] = w[i];
    }
    auto k = index_of_sorted(eigs, m, kIndexTol);
    if (!k) return false;
    double det = 1.0;
    for (int i = 0; i < m; ++i) det *= eigs[i];
    det = std::abs(det);

    const double gamma = 0.5 * s.h11sq * s.h11sq - 2.0 * s.h11sq + 1.0;
    const double tr1 = s.q.real().trace();
    const double tr2 = s.q.squaredNorm();  // Tr(Q^2) for Hermitian Q
    const double mm = static_cast<double>(m);
    const double f = 1.0 - 4.0 * tr1 / (mm * (mm + 1.0)) +
                     (4.0 * tr1 * tr1 + 8.0 * tr2) / (mm * (mm + 1.0) * (mm + 2.0) * (mm + 3.0));
    const double wg = 0.25 * gamma * det;
    const double wf = 0.25 * f * det;
    const double wb = s.v * det / ((mm + 1.0) * (mm + 2.0) * (mm + 3.0));

    const int n1 = m + 1;
    for (int i = 0; i <= m; ++i) {
      const bool hit = (i == *k);
      out[i] = hit ? wg : 0.0;
      out[n1 + i] = hit ? wf : 0.0;
      out[2 * n1 + i] = hit ? wb : 0.0;
    }
    out[3 * n1] = wg;
    out[3 * n1 + 1] = wf;
    out[3 * n1 + 2] = wb;
    return true;
  }
};

struct DensityKernel {
  const JetCovariance* cov;
  int width() const { return 1; }
  bool operator()(RngStream& rng, double* out) const {
    const int m = cov->dim();
    JetPair jet = sample_jet_with_covariance(rng, *cov);
    CMat p = jet.h * jet.h.adjoint();
    const double v = std::norm(jet.x);
    for (int i = 0; i < m; ++i) p(i, i) -= v;
    out[0] = std::abs(hermitian_det(p));
    return true;
  }
};

struct DensityMorseKernel {
  const JetCovariance* cov;
  int width() const { return cov->dim() + 2; }  // strata + total
  bool operator()(RngStream& rng, double* out) const {
    const int m = cov->dim();
    JetPair jet = sample_jet_with_covariance(rng, *cov);
    CMat p = jet.h * jet.h.adjoint();
    const double v = std::norm(jet.x);
    for (int i = 0; i < m; ++i) p(i, i) -= v;
    double eigs[kMaxDim];
    RVec w;
    if (m <= 3) {
      hermitian_eigenvalues_fast3(p.data(), m, eigs);
    } else {
      w = hermitian_eigenvalues(p);
      for (int i = 0; i < m; ++i) eigs[i] = w[i];
    }
    auto k = index_of_sorted(eigs, m, kIndexTol);
    if (!k) return false;
    double det = 1.0;
    for (int i = 0; i < m; ++i) det *= eigs[i];
    det = std::abs(det);
    for (int i = 0; i <= m; ++i) out[i] = (i == *k) ? det : 0.0;
    out[m + 1] = det;
    return true;
  }
};

struct IZKernel {
  int m;
  const double* lambda;
  const double* xi;
  int width() const { return 2; }
  bool operator()(RngStream& rng, double* out) const {
    CMat u = sample_haar_unitary(rng, m);
    double t = 0.0;
    for (int j = 0; j < m; ++j) {
      double diag = 0.0;
      for (int k = 0; k < m; ++k) diag += lambda[k] * std::norm(u(j, k));
      t += xi[j] * diag;
    }
    out[0] = std::cos(t);
    out[1] = std::sin(t);
    return true;
  }
};

struct SymMomentKernel {
  int m;
  const CMat* h;
  int width() const { return 2; }
  bool operator()(RngStream& rng, double* out) const {
    CMat u = sample_haar_unitary(rng, m);
    // (u H u^t)_11 = v H v^t with v the first row of u
    Complex w(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
      Complex row(0.0, 0.0);
      for (int k = 0; k < m; ++k) row += (*h)(j, k) * u(0, k);
      w += u(0, j) * row;
    }
    const double w2 = std::norm(w);
    out[0] = w2;
    out[1] = w2 * w2;
    return true;
  }
};

double vandermonde(const std::vector<double>& x) {
  double d = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) d *= x[i] - x[j];
  return d;
}

void require_index_range(int m, int q) {
  if (q < m || q > 2 * m)
    throw numeric_error("Morse index q must satisfy m <= q <= 2m (got m=" + std::to_string(m) +
                        ", q=" + std::to_string(q) + ")");
}

void require_dim(int m) {
  if (m < 1 || m > kMaxDim)
    throw numeric_error("dimension must satisfy 1 <= m <= " + std::to_string(kMaxDim) +
                        " (got " + std::to_string(m) + ")");
}

}  // namespace

const char* beta2_method_name(Beta2Method method) {
  switch (method) {
    case Beta2Method::gamma: return "gamma";
    case Beta2Method::f_average: return "f_average";
    case Beta2Method::baugher: return "baugher";
  }
  return "?";
}

double hermitian_det(const CMat& herm) {
  const int m = static_cast<int>(herm.rows());
  const Complex* a = herm.data();
  if (m == 1) return a[0].real();
  if (m == 2) return a[0].real() * a[3].real() - std::norm(a[1]);
  if (m == 3) {
    const double b00 = a[0].real(), b11 = a[4].real(), b22 = a[8].real();
    const Complex a01 = a[3], a02 = a[6], a12 = a[7];
    return b00 * (b11 * b22 - std::norm(a12)) - b22 * std::norm(a01) - b11 * std::norm(a02) +
           2.0 * (a01 * a12 * std::conj(a02)).real();
  }
  return herm.determinant().real();
}

MCEstimate estimate_b0(int m, std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt) {
  require_dim(m);
  auto est = mc_run(B0Kernel{m}, n_samples, seed, opt);
  return est[0].scaled(1.0 / pow_pi(m));
}

MCEstimate estimate_b0q(int m, int q, std::int64_t n_samples, std::uint64_t seed,
                        const MCOptions& opt) {
  require_dim(m);
  require_index_range(m, q);
  auto est = mc_run(MorseKernel{m}, n_samples, seed, opt);
  return est[static_cast<std::size_t>(q - m)].scaled(1.0 / pow_pi(m));
}

MorseProfile morse_leading_table(int m, std::int64_t n_samples, std::uint64_t seed,
                                 const MCOptions& opt) {
  require_dim(m);
  auto est = mc_run(MorseKernel{m}, n_samples, seed, opt);
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) fact *= j;
  MorseProfile profile;
  profile.m = m;
  for (int k = 0; k <= m; ++k)
    profile.values[m + k] = est[static_cast<std::size_t>(k)].scaled(1.0 / fact);
  profile.total = est[static_cast<std::size_t>(m + 1)].scaled(1.0 / fact);
  profile.signed_sum = est[static_cast<std::size_t>(m + 2)].scaled(1.0 / pow_pi(m));
  return profile;
}

MCEstimate estimate_beta2q(int m, int q, Beta2Method method, std::int64_t n_samples,
                           std::uint64_t seed, const MCOptions& opt) {
  require_dim(m);
  require_index_range(m, q);
  auto est = mc_run(Beta2Kernel{m}, n_samples, seed, opt);
  const int slot = static_cast<int>(method) * (m + 1) + (q - m);
  return est[static_cast<std::size_t>(slot)].scaled(1.0 / pow_pi(m));
}

Beta2Profile beta2_profile(int m, std::int64_t n_samples, std::uint64_t seed,
                           const MCOptions& opt) {
  require_dim(m);
  auto est = mc_run(Beta2Kernel{m}, n_samples, seed, opt);
  Beta2Profile profile;
  profile.m = m;
  const double scale = 1.0 / pow_pi(m);
  for (int method = 0; method < 3; ++method) {
    for (int k = 0; k <= m; ++k)
      profile.values[static_cast<std::size_t>(method)][m + k] =
          est[static_cast<std::size_t>(method * (m + 1) + k)].scaled(scale);
    profile.totals[static_cast<std::size_t>(method)] =
        est[static_cast<std::size_t>(3 * (m + 1) + method)].scaled(scale);
  }
  return profile;
}

MCEstimate density_general(const JetCovariance& cov, std::int64_t n_samples, std::uint64_t seed,
                           const MCOptions& opt) {
  auto est = mc_run(DensityKernel{&cov}, n_samples, seed, opt);
  return est[0].scaled(1.0 / (pow_pi(cov.dim()) * cov.det_a()));
}

MCEstimate density_morse_general(const JetCovariance& cov, int q, std::int64_t n_samples,
                                 std::uint64_t seed, const MCOptions& opt) {
  require_index_range(cov.dim(), q);
  auto est = mc_run(DensityMorseKernel{&cov}, n_samples, seed, opt);
  return est[static_cast<std::size_t>(q - cov.dim())].scaled(
      1.0 / (pow_pi(cov.dim()) * cov.det_a()));
}

IZCheckResult iz_check(int m, const std::vector<double>& lambda_diag,
                       const std::vector<double>& xi_diag, std::int64_t n_samples,
                       std::uint64_t seed, const MCOptions& opt) {
  require_dim(m);
  if (static_cast<int>(lambda_diag.size()) != m || static_cast<int>(xi_diag.size()) != m)
    throw numeric_error("iz_check: need m diagonal entries for lambda and xi");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (lambda_diag[i] == lambda_diag[j])
        throw numeric_error("iz_check: lambda entries must be pairwise distinct");
      if (xi_diag[i] == xi_diag[j])
        throw numeric_error("iz_check: xi entries must be pairwise distinct");
    }

  auto est = mc_run(IZKernel{m, lambda_diag.data(), xi_diag.data()}, n_samples, seed, opt);
  IZCheckResult result;
  result.mc.mean = Complex(est[0].mean, est[1].mean);
  result.mc.std_error = std::sqrt(est[0].std_error * est[0].std_error +
                                  est[1].std_error * est[1].std_error);
  result.mc.n_samples = est[0].n_samples;
  result.mc.n_rejected = est[0].n_rejected;
  result.mc.seed = seed;

  Eigen::MatrixXcd phases(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      phases(j, k) = std::exp(Complex(0.0, lambda_diag[j] * xi_diag[k]));
  Complex phase(1.0, 0.0);
  for (int i = 0; i < m * (m - 1) / 2; ++i) phase *= Complex(0.0, -1.0);
  double fact = 1.0;
  for (int j = 1; j <= m - 1; ++j)
    for (int i = 2; i <= j; ++i) fact *= i;
  result.exact =
      phase * fact * phases.determinant() / (vandermonde(lambda_diag) * vandermonde(xi_diag));
  result.rel_err = std::abs(result.mc.mean - result.exact) / std::abs(result.exact);
  return result;
}

SymMomentCheckResult haar_symmetric_moment_check(int m, const CMat& h, std::int64_t n_samples,
                                                 std::uint64_t seed, const MCOptions& opt) {
  require_dim(m);
  if (m < 2) throw numeric_error("haar_symmetric_moment_check needs m >= 2");
  if (!is_symmetric(h)) throw numeric_error("haar_symmetric_moment_check: H must be symmetric");
  auto est = mc_run(SymMomentKernel{m, &h}, n_samples, seed, opt);

  const double tr1 = (h * h.adjoint()).real().trace();
  const double tr2 = (h * h.adjoint()).squaredNorm();
  const double mm = static_cast<double>(m);

  SymMomentCheckResult result;
  result.second.mc = est[0];
  result.second.exact = 2.0 * tr1 / (mm * (mm + 1.0));
  result.fourth.mc = est[1];
  result.fourth.exact =
      (8.0 * tr1 * tr1 + 16.0 * tr2) / (mm * (mm + 1.0) * (mm + 2.0) * (mm + 3.0));
  auto rel = [](const MomentCheck& c) {
    return c.exact != 0.0 ? std::abs(c.mc.mean - c.exact) / std::abs(c.exact)
                          : std::abs(c.mc.mean);
  };
  result.second.rel_err = rel(result.second);
  result.fourth.rel_err = rel(result.fourth);
  return result;
}

JetCovariance fubini_study_covariance(int m, double n_power) {
  const int d = jet_dim(m);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m, m) * n_power;
  Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d - 1; ++i) lambda(i, i) = 2.0 * n_power * (n_power - 1.0);
  lambda(d - 1, d - 1) = n_power * n_power;
  return JetCovariance(m, std::move(a), std::move(lambda));
}

JetCovariance line_times_flat_covariance(int m, double n_power) {
  const int d = jet_dim(m);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m, m) * n_power;
  Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(d, d);
  lambda(0, 0) = 2.0 * n_power * (n_power - 1.0);  // the (0,0) coordinate is the line direction
  for (int i = 1; i < d - 1; ++i) lambda(i, i) = 2.0 * n_power * n_power;
  lambda(d - 1, d - 1) = n_power * n_power;
  return JetCovariance(m, std::move(a), std::move(lambda));
}

}  // namespace critpt

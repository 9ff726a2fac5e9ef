#include "critpt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace critpt {

double hs_weight(int j, int q) { return j == q ? 1.0 : std::sqrt(2.0); }

int hs_index(int j, int q, int m) {
  // row-major upper triangle, j <= q
  return j * m - j * (j - 1) / 2 + (q - j);
}

CVec hs_vector(const CMat& h) {
  const int m = static_cast<int>(h.rows());
  CVec v(sym_dim(m));
  for (int j = 0; j < m; ++j)
    for (int q = j; q < m; ++q) v[hs_index(j, q, m)] = hs_weight(j, q) * h(j, q);
  return v;
}

JetPair hs_unpack(const CVec& v, int m) {
  JetPair jet;
  jet.h.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int q = j; q < m; ++q) {
      Complex entry = v[hs_index(j, q, m)] / hs_weight(j, q);
      jet.h(j, q) = entry;
      jet.h(q, j) = entry;
    }
  jet.x = v[sym_dim(m)];
  return jet;
}

RVec hermitian_eigenvalues(const CMat& herm) {
  Eigen::SelfAdjointEigenSolver<CMat> solver;
  solver.compute(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "hermitian eigensolver did not converge on the " << herm.rows() << "x" << herm.cols()
        << " matrix\n"
        << herm;
    throw numeric_error(msg.str());
  }
  return solver.eigenvalues();
}

void hermitian_eigenvalues_fast3(const Complex* a, int m, double* w) {
  // a is column-major m x m Hermitian, m <= 3
  if (m == 1) {
    w[0] = a[0].real();
    return;
  }
  if (m == 2) {
    const double p = a[0].real(), q = a[3].real();
    const double mu = 0.5 * (p + q);
    const double d = 0.5 * (p - q);
    const double disc = std::sqrt(d * d + std::norm(a[1]));
    w[0] = mu - disc;
    w[1] = mu + disc;
    return;
  }
  // trig Cardano on the (real) characteristic polynomial of the shifted matrix
  const double a00 = a[0].real(), a11 = a[4].real(), a22 = a[8].real();
  const Complex a01 = a[3], a02 = a[6], a12 = a[7];
  const double tr = a00 + a11 + a22;
  const double shift = tr / 3.0;
  const double b00 = a00 - shift, b11 = a11 - shift, b22 = a22 - shift;
  const double n01 = std::norm(a01), n02 = std::norm(a02), n12 = std::norm(a12);
  // char poly of shifted matrix: lambda^3 - p*lambda - det
  const double p = 0.5 * (b00 * b00 + b11 * b11 + b22 * b22) + n01 + n02 + n12;
  const double det = b00 * (b11 * b22 - n12) - (b22 * n01 - 2.0 * (a01 * a12 * std::conj(a02)).real()) -
                     b11 * n02;
  if (p <= 0.0) {
    w[0] = w[1] = w[2] = shift;
    return;
  }
  const double s = std::sqrt(p / 3.0);
  double arg = det / (2.0 * s * s * s);
  arg = std::clamp(arg, -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  // cos(phi) >= cos(phi + 2pi/3) ... ordering: phi in [0, pi/3]
  const double c0 = std::cos(phi);
  const double c1 = std::cos(phi - 2.0 * kPi / 3.0);
  const double c2 = std::cos(phi + 2.0 * kPi / 3.0);
  double e0 = shift + 2.0 * s * c2;
  double e1 = shift + 2.0 * s * c1;
  double e2 = shift + 2.0 * s * c0;
  if (e0 > e1) std::swap(e0, e1);
  if (e1 > e2) std::swap(e1, e2);
  if (e0 > e1) std::swap(e0, e1);
  w[0] = e0;
  w[1] = e1;
  w[2] = e2;
}

RVec hermitian_eigenvalues_fast(const CMat& herm) {
  const int m = static_cast<int>(herm.rows());
  if (m <= 3) {
    RVec w(m);
    hermitian_eigenvalues_fast3(herm.data(), m, w.data());
    return w;
  }
  return hermitian_eigenvalues(herm);
}

std::optional<int> index_of_sorted(const double* eigs, int n, double tol) {
  double radius = std::max(std::abs(eigs[0]), std::abs(eigs[n - 1]));
  double gate = tol * std::max(1.0, radius);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(eigs[i]) <= gate) return std::nullopt;
    if (eigs[i] < 0.0) ++count;
  }
  return count;
}

std::optional<int> matrix_index(const CMat& herm, double tol) {
  RVec w = hermitian_eigenvalues(herm);
  return index_of_sorted(w.data(), static_cast<int>(w.size()), tol);
}

JetPair sample_standard_jet(RngStream& rng, int m) {
  JetPair jet;
  jet.h.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int q = j; q < m; ++q) {
      Complex entry = rng.complex_gaussian() / hs_weight(j, q);
      jet.h(j, q) = entry;
      jet.h(q, j) = entry;
    }
  jet.x = rng.complex_gaussian();
  return jet;
}

JetPair sample_jet_from_factor(RngStream& rng, const Eigen::MatrixXcd& cholesky_l, int m) {
  const int d = jet_dim(m);
  CVec g(d);
  for (int i = 0; i < d; ++i) g[i] = rng.complex_gaussian();
  CVec v = cholesky_l * g;
  return hs_unpack(v, m);
}

CMat sample_haar_unitary(RngStream& rng, int m) {
  CMat g(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) g(r, c) = rng.complex_gaussian();
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR();
  for (int c = 0; c < m; ++c) {
    Complex d = r(c, c);
    double n = std::abs(d);
    Complex phase = n > 0.0 ? d / n : Complex(1.0, 0.0);
    q.col(c) *= phase;
  }
  return q;
}

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (int j = 0; j < a.rows(); ++j)
    for (int k = j; k < a.cols(); ++k)
      if (std::abs(a(j, k) - std::conj(a(k, j))) > tol) return false;
  return true;
}

bool is_symmetric(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (int j = 0; j < a.rows(); ++j)
    for (int k = j + 1; k < a.cols(); ++k)
      if (std::abs(a(j, k) - a(k, j)) > tol) return false;
  return true;
}

}  // namespace critpt

#pragma once

#include <Eigen/Cholesky>

#include "critpt/linalg.hpp"
#include "critpt/types.hpp"

namespace critpt {

// The second-moment data of the jet distribution at a point: the m x m block
// A of gradient covariances and the jet-space operator Lambda on
// Sym(m,C) + C (conditional covariance of the Hessian/value jet given a
// vanishing gradient). Lambda lives in the Hilbert-Schmidt basis extended by
// the value slot, ordered as in hs_index.
class JetCovariance {
 public:
  JetCovariance(int m, Eigen::MatrixXcd a_block, Eigen::MatrixXcd lambda)
      : m_(m), a_(std::move(a_block)), lambda_(std::move(lambda)) {
    const int d = jet_dim(m);
    if (a_.rows() != m_ || a_.cols() != m_)
      throw numeric_error("JetCovariance: A block must be m x m");
    if (lambda_.rows() != d || lambda_.cols() != d)
      throw numeric_error("JetCovariance: Lambda must be jet_dim(m) square");
    chol_ = factor(lambda_, "Lambda");
    Eigen::MatrixXcd la = factor(a_, "A");
    det_a_ = 1.0;
    for (int i = 0; i < m_; ++i) det_a_ *= std::norm(la(i, i));  // |l_ii|^2, real by construction
  }

  int dim() const { return m_; }
  const Eigen::MatrixXcd& a_block() const { return a_; }
  const Eigen::MatrixXcd& lambda() const { return lambda_; }
  const Eigen::MatrixXcd& lambda_factor() const { return chol_; }
  double det_a() const { return det_a_; }

 private:
  static Eigen::MatrixXcd factor(const Eigen::MatrixXcd& mat, const char* name) {
    Eigen::LLT<Eigen::MatrixXcd> llt(mat);
    if (llt.info() != Eigen::Success) {
      // locate the offending pivot for the error message
      for (int k = 1; k <= mat.rows(); ++k) {
        Eigen::LLT<Eigen::MatrixXcd> sub(mat.topLeftCorner(k, k).eval());
        if (sub.info() != Eigen::Success)
          throw numeric_error(std::string(name) + " is not positive definite (pivot " +
                              std::to_string(k - 1) + ")");
      }
      throw numeric_error(std::string(name) + " is not positive definite");
    }
    return llt.matrixL();
  }

  int m_;
  Eigen::MatrixXcd a_;
  Eigen::MatrixXcd lambda_;
  Eigen::MatrixXcd chol_;
  double det_a_ = 0.0;
};

// Model covariances.

// Projective space with the Fubini-Study metric: A = N I,
// Lambda = diag(2N(N-1) on the symmetric block, N^2 on the value slot).
JetCovariance fubini_study_covariance(int m, double n_power);

// Product of a projective line and flat factors: the symmetric-block entry of
// the line direction is 2N(N-1), the mixed/flat entries are 2N^2, and the
// value slot is N^2.
JetCovariance line_times_flat_covariance(int m, double n_power);

inline JetPair sample_jet_with_covariance(RngStream& rng, const JetCovariance& cov) {
  return sample_jet_from_factor(rng, cov.lambda_factor(), cov.dim());
}

}  // namespace critpt

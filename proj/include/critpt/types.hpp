#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace critpt {

using Complex = std::complex<double>;

// Supported matrix dimension envelope. Fixed max sizes keep the Monte-Carlo
// kernels free of per-sample heap traffic.
inline constexpr int kMaxDim = 8;
// dim of Sym(m,C) x C for m = kMaxDim
inline constexpr int kMaxJetDim = (kMaxDim * kMaxDim + kMaxDim + 2) / 2;

using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using CVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxJetDim, 1>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxJetDim, 1>;

inline constexpr double kPi = 3.14159265358979323846;

// complex dimension of Sym(m,C) + the value slot
inline int jet_dim(int m) { return (m * m + m + 2) / 2; }
// number of independent entries of a complex symmetric m x m matrix
inline int sym_dim(int m) { return m * (m + 1) / 2; }

// Hard numerical failures (Cholesky breakdown, coincident eigenvalues, ...).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace critpt

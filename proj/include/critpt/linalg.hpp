#pragma once

#include <optional>

#include "critpt/rng.hpp"
#include "critpt/types.hpp"

namespace critpt {

// A point (H, x) of Sym(m,C) x C: the rescaled Hessian/value jet of a section
// at a critical point candidate.
struct JetPair {
  CMat h;     // complex symmetric, h(j,q) == h(q,j) exactly by construction
  Complex x;  // value slot
};

// Hilbert-Schmidt coordinates of Sym(m,C). The orthonormal coordinate of the
// (j,q) entry (j <= q) is tau_jq * H_jq with tau = sqrt(2) off the diagonal
// and 1 on it; coordinates are ordered row-major over the upper triangle,
// (0,0), (0,1), ..., (0,m-1), (1,1), ...
double hs_weight(int j, int q);
int hs_index(int j, int q, int m);

// Sym(m,C) -> C^{m(m+1)/2}; an isometry: |hs_vector(H)|^2 == Tr(H H*).
CVec hs_vector(const CMat& h);

// Inverse of hs_vector extended by the value slot: a jet-space coordinate
// vector of length jet_dim(m) -> (H, x).
JetPair hs_unpack(const CVec& v, int m);

// Eigenvalues of a Hermitian matrix, ascending. Accurate path (used by the
// public API and anywhere the 1e-10 reconstruction contract matters).
RVec hermitian_eigenvalues(const CMat& herm);

// Closed-form eigenvalues for dim <= 3, Eigen solver above. Same ordering.
// Meant for per-sample Monte-Carlo work.
RVec hermitian_eigenvalues_fast(const CMat& herm);
void hermitian_eigenvalues_fast3(const Complex* herm, int m, double* eigs_out);

// Number of eigenvalues < -tol*scale, with scale = max(1, spectral radius);
// nullopt (degenerate) if any eigenvalue lies in [-tol*scale, tol*scale].
std::optional<int> matrix_index(const CMat& herm, double tol = 1e-12);
std::optional<int> index_of_sorted(const double* eigs, int n, double tol);

// (H, x) with every Hilbert-Schmidt coordinate and x an independent standard
// complex Gaussian (so off-diagonal entries of H have variance 1/2 each).
JetPair sample_standard_jet(RngStream& rng, int m);

// v = L g with g a standard complex Gaussian vector, so E[v v*] = L L*.
// L is a lower-triangular Cholesky factor in the jet-space basis.
JetPair sample_jet_from_factor(RngStream& rng, const Eigen::MatrixXcd& cholesky_l, int m);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the R-diagonal
// phases normalized.
CMat sample_haar_unitary(RngStream& rng, int m);

bool is_hermitian(const CMat& a, double tol = 0.0);
bool is_symmetric(const CMat& a, double tol = 0.0);

}  // namespace critpt

#pragma once

#include "unictrl/types.hpp"

namespace unictrl {

/// One Jordan block with its left/right generalized eigenvector chains.
///
/// Chain elements are unit norm; index k grows toward the tail, which is a
/// true left eigenvector. The relations hold with positive couplings:
///   l_{k}^T A = lambda l_{k}^T + c_k l_{k+1}^T   (k < size)
///   l_{size}^T A = lambda l_{size}^T
/// The assembled Jordan matrix carries the couplings c_k on its
/// superdiagonal, so T A = J T exactly (up to roundoff).
struct JordanBlock {
    int index = 0;
    Complex eigenvalue;
    int size = 1;
    ComplexMatrix left_chain;   // size x n, row (k-1) is l_{i,k}
    ComplexMatrix right_chain;  // n x size, column (k-1) is r_{i,k}
    Vector couplings;           // size-1 positive factors
    int conjugate_of = -1;      // index of the +Im partner, -1 for real blocks

    bool is_real() const { return eigenvalue.imag() == 0.0; }
    /// True for real blocks and the +Im member of each conjugate pair;
    /// the cone construction iterates representatives only.
    bool is_representative() const { return conjugate_of < 0; }
};

struct SpectralDecomposition {
    int n = 0;
    double eig_tolerance = 0.0;
    std::vector<JordanBlock> blocks;
    ComplexMatrix T;     // rows = left chains, block by block
    ComplexMatrix Tinv;  // columns = right chains

    /// Row/column offset of block bi inside T / Tinv.
    int block_offset(int bi) const;
    /// Block-diagonal Jordan matrix with couplings on the superdiagonal.
    ComplexMatrix jordan_matrix() const;
};

/// Eigenvalues, Jordan structure and unit-norm left/right chains of A.
/// Eigenvalues closer than tol*max(1, |A|_inf) are clustered; the block
/// structure of a cluster comes from the numerical ranks of (A - lambda I)^k
/// with singular values cut at tol*sigma_max.
SpectralDecomposition compute_spectrum(const Matrix& A, double tol = 1e-8);

/// Remixes chains within each eigenvalue cluster (groups of equal block
/// size) so that the number of chains entirely orthogonal to the columns
/// of B is maximal; for diagonalizable eigenvalues this is the exact
/// dimension of eigenspace-intersect-null(B^T). Spectral invariants are
/// preserved; blocks keep their order and sizes.
SpectralDecomposition select_left_chains(const SpectralDecomposition& decomp,
                                         const InputMatrix& B,
                                         double tau_zero = 1e-9);

/// exp(A t) evaluated through the decomposition: Tinv exp(Jt) T.
Matrix expm(const SpectralDecomposition& decomp, double t);

/// Integral of exp(A s) ds over [0, t], same route.
Matrix expm_integral(const SpectralDecomposition& decomp, double t);

}  // namespace unictrl

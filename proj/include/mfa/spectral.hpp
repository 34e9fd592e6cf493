#pragma once

#include <vector>

#include "mfa/matrix.hpp"

namespace mfa {

/// Spectral decomposition of a Hermitian matrix, split into the invariant
/// subspaces given by the connected components of its structural-zero
/// pattern. A generic dense matrix is a single component and takes the plain
/// dense path; block-structured Hamiltonians (field-diagonal, excitation
/// doublets) get solved per block, which is what keeps desk-scale runs fast.
struct HermitianEigen {
    struct Block {
        std::vector<int> indices;  // global basis indices, ascending
        RealVec eigenvalues;
        Mat eigenvectors;          // columns, in the local index order
    };

    int dim = 0;
    std::vector<Block> blocks;

    // All eigenvalues, ascending.
    RealVec eigenvalues_sorted() const;

    // Dense eigenvector matrix (block columns scattered into place).
    Mat eigenvectors_dense() const;

    // y = exp(-i H t) x.
    Vec apply_exp(double t, const Vec& x) const;

    // Dense exp(-i H t), assembled block by block.
    Mat exp_matrix(double t) const;

    // out += exp(-i H t) columns, scaled per column by the given factors.
    void accumulate_exp(double t, Mat& out) const;
};

// Decompose after checking Hermiticity at the given relative tolerance.
HermitianEigen eigh_blocked(const Mat& h, double herm_rel_tol = 1e-10);

/// exp(-i H t) by spectral decomposition. Throws HermiticityError when the
/// input fails the Hermitian check (default 1e-10 relative).
Mat expm_hermitian(const Mat& h, double t, double herm_rel_tol = 1e-10);
Mat expm_hermitian(const OperatorMatrix& h, double t, double herm_rel_tol = 1e-10);

// exp(G) for an anti-Hermitian generator (G^H = -G), via exp(-i (iG)).
Mat expm_skew(const Mat& g, double rel_tol = 1e-10);

// Ascending eigenvalues of a real symmetric matrix (dsyevd).
RealVec eigvals_symmetric(const Eigen::MatrixXd& h);

} // namespace mfa

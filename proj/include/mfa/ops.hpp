#pragma once

#include "mfa/kernels.hpp"
#include "mfa/matrix.hpp"

namespace mfa {

struct LadderOps {
    Mat lowering; // a |n> = sqrt(n) |n-1>
    Mat raising;  // a^dag
    Mat number;   // a^dag a = diag(0, 1, ..., dim-1)
};

/// Truncated bosonic ladder operators on a dim-dimensional Fock space.
LadderOps ladder_ops(int dim);

struct SgOps {
    Mat v;     // ones on the first superdiagonal: V |n+1> = |n>, V |0> = 0
    Mat v_dag;
};

/// Susskind-Glogower number-shift operators. In the truncated space
/// V V^dag = I - |dim-1><dim-1| and V^dag V = I - |0><0| exactly.
SgOps sg_ops(int dim);

struct AtomOps {
    Mat sigma_plus;  // |e><g|
    Mat sigma_minus; // |g><e|
    Mat sigma_z;     // diag(1, -1), |e> first
};

AtomOps atom_ops();

// diag(sqrt(1), sqrt(2), ..., sqrt(dim)); the field-side factor of the
// SG relation a = sqrt(n+1) V.
Mat sqrt_number_plus_one(int dim);

Mat fock_projector(int dim, int n);

/// Lift a subsystem-local operator into the full tensor basis,
/// identity on the other slots.
OperatorMatrix embed(const Mat& op, Slot slot, const TensorLayout& layout);

// atom (x) field (x) mirror in the fixed ordering.
Mat kron3(const Mat& a, const Mat& f, const Mat& m, Exec exec = Exec::Parallel);

// Projector onto atom=|g>, field=|0> (diagonal 0/1 matrix).
Mat p_g0(const TensorLayout& layout);

// Projector onto atom=|g>, field=|N_f-1| (the V V^dag truncation defect).
Mat p_top(const TensorLayout& layout);

// Diagonal 0/1 mask selecting basis states whose field index is at most
// field_dim-1-guard_field (the interior subspace used by identity checks).
RealVec interior_mask(const TensorLayout& layout, int guard_field = 1);

// As above but also excluding the top guard_mirror mirror levels.
RealVec interior_mask(const TensorLayout& layout, int guard_field, int guard_mirror);

} // namespace mfa

#pragma once

#include <vector>

#include "mfa/hamiltonians.hpp"
#include "mfa/matrix.hpp"

namespace mfa {

struct MOps {
    Mat m;     // diag(1, V) over the atomic basis, identity on the mirror
    Mat m_dag;
};

/// The SG block transform. M M^dag = I - P_top (truncation defect of V V^dag),
/// M^dag M = I - P_g0 (exact).
MOps m_ops(const TensorLayout& layout);

// (1/sqrt(2)) [[1, 1], [-1, 1]] on the atom.
Mat r_op_atom();

/// The exact atomic rotation embedded in the full space. R sigma_x R^dag = sigma_z.
OperatorMatrix r_op(const TensorLayout& layout);

struct SmallRotations {
    Mat u1; // exp(xi1(n) (b^dag s+ - b s-))
    Mat u2; // exp(xi2(n) (b s+ - b^dag s-))
};

/// Dispersive small rotations, exponentiated exactly (the generators are
/// anti-Hermitian since xi(n) commutes with b, b^dag, sigma). The first-order
/// treatment lives in build_h2_first_order, not here.
SmallRotations small_rotations(const SystemParams& params, const TensorLayout& layout);

/// Residuals of the printed cancellation brackets
///   c_jc(n)  = chi/2 - xi1 (nu + lambda sqrt(n+1))
///   c_ajc(n) = chi/2 + xi2 (nu - lambda sqrt(n+1))
/// which vanish identically for the chosen xi's. (The brackets the exact
/// conjugation produces are first_order_brackets; see hamiltonians.)
struct CancellationResidual {
    int n = 0;
    double c_jc = 0.0;
    double c_anti_jc = 0.0;
};
std::vector<CancellationResidual> cancellation_residuals(const SystemParams& params, int n_max);
std::vector<CancellationResidual> cancellation_residuals(const SystemParams& params, int n_max,
                                                         const std::vector<XiCoefficients>& xi);

// M and M^dag applied structurally (M shifts the |g> field index down by one).
Vec apply_m(const Vec& x, const TensorLayout& layout);
Vec apply_m_dag(const Vec& x, const TensorLayout& layout);
// M^dag A M without forming M.
Mat sandwich_m(const Mat& a, const TensorLayout& layout);

// Diagonal of rho_22^0 (nu * m on the atom=|g>, field=0 block).
RealVec rho22_diagonal(const SystemParams& params, const TensorLayout& layout);

/// Evolution-operator formula
///   U(t) = (M^dag e^{-i H~ t} M + P_g0) e^{-i rho t}.
/// Agrees with the direct spectral propagator of the interaction-picture
/// Hamiltonian on the interior subspace (field index < N_f - 1).
OperatorMatrix evolution_formula(double t, const SystemParams& params, const TensorLayout& layout);

/// Reconstructed effective propagator
///   U_eff(t) = M^dag R^dag U1^dag U2^dag e^{-i H_eff t} U2 U1 R M e^{-i rho t}
///            + P_g0 e^{-i rho t}.
/// Reduces to the evolution formula when U1 = U2 = I and H_eff is replaced
/// by R H~ R^dag; exactly the identity at t = 0.
OperatorMatrix effective_propagator(double t, const SystemParams& params,
                                    const TensorLayout& layout, EffVariant variant);

/// Cached transform chain for repeated application.
struct TransformChain {
    SystemParams params;
    TensorLayout layout;
    EffVariant variant = EffVariant::Derivation;
    Mat m, m_dag, r_full, u1, u2;
    Mat chain; // U2 U1 R M

    TransformChain(const SystemParams& p, const TensorLayout& l, EffVariant v);
};

} // namespace mfa

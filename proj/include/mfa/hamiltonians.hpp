#pragma once

#include <vector>

#include "mfa/matrix.hpp"
#include "mfa/params.hpp"

namespace mfa {

enum class LabModel {
    FieldMirror,     // omega n + nu N - g n (b + b^dag), identity on the atom
    AtomFieldMirror, // adds omega0 sigma_z / 2 + lambda (a sigma_+ + a^dag sigma_-)
};

/// Lab-frame Hamiltonians. The mirror coupling uses -g with g = |chi|
/// (chi is an independent signed parameter; only the interaction-picture
/// builder uses it with its sign).
OperatorMatrix build_h_lab(const SystemParams& params, const TensorLayout& layout, LabModel model);

/// Interaction-picture Hamiltonian nu N + chi n (b+b^dag) + lambda (a s+ + a^dag s-).
/// Requires omega = omega0 (1e-12 relative): the picture assumes the resonant
/// atom-field interaction.
OperatorMatrix build_h_int(const SystemParams& params, const TensorLayout& layout);

/// The 2x2 atomic-block Hamiltonian reached through the SG transform:
/// diagonal blocks nu N + chi n (b+b^dag) and nu N + chi (n+1)(b+b^dag),
/// off-diagonal lambda sqrt(n+1). Field-diagonal by construction.
OperatorMatrix build_h_tilde(const SystemParams& params, const TensorLayout& layout);

/// nu N restricted to the atom=|g>, field=|0> block.
OperatorMatrix build_rho22(const SystemParams& params, const TensorLayout& layout);

/// Closed form of R H~ R^dag:
/// nu N + chi (n+1/2)(b+b^dag) + lambda sigma_z sqrt(n+1) + (chi/2)(s+ + s-)(b+b^dag).
OperatorMatrix build_h_rotated(const SystemParams& params, const TensorLayout& layout);

// Coefficients of the JC-type (b^dag s+ + b s-) and anti-JC-type
// (b s+ + b^dag s-) terms that survive the first-order conjugation by
// U2 U1 at photon sector n. In the Pauli convention the dressed gap is
// 2 lambda sqrt(n+1), so with the printed xi choice these are small but
// nonzero:
//   jc      = chi/2 - xi1 (nu + 2 lambda sqrt(n+1))
//   anti_jc = chi/2 + xi2 (nu - 2 lambda sqrt(n+1))
struct FirstOrderBrackets {
    double jc = 0.0;
    double anti_jc = 0.0;
};
FirstOrderBrackets first_order_brackets(int n, const SystemParams& params, const XiCoefficients& xi);

/// First-order expansion of U2 U1 H_R U1^dag U2^dag, assembled in closed
/// form (the exact commutator coefficients, so the residual against the
/// numerically conjugated Hamiltonian is second order in the xi's).
/// use_chosen_xi=false sets xi1 = xi2 = 0, which reproduces build_h_rotated
/// exactly.
OperatorMatrix build_h2_first_order(const SystemParams& params, const TensorLayout& layout,
                                    bool use_chosen_xi);
OperatorMatrix build_h2_first_order(const SystemParams& params, const TensorLayout& layout,
                                    const std::vector<XiCoefficients>& xi_per_sector);

/// Effective model nu N + chi (n+1/2)(b+b^dag) + lambda sqrt(n+1) sigma_z
/// + (chi^2/(lambda sqrt(n+1))) (b+b^dag)^2, the quadratic term multiplied
/// by sigma_z under EffVariant::Derivation. Block-diagonal in (n, sigma_z).
OperatorMatrix build_h_effective(const SystemParams& params, const TensorLayout& layout,
                                 EffVariant variant);

} // namespace mfa

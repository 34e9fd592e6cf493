#pragma once

#include <optional>
#include <string>

#include "mfa/errors.hpp"

namespace mfa {

/// Reading of the effective model's quadratic mirror term. `Derivation`
/// keeps the sigma_z prefactor the small-rotation derivation produces;
/// `AsPrinted` drops it, as the final printed form does. Both are built and
/// compared rather than silently picking one reading.
enum class EffVariant { Derivation, AsPrinted };

std::string to_string(EffVariant v);
EffVariant eff_variant_from_string(const std::string& name);

/// Physical constants of the mirror-field-atom model, hbar = 1.
struct SystemParams {
    double nu = 0.1;      // mirror frequency
    double omega = 1.0;   // field frequency
    double omega0 = 1.0;  // atomic transition frequency
    double lambda = 1.0;  // atom-field coupling
    double chi = 0.0;     // mirror-field coupling (signed; see coupling_g)
    std::optional<double> cavity_length;
    std::optional<double> mirror_mass;
    EffVariant eff_variant = EffVariant::Derivation;
    double pole_guard = 1e-6;

    void validate() const;
};

/// g = (omega/L) * sqrt(1/(2 m nu)). Throws DomainError on non-positive input.
double coupling_g(double omega, double length, double mass, double nu);

/// Small-rotation angles for photon sector n:
///   xi1 =  chi / (2 (nu + lambda sqrt(n+1)))
///   xi2 = -chi / (2 (nu - lambda sqrt(n+1)))
/// sum_closed_form and diff_closed_form are the independently evaluated
/// closed forms lambda chi sqrt(n+1) / (lambda^2 (n+1) - nu^2) and
/// chi nu / (lambda^2 (n+1) - nu^2).
struct XiCoefficients {
    int n = 0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double sum_closed_form = 0.0;
    double diff_closed_form = 0.0;
};

// Throws PoleError when |nu - lambda sqrt(n+1)| <= pole_guard * max(nu, lambda).
XiCoefficients xi_coefficients(int n, const SystemParams& params);

// The pole-guard precondition alone.
void require_off_resonance(int n, const SystemParams& params);

/// Per-(n, sigma_z) coefficients of the effective model's mirror block
/// nu N + kappa (b+b^dag) + mu (b+b^dag)^2 + offset.
struct SectorSpec {
    int n = 0;
    int s = +1;            // sigma_z eigenvalue
    double kappa = 0.0;    // chi (n + 1/2)
    double mu = 0.0;       // chi^2/(lambda sqrt(n+1)), times s under Derivation
    double offset = 0.0;   // s lambda sqrt(n+1)
    bool stable = true;    // nu + 4 mu > 0
};

SectorSpec sector_params(int n, int s, const SystemParams& params, EffVariant variant);

} // namespace mfa

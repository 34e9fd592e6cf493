#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mfa/kernels.hpp"
#include "mfa/states.hpp"
#include "mfa/transforms.hpp"

namespace mfa {

enum class PropagatorKind { Exact, Formula, Effective };

std::string to_string(PropagatorKind k);
PropagatorKind propagator_kind_from_string(const std::string& name);

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 10.0;
    int steps = 200;

    void validate() const;
    double step() const { return (t_end - t_start) / steps; }
    // steps+1 uniformly spaced samples, endpoints included.
    std::vector<double> times() const;
};

struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> inversion;  // <sigma_z>
    std::vector<double> photon;     // <n>
    std::vector<double> phonon;     // <N>
    std::vector<double> quadrature; // <b + b^dag>
    std::vector<double> leakage;    // guard-band mass
    std::vector<double> energy;     // <H_int>
    double max_norm_defect = 0.0;
    double max_leakage = 0.0;
    bool leakage_exceeded = false;
};

struct RegimeReport {
    enum class Verdict { DispersiveOk, Marginal, Invalid };
    double max_xi1 = 0.0;
    double max_xi2 = 0.0;
    double min_resonance_distance = std::numeric_limits<double>::infinity();
    int min_resonance_n = -1;
    double chi_over_lambda = 0.0;
    double nu_over_lambda = 0.0;
    Verdict verdict = Verdict::DispersiveOk;

    std::string verdict_name() const;
};

// Diagnostic only, never throws. Verdict is Invalid when some n <= n_max sits
// within the pole guard of nu = lambda sqrt(n+1), Marginal when max |xi| > 0.1.
RegimeReport regime_check(const SystemParams& params, int n_max);

struct EvolveOptions {
    EffVariant variant = EffVariant::Derivation; // effective kind only
    double leakage_threshold = 1e-8;
    int guard = 2;
    bool allow_leakage = false;
    Exec exec = Exec::Parallel;
};

/// Observable time series under the chosen propagator. Exact diagonalizes the
/// interaction-picture Hamiltonian; Formula applies the SG evolution-operator
/// identity; Effective applies the reconstructed transform chain.
ObservableSeries evolve(const StateVector& psi0, PropagatorKind kind, const TimeGrid& grid,
                        const SystemParams& params, const EvolveOptions& options = {});

struct CompareOptions {
    EffVariant variant = EffVariant::Derivation;
    bool both_variants = false;
    bool override_regime = false;
    bool with_operator_distance = true;
    double leakage_threshold = 1e-8;
    int guard = 2;
    bool allow_leakage = false;
    Exec exec = Exec::Parallel;
};

struct ComparisonReport {
    std::vector<double> times;
    std::vector<double> fidelity;          // exact vs effective, chosen variant
    std::vector<double> fidelity_alt;      // the other variant (both_variants)
    std::vector<double> operator_distance; // max |(U_exact - U_eff) P_interior|
    double min_fidelity = 1.0;
    double min_fidelity_alt = 1.0;
    RegimeReport regime;
    EffVariant variant = EffVariant::Derivation;
};

/// Pointwise exact-vs-effective comparison from the same initial state.
/// Refuses to run when the regime verdict is Invalid unless overridden.
ComparisonReport compare(const StateVector& psi0, const SystemParams& params,
                         const TimeGrid& grid, const CompareOptions& options = {});

enum class SpectrumMethod { Analytic, Numeric };

/// Eigenvalues of the effective model's mirror block in sector (n, s),
/// ascending, `levels` of them. Analytic uses the completed-square closed
/// form E_m = sqrt(nu(nu+4mu)) (m+1/2) - nu/2 - kappa^2/(nu+4mu) + offset and
/// refuses unstable sectors (nu+4mu <= 0). Numeric diagonalizes the block in
/// a Fock basis enlarged until the requested levels converge; for unstable
/// sectors it returns the raw truncated values (unbounded from below, a
/// documented truncation artifact).
std::vector<double> sector_spectrum(int n, int s, const SystemParams& params, EffVariant variant,
                                    SpectrumMethod method, int levels);

} // namespace mfa

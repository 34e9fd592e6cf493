#pragma once

#include "mfa/matrix.hpp"

namespace mfa {

struct AtomSpec {
    Complex e_amp{1.0, 0.0};
    Complex g_amp{0.0, 0.0};

    static AtomSpec excited() { return {1.0, 0.0}; }
    static AtomSpec ground() { return {0.0, 1.0}; }
    static AtomSpec superposition(Complex e, Complex g) { return {e, g}; }
};

struct ModeSpec {
    enum class Kind { Fock, Coherent };
    Kind kind = Kind::Fock;
    int fock_n = 0;
    Complex alpha{0.0, 0.0};

    static ModeSpec fock(int n) { return {Kind::Fock, n, {}}; }
    static ModeSpec coherent(Complex a) { return {Kind::Coherent, 0, a}; }
};

struct StateSpec {
    AtomSpec atom;
    ModeSpec field;
    ModeSpec mirror;
};

/// Normalized state on a layout. `leakage` is the raw probability mass lost
/// to truncation when expanding coherent components, recorded before
/// renormalization.
struct StateVector {
    Vec amplitudes;
    TensorLayout layout;
    double leakage = 0.0;
};

struct StateOptions {
    double leakage_threshold = 1e-8;
    bool allow_leakage = false; // override flag for deliberately lossy states
};

StateVector make_state(const StateSpec& spec, const TensorLayout& layout,
                       const StateOptions& options = {});

// <psi| A |psi>. Layouts must match.
Complex expectation(const StateVector& state, const OperatorMatrix& op);
Complex expectation(const StateVector& state, const Mat& op, const TensorLayout& op_layout);

// |<psi|phi>|^2.
double fidelity(const StateVector& psi, const StateVector& phi);

// Probability mass on basis states whose field index >= N_f - guard or
// mirror index >= N_m - guard.
double leakage(const StateVector& state, int guard);
double leakage(const Vec& amplitudes, const TensorLayout& layout, int guard);

// Truncated coherent expansion alpha^n e^{-|alpha|^2/2} / sqrt(n!),
// not renormalized; lost_mass gets the truncation tail.
Vec coherent_amplitudes(Complex alpha, int dim, double* lost_mass = nullptr);

} // namespace mfa

#include "mfa/states.hpp"

#include <cmath>
#include <sstream>

namespace mfa {

namespace {

Vec mode_amplitudes(const ModeSpec& spec, int dim, const char* which,
                    const StateOptions& options, double& lost) {
    lost = 0.0;
    if (spec.kind == ModeSpec::Kind::Fock) {
        if (spec.fock_n < 0 || spec.fock_n >= dim) {
            std::ostringstream os;
            os << which << ": Fock index " << spec.fock_n << " outside dimension " << dim;
            throw DimensionError(os.str());
        }
        Vec v = Vec::Zero(dim);
        v(spec.fock_n) = 1.0;
        return v;
    }
    Vec v = coherent_amplitudes(spec.alpha, dim, &lost);
    if (lost > options.leakage_threshold && !options.allow_leakage) {
        // find the dimension that would bring the tail under threshold
        int need = dim;
        double tail = lost;
        while (tail > options.leakage_threshold && need < 1 << 16) {
            need *= 2;
            coherent_amplitudes(spec.alpha, need, &tail);
        }
        std::ostringstream os;
        os << which << ": coherent state alpha=" << spec.alpha.real();
        if (spec.alpha.imag() != 0.0) os << (spec.alpha.imag() < 0 ? "" : "+") << spec.alpha.imag() << "i";
        os << " leaks " << lost << " past dimension " << dim
           << " (threshold " << options.leakage_threshold << "); dimension >= " << need << " required";
        throw LeakageError(os.str());
    }
    v.normalize();
    return v;
}

} // namespace

Vec coherent_amplitudes(Complex alpha, int dim, double* lost_mass) {
    Vec c(dim);
    Complex amp = std::exp(-0.5 * std::norm(alpha));
    double kept = 0.0;
    for (int n = 0; n < dim; ++n) {
        c(n) = amp;
        kept += std::norm(amp);
        amp *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    if (lost_mass) *lost_mass = std::max(0.0, 1.0 - kept);
    return c;
}

StateVector make_state(const StateSpec& spec, const TensorLayout& layout,
                       const StateOptions& options) {
    layout.validate();
    Vec atom(2);
    atom(0) = spec.atom.e_amp;
    atom(1) = spec.atom.g_amp;
    const double an = atom.norm();
    if (an == 0.0) throw DimensionError("make_state: atom amplitudes are all zero");
    atom /= an;

    double lost_f = 0.0, lost_m = 0.0;
    const Vec field = mode_amplitudes(spec.field, layout.field_dim, "field", options, lost_f);
    const Vec mirror = mode_amplitudes(spec.mirror, layout.mirror_dim, "mirror", options, lost_m);

    Vec full(layout.total_dim());
    for (int a = 0; a < layout.atom_dim; ++a)
        for (int n = 0; n < layout.field_dim; ++n)
            for (int m = 0; m < layout.mirror_dim; ++m)
                full(layout.index(a, n, m)) = atom(a) * field(n) * mirror(m);
    full.normalize();
    return StateVector{std::move(full), layout, lost_f + lost_m};
}

Complex expectation(const StateVector& state, const Mat& op, const TensorLayout& op_layout) {
    require_same_layout(state.layout, op_layout, "expectation");
    return state.amplitudes.dot(op * state.amplitudes);
}

Complex expectation(const StateVector& state, const OperatorMatrix& op) {
    return expectation(state, op.entries, op.layout);
}

double fidelity(const StateVector& psi, const StateVector& phi) {
    require_same_layout(psi.layout, phi.layout, "fidelity");
    return std::norm(psi.amplitudes.dot(phi.amplitudes));
}

double leakage(const Vec& amplitudes, const TensorLayout& layout, int guard) {
    if (guard < 0 || guard >= std::min(layout.field_dim, layout.mirror_dim))
        throw DimensionError("leakage: guard " + std::to_string(guard) +
                             " too large for dims " + std::to_string(layout.field_dim) + "x" +
                             std::to_string(layout.mirror_dim));
    double mass = 0.0;
    for (int a = 0; a < layout.atom_dim; ++a)
        for (int n = 0; n < layout.field_dim; ++n)
            for (int m = 0; m < layout.mirror_dim; ++m)
                if (n >= layout.field_dim - guard || m >= layout.mirror_dim - guard)
                    mass += std::norm(amplitudes(layout.index(a, n, m)));
    return mass;
}

double leakage(const StateVector& state, int guard) {
    return leakage(state.amplitudes, state.layout, guard);
}

} // namespace mfa

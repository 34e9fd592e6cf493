#include "mfa/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mfa {

std::string to_string(EffVariant v) {
    return v == EffVariant::Derivation ? "derivation" : "as_printed";
}

EffVariant eff_variant_from_string(const std::string& name) {
    if (name == "derivation") return EffVariant::Derivation;
    if (name == "as_printed") return EffVariant::AsPrinted;
    throw ConfigError("unknown eff_variant '" + name + "' (expected derivation or as_printed)");
}

void SystemParams::validate() const {
    std::ostringstream os;
    if (!(nu > 0.0)) {
        os << "params.nu must be > 0, got " << nu;
        throw ConfigError(os.str());
    }
    if (!(omega > 0.0)) {
        os << "params.omega must be > 0, got " << omega;
        throw ConfigError(os.str());
    }
    if (!(omega0 > 0.0)) {
        os << "params.omega0 must be > 0, got " << omega0;
        throw ConfigError(os.str());
    }
    if (!(lambda >= 0.0)) {
        os << "params.lambda must be >= 0, got " << lambda;
        throw ConfigError(os.str());
    }
    if (!(pole_guard > 0.0)) {
        os << "params.pole_guard must be > 0, got " << pole_guard;
        throw ConfigError(os.str());
    }
    if (cavity_length && mirror_mass) {
        const double g = coupling_g(omega, *cavity_length, *mirror_mass, nu);
        const double mag = std::abs(chi);
        if (std::abs(mag - g) > 1e-12 * std::max(mag, g)) {
            os << "params.chi magnitude " << mag << " is inconsistent with coupling g("
               << "omega=" << omega << ", L=" << *cavity_length << ", m=" << *mirror_mass
               << ", nu=" << nu << ") = " << g;
            throw ConfigError(os.str());
        }
    }
}

double coupling_g(double omega, double length, double mass, double nu) {
    if (!(omega > 0.0) || !(length > 0.0) || !(mass > 0.0) || !(nu > 0.0)) {
        std::ostringstream os;
        os << "coupling_g: all inputs must be > 0 (omega=" << omega << ", L=" << length
           << ", m=" << mass << ", nu=" << nu << ")";
        throw DomainError(os.str());
    }
    return (omega / length) * std::sqrt(1.0 / (2.0 * mass * nu));
}

void require_off_resonance(int n, const SystemParams& params) {
    if (n < 0) throw DomainError("xi_coefficients: n must be >= 0");
    const double root = params.lambda * std::sqrt(static_cast<double>(n + 1));
    const double dist = std::abs(params.nu - root);
    if (dist <= params.pole_guard * std::max(params.nu, params.lambda)) {
        std::ostringstream os;
        os << "xi resonance: |nu - lambda sqrt(n+1)| = " << dist << " at n = " << n
           << " is within pole guard " << params.pole_guard * std::max(params.nu, params.lambda)
           << " (nu = " << params.nu << ", lambda = " << params.lambda << ")";
        throw PoleError(os.str(), n);
    }
}

XiCoefficients xi_coefficients(int n, const SystemParams& params) {
    require_off_resonance(n, params);
    const double root = params.lambda * std::sqrt(static_cast<double>(n + 1));
    XiCoefficients xi;
    xi.n = n;
    xi.xi1 = params.chi / (2.0 * (params.nu + root));
    xi.xi2 = -params.chi / (2.0 * (params.nu - root));
    const double denom = params.lambda * params.lambda * (n + 1) - params.nu * params.nu;
    xi.sum_closed_form = params.chi * root / denom;
    xi.diff_closed_form = params.chi * params.nu / denom;
    return xi;
}

SectorSpec sector_params(int n, int s, const SystemParams& params, EffVariant variant) {
    if (n < 0) throw DomainError("sector_params: n must be >= 0");
    if (s != 1 && s != -1) throw DomainError("sector_params: s must be +1 or -1");
    if (!(params.lambda > 0.0))
        throw ModelAssumptionError("sector_params: lambda must be > 0 for the effective model "
                                   "(the quadratic coefficient divides by lambda sqrt(n+1))");
    const double root = params.lambda * std::sqrt(static_cast<double>(n + 1));
    SectorSpec spec;
    spec.n = n;
    spec.s = s;
    spec.kappa = params.chi * (n + 0.5);
    spec.mu = params.chi * params.chi / root * (variant == EffVariant::Derivation ? s : 1);
    spec.offset = s * root;
    spec.stable = params.nu + 4.0 * spec.mu > 0.0;
    return spec;
}

} // namespace mfa

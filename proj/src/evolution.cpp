#include "mfa/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mfa/ops.hpp"
#include "mfa/spectral.hpp"

namespace mfa {

std::string to_string(PropagatorKind k) {
    switch (k) {
        case PropagatorKind::Exact: return "exact";
        case PropagatorKind::Formula: return "formula";
        default: return "effective";
    }
}

PropagatorKind propagator_kind_from_string(const std::string& name) {
    if (name == "exact") return PropagatorKind::Exact;
    if (name == "formula") return PropagatorKind::Formula;
    if (name == "effective") return PropagatorKind::Effective;
    throw ConfigError("unknown propagator kind '" + name + "' (expected exact, formula or effective)");
}

void TimeGrid::validate() const {
    if (!(t_start >= 0.0) || !(t_end > t_start) || steps < 1) {
        std::ostringstream os;
        os << "time grid requires 0 <= t_start < t_end and steps >= 1, got t_start=" << t_start
           << " t_end=" << t_end << " steps=" << steps;
        throw ConfigError(os.str());
    }
}

std::vector<double> TimeGrid::times() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(steps) + 1);
    const double h = step();
    for (int k = 0; k <= steps; ++k) out[static_cast<std::size_t>(k)] = t_start + h * k;
    out.back() = t_end;
    return out;
}

std::string RegimeReport::verdict_name() const {
    switch (verdict) {
        case Verdict::DispersiveOk: return "dispersive_ok";
        case Verdict::Marginal: return "marginal";
        default: return "invalid";
    }
}

RegimeReport regime_check(const SystemParams& params, int n_max) {
    RegimeReport r;
    r.chi_over_lambda = params.lambda > 0.0 ? params.chi / params.lambda
                                            : std::numeric_limits<double>::infinity();
    r.nu_over_lambda = params.lambda > 0.0 ? params.nu / params.lambda
                                           : std::numeric_limits<double>::infinity();
    const double guard = params.pole_guard * std::max(params.nu, params.lambda);
    for (int n = 0; n <= n_max; ++n) {
        const double root = params.lambda * std::sqrt(static_cast<double>(n + 1));
        const double dist = std::abs(params.nu - root);
        if (dist < r.min_resonance_distance) {
            r.min_resonance_distance = dist;
            r.min_resonance_n = n;
        }
        if (dist > 0.0) {
            r.max_xi1 = std::max(r.max_xi1, std::abs(params.chi / (2.0 * (params.nu + root))));
            r.max_xi2 = std::max(r.max_xi2, std::abs(params.chi / (2.0 * (params.nu - root))));
        }
    }
    if (r.min_resonance_distance < guard)
        r.verdict = RegimeReport::Verdict::Invalid;
    else if (std::max(r.max_xi1, r.max_xi2) > 0.1)
        r.verdict = RegimeReport::Verdict::Marginal;
    else
        r.verdict = RegimeReport::Verdict::DispersiveOk;
    return r;
}

namespace {

Vec phase_by_rho(const RealVec& rho, double t, const Vec& x) {
    Vec y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        y(i) = x(i) * std::exp(Complex{0.0, -rho(i) * t});
    return y;
}

// The three propagators share an apply(t, psi) interface.
struct ExactProp {
    HermitianEigen eig;
    Vec apply(double t, const Vec& psi) const { return eig.apply_exp(t, psi); }
};

struct FormulaProp {
    HermitianEigen tilde;
    RealVec rho;
    TensorLayout layout;

    Vec apply(double t, const Vec& psi) const {
        const Vec phased = phase_by_rho(rho, t, psi);
        Vec w = apply_m_dag(tilde.apply_exp(t, apply_m(phased, layout)), layout);
        for (int m = 0; m < layout.mirror_dim; ++m) {
            const int i = layout.index(1, 0, m);
            w(i) += phased(i);
        }
        return w;
    }
};

struct EffectiveProp {
    kernels::SparsePattern chain; // U2 U1 R M, few nonzeros per column
    HermitianEigen eff;
    RealVec rho;
    TensorLayout layout;

    static EffectiveProp make(const SystemParams& params, const TensorLayout& layout,
                              EffVariant variant) {
        const TransformChain tc(params, layout, variant);
        EffectiveProp p;
        p.chain = kernels::SparsePattern::from_dense(tc.chain);
        p.eff = eigh_blocked(build_h_effective(params, layout, variant).entries);
        p.rho = rho22_diagonal(params, layout);
        p.layout = layout;
        return p;
    }

    Vec apply(double t, const Vec& psi) const {
        const Vec phased = phase_by_rho(rho, t, psi);
        Vec w = chain.apply_adjoint(eff.apply_exp(t, chain.apply(phased)));
        for (int m = 0; m < layout.mirror_dim; ++m) {
            const int i = layout.index(1, 0, m);
            w(i) += phased(i);
        }
        return w;
    }

    // Dense U_eff(t) = C^H e^{-iH_eff t} C e^{-i rho t} + P_g0 e^{-i rho t},
    // built without dense GEMMs: the chain has O(1) nonzeros per column.
    Mat matrix(double t) const {
        const int d = layout.total_dim();

        std::vector<Mat> block_exp;
        block_exp.reserve(eff.blocks.size());
        std::vector<int> block_of(static_cast<std::size_t>(d), -1);
        std::vector<int> local_of(static_cast<std::size_t>(d), -1);
        for (std::size_t b = 0; b < eff.blocks.size(); ++b) {
            const auto& blk = eff.blocks[b];
            Mat phased = blk.eigenvectors;
            for (Eigen::Index j = 0; j < phased.cols(); ++j)
                phased.col(j) *= std::exp(Complex{0.0, -blk.eigenvalues(j) * t});
            block_exp.push_back(phased * blk.eigenvectors.adjoint());
            for (std::size_t i = 0; i < blk.indices.size(); ++i) {
                block_of[static_cast<std::size_t>(blk.indices[i])] = static_cast<int>(b);
                local_of[static_cast<std::size_t>(blk.indices[i])] = static_cast<int>(i);
            }
        }

        // Z = e^{-iH_eff t} C
        Mat z = Mat::Zero(d, d);
        for (int j = 0; j < d; ++j) {
            for (int k = chain.col_start[static_cast<std::size_t>(j)];
                 k < chain.col_start[static_cast<std::size_t>(j) + 1]; ++k) {
                const int r = chain.row[static_cast<std::size_t>(k)];
                const Complex v = chain.val[static_cast<std::size_t>(k)];
                const auto& blk = eff.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(r)])];
                const Mat& e = block_exp[static_cast<std::size_t>(block_of[static_cast<std::size_t>(r)])];
                const int lc = local_of[static_cast<std::size_t>(r)];
                for (std::size_t i = 0; i < blk.indices.size(); ++i)
                    z(blk.indices[i], j) += e(static_cast<Eigen::Index>(i), lc) * v;
            }
        }

        // U = C^H Z, column by column.
        Mat u(d, d);
        for (int j = 0; j < d; ++j) u.col(j) = chain.apply_adjoint(z.col(j));

        for (int j = 0; j < d; ++j) u.col(j) *= std::exp(Complex{0.0, -rho(j) * t});
        for (int m = 0; m < layout.mirror_dim; ++m) {
            const int i = layout.index(1, 0, m);
            u(i, i) += std::exp(Complex{0.0, -rho(i) * t});
        }
        return u;
    }
};

double diag_expect(const Vec& psi, const RealVec& diag) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) acc += diag(i) * std::norm(psi(i));
    return acc;
}

// <b + b^dag> without forming the embedded operator.
double quadrature_expect(const Vec& psi, const TensorLayout& layout) {
    double acc = 0.0;
    for (int a = 0; a < layout.atom_dim; ++a)
        for (int n = 0; n < layout.field_dim; ++n)
            for (int m = 0; m + 1 < layout.mirror_dim; ++m) {
                const Complex c = std::conj(psi(layout.index(a, n, m))) * psi(layout.index(a, n, m + 1));
                acc += 2.0 * std::sqrt(static_cast<double>(m + 1)) * c.real();
            }
    return acc;
}

struct DiagObservables {
    RealVec inversion, photon, phonon;

    explicit DiagObservables(const TensorLayout& layout) {
        const int d = layout.total_dim();
        inversion.resize(d);
        photon.resize(d);
        phonon.resize(d);
        for (int a = 0; a < layout.atom_dim; ++a)
            for (int n = 0; n < layout.field_dim; ++n)
                for (int m = 0; m < layout.mirror_dim; ++m) {
                    const int i = layout.index(a, n, m);
                    inversion(i) = a == 0 ? 1.0 : -1.0;
                    photon(i) = n;
                    phonon(i) = m;
                }
    }
};

void check_leakage_precondition(const StateVector& psi0, double threshold, int guard, bool allow) {
    const double l = leakage(psi0, guard);
    if (l > threshold && !allow) {
        std::ostringstream os;
        os << "initial state carries " << l << " probability in the guard band (threshold "
           << threshold << "); enlarge field/mirror dimensions or set the leakage override";
        throw LeakageError(os.str());
    }
}

void check_leakage_series(ObservableSeries& series, const TensorLayout& layout,
                          double threshold, bool allow) {
    series.max_leakage = series.leakage.empty()
                             ? 0.0
                             : *std::max_element(series.leakage.begin(), series.leakage.end());
    series.leakage_exceeded = series.max_leakage > threshold;
    if (series.leakage_exceeded && !allow) {
        std::ostringstream os;
        os << "evolution leaked " << series.max_leakage << " probability into the guard band "
           << "(threshold " << threshold << ") at dims " << layout.field_dim << "x"
           << layout.mirror_dim << "; roughly doubling the leaking dimension is required";
        throw LeakageError(os.str());
    }
}

} // namespace

ObservableSeries evolve(const StateVector& psi0, PropagatorKind kind, const TimeGrid& grid,
                        const SystemParams& params, const EvolveOptions& options) {
    const TensorLayout layout = psi0.layout;
    params.validate();
    layout.validate();
    check_leakage_precondition(psi0, options.leakage_threshold, options.guard, options.allow_leakage);

    const Mat h_int = build_h_int(params, layout).entries;

    ExactProp exact;
    FormulaProp formula;
    EffectiveProp effective;
    if (kind == PropagatorKind::Exact) {
        exact.eig = eigh_blocked(h_int);
    } else if (kind == PropagatorKind::Formula) {
        formula.tilde = eigh_blocked(build_h_tilde(params, layout).entries);
        formula.rho = rho22_diagonal(params, layout);
        formula.layout = layout;
    } else {
        effective = EffectiveProp::make(params, layout, options.variant);
    }

    const DiagObservables obs(layout);
    const std::vector<double> ts = grid.times();
    const std::size_t count = ts.size();

    ObservableSeries series;
    series.times = ts;
    series.inversion.resize(count);
    series.photon.resize(count);
    series.phonon.resize(count);
    series.quadrature.resize(count);
    series.leakage.resize(count);
    series.energy.resize(count);
    std::vector<double> norm_defect(count);

    kernels::for_each_index(count, options.exec, [&](std::size_t k) {
        const double t = ts[k];
        Vec psi;
        switch (kind) {
            case PropagatorKind::Exact: psi = exact.apply(t, psi0.amplitudes); break;
            case PropagatorKind::Formula: psi = formula.apply(t, psi0.amplitudes); break;
            default: psi = effective.apply(t, psi0.amplitudes); break;
        }
        series.inversion[k] = diag_expect(psi, obs.inversion);
        series.photon[k] = diag_expect(psi, obs.photon);
        series.phonon[k] = diag_expect(psi, obs.phonon);
        series.quadrature[k] = quadrature_expect(psi, layout);
        series.leakage[k] = leakage(psi, layout, options.guard);
        series.energy[k] = psi.dot(h_int * psi).real();
        norm_defect[k] = std::abs(psi.norm() - 1.0);
    });

    series.max_norm_defect = *std::max_element(norm_defect.begin(), norm_defect.end());
    check_leakage_series(series, layout, options.leakage_threshold, options.allow_leakage);
    return series;
}

ComparisonReport compare(const StateVector& psi0, const SystemParams& params,
                         const TimeGrid& grid, const CompareOptions& options) {
    const TensorLayout layout = psi0.layout;
    params.validate();
    layout.validate();
    check_leakage_precondition(psi0, options.leakage_threshold, options.guard, options.allow_leakage);

    ComparisonReport report;
    report.variant = options.variant;
    report.regime = regime_check(params, layout.field_dim - 1);
    if (report.regime.verdict == RegimeReport::Verdict::Invalid && !options.override_regime) {
        std::ostringstream os;
        os << "dispersive regime invalid: resonance nu = lambda sqrt(n+1) at n = "
           << report.regime.min_resonance_n << " (distance " << report.regime.min_resonance_distance
           << "); pass the regime override to compare anyway";
        throw RegimeError(os.str());
    }

    ExactProp exact{eigh_blocked(build_h_int(params, layout).entries)};
    EffectiveProp eff = EffectiveProp::make(params, layout, options.variant);
    EffectiveProp eff_alt;
    if (options.both_variants) {
        const EffVariant other = options.variant == EffVariant::Derivation
                                     ? EffVariant::AsPrinted
                                     : EffVariant::Derivation;
        eff_alt = EffectiveProp::make(params, layout, other);
    }

    const std::vector<double> ts = grid.times();
    const std::size_t count = ts.size();
    report.times = ts;
    report.fidelity.resize(count);
    if (options.both_variants) report.fidelity_alt.resize(count);
    if (options.with_operator_distance) report.operator_distance.resize(count);
    const RealVec interior = interior_mask(layout, 1);

    kernels::for_each_index(count, options.exec, [&](std::size_t k) {
        const double t = ts[k];
        const Vec psi_x = exact.apply(t, psi0.amplitudes);
        const Vec psi_e = eff.apply(t, psi0.amplitudes);
        report.fidelity[k] = std::norm(psi_x.dot(psi_e));
        if (options.both_variants) {
            const Vec psi_a = eff_alt.apply(t, psi0.amplitudes);
            report.fidelity_alt[k] = std::norm(psi_x.dot(psi_a));
        }
        if (options.with_operator_distance) {
            const Mat ux = exact.eig.exp_matrix(t);
            const Mat ue = eff.matrix(t);
            double dmax = 0.0;
            for (int j = 0; j < layout.total_dim(); ++j) {
                if (interior(j) == 0.0) continue;
                for (int i = 0; i < layout.total_dim(); ++i)
                    dmax = std::max(dmax, std::abs(ux(i, j) - ue(i, j)));
            }
            report.operator_distance[k] = dmax;
        }
    });

    report.min_fidelity = *std::min_element(report.fidelity.begin(), report.fidelity.end());
    if (options.both_variants)
        report.min_fidelity_alt =
            *std::min_element(report.fidelity_alt.begin(), report.fidelity_alt.end());
    return report;
}

namespace {

// Real symmetric mirror block nu N + kappa X + mu X^2 + offset at dimension d.
Eigen::MatrixXd sector_block(const SectorSpec& sp, double nu, int d) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        const double xsq_diag = 2.0 * m + 1.0; // <m| X^2 |m>
        h(m, m) = nu * m + sp.mu * xsq_diag + sp.offset;
        if (m + 1 < d) {
            const double x = std::sqrt(static_cast<double>(m + 1)); // <m| X |m+1>
            h(m, m + 1) += sp.kappa * x;
            h(m + 1, m) += sp.kappa * x;
        }
        if (m + 2 < d) {
            const double xsq = std::sqrt(static_cast<double>((m + 1) * (m + 2)));
            h(m, m + 2) += sp.mu * xsq;
            h(m + 2, m) += sp.mu * xsq;
        }
    }
    return h;
}

std::vector<double> lowest_levels(const Eigen::MatrixXd& h, int count) {
    const RealVec ev = eigvals_symmetric(h);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = ev(i);
    return out;
}

} // namespace

std::vector<double> sector_spectrum(int n, int s, const SystemParams& params, EffVariant variant,
                                    SpectrumMethod method, int levels) {
    if (levels < 1) throw DomainError("sector_spectrum: levels must be >= 1");
    const SectorSpec sp = sector_params(n, s, params, variant);
    if (method == SpectrumMethod::Analytic) {
        if (!sp.stable) {
            std::ostringstream os;
            os << "sector (n=" << n << ", s=" << s << ") is unstable: nu + 4 mu = "
               << params.nu + 4.0 * sp.mu << " <= 0; the analytic closed form does not apply";
            throw StabilityError(os.str());
        }
        const double omega_eff = std::sqrt(params.nu * (params.nu + 4.0 * sp.mu));
        const double shift = -0.5 * params.nu - sp.kappa * sp.kappa / (params.nu + 4.0 * sp.mu) + sp.offset;
        std::vector<double> out(static_cast<std::size_t>(levels));
        for (int m = 0; m < levels; ++m) out[static_cast<std::size_t>(m)] = omega_eff * (m + 0.5) + shift;
        return out;
    }

    int d = std::max(64, 4 * levels);
    if (!sp.stable) {
        // unbounded from below once truncation is lifted; report the raw
        // truncated block as-is
        return lowest_levels(sector_block(sp, params.nu, d), levels);
    }
    std::vector<double> prev = lowest_levels(sector_block(sp, params.nu, d), levels);
    const double tol = 1e-10 * params.nu;
    while (d <= (1 << 15)) {
        d *= 2;
        std::vector<double> cur = lowest_levels(sector_block(sp, params.nu, d), levels);
        double delta = 0.0;
        for (int i = 0; i < levels; ++i)
            delta = std::max(delta, std::abs(cur[static_cast<std::size_t>(i)] - prev[static_cast<std::size_t>(i)]));
        if (delta < tol) return cur;
        prev = std::move(cur);
    }
    throw Error("sector_spectrum: numeric levels did not converge by dimension 2^15");
}

} // namespace mfa

#include "mfa/transforms.hpp"

#include <cmath>

#include "mfa/ops.hpp"
#include "mfa/spectral.hpp"

namespace mfa {

namespace {

// Row/column image of the index under M: identity on |e>, field shift
// n -> n-1 on |g>, undefined (-1) on |g, 0, m>.
int m_image(int idx, const TensorLayout& layout) {
    const int nm = layout.mirror_dim;
    const int block = layout.field_dim * nm;
    const int a = idx / block;
    if (a == 0) return idx;
    const int n = (idx - block) / nm;
    if (n == 0) return -1;
    return idx - nm;
}

} // namespace

MOps m_ops(const TensorLayout& layout) {
    layout.validate();
    const SgOps sg = sg_ops(layout.field_dim);
    const Mat im = Mat::Identity(layout.mirror_dim, layout.mirror_dim);
    const Mat iface = Mat::Identity(layout.field_dim, layout.field_dim);
    Mat m = kron3(fock_projector(2, 0), iface, im) + kron3(fock_projector(2, 1), sg.v, im);
    Mat m_dag = m.adjoint();
    return {std::move(m), std::move(m_dag)};
}

Mat r_op_atom() {
    Mat r(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    r(0, 0) = s;
    r(0, 1) = s;
    r(1, 0) = -s;
    r(1, 1) = s;
    return r;
}

OperatorMatrix r_op(const TensorLayout& layout) {
    layout.validate();
    Mat full = kron3(r_op_atom(), Mat::Identity(layout.field_dim, layout.field_dim),
                     Mat::Identity(layout.mirror_dim, layout.mirror_dim));
    return OperatorMatrix{std::move(full), layout, std::nullopt};
}

SmallRotations small_rotations(const SystemParams& params, const TensorLayout& layout) {
    params.validate();
    layout.validate();
    const int nf = layout.field_dim;
    Mat x1 = Mat::Zero(nf, nf), x2 = Mat::Zero(nf, nf);
    for (int n = 0; n < nf; ++n) {
        const XiCoefficients xi = xi_coefficients(n, params);
        x1(n, n) = xi.xi1;
        x2(n, n) = xi.xi2;
    }
    const AtomOps atom = atom_ops();
    const LadderOps mirror = ladder_ops(layout.mirror_dim);
    const Mat g1 = kron3(atom.sigma_plus, x1, mirror.raising) - kron3(atom.sigma_minus, x1, mirror.lowering);
    const Mat g2 = kron3(atom.sigma_plus, x2, mirror.lowering) - kron3(atom.sigma_minus, x2, mirror.raising);
    return {expm_skew(g1), expm_skew(g2)};
}

std::vector<CancellationResidual> cancellation_residuals(const SystemParams& params, int n_max,
                                                         const std::vector<XiCoefficients>& xi) {
    if (n_max < 0) throw DomainError("cancellation_residuals: n_max must be >= 0");
    if (static_cast<int>(xi.size()) < n_max + 1)
        throw DomainError("cancellation_residuals: need xi for every n <= n_max");
    std::vector<CancellationResidual> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double root = params.lambda * std::sqrt(static_cast<double>(n + 1));
        const auto& x = xi[static_cast<std::size_t>(n)];
        out.push_back({n,
                       0.5 * params.chi - x.xi1 * (params.nu + root),
                       0.5 * params.chi + x.xi2 * (params.nu - root)});
    }
    return out;
}

std::vector<CancellationResidual> cancellation_residuals(const SystemParams& params, int n_max) {
    std::vector<XiCoefficients> xi;
    xi.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) xi.push_back(xi_coefficients(n, params));
    return cancellation_residuals(params, n_max, xi);
}

Vec apply_m(const Vec& x, const TensorLayout& layout) {
    Vec y = Vec::Zero(layout.total_dim());
    for (int j = 0; j < layout.total_dim(); ++j) {
        const int i = m_image(j, layout);
        if (i >= 0) y(i) = x(j);
    }
    return y;
}

Vec apply_m_dag(const Vec& x, const TensorLayout& layout) {
    Vec y = Vec::Zero(layout.total_dim());
    for (int j = 0; j < layout.total_dim(); ++j) {
        const int i = m_image(j, layout);
        if (i >= 0) y(j) = x(i);
    }
    return y;
}

Mat sandwich_m(const Mat& a, const TensorLayout& layout) {
    const int d = layout.total_dim();
    Mat out = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const int cj = m_image(j, layout);
        if (cj < 0) continue;
        for (int i = 0; i < d; ++i) {
            const int ci = m_image(i, layout);
            if (ci >= 0) out(i, j) = a(ci, cj);
        }
    }
    return out;
}

RealVec rho22_diagonal(const SystemParams& params, const TensorLayout& layout) {
    RealVec d = RealVec::Zero(layout.total_dim());
    for (int m = 0; m < layout.mirror_dim; ++m)
        d(layout.index(1, 0, m)) = params.nu * m;
    return d;
}

OperatorMatrix evolution_formula(double t, const SystemParams& params, const TensorLayout& layout) {
    const OperatorMatrix h_tilde = build_h_tilde(params, layout);
    Mat u = sandwich_m(expm_hermitian(h_tilde, t), layout);
    u += p_g0(layout);
    const RealVec rho = rho22_diagonal(params, layout);
    for (int j = 0; j < layout.total_dim(); ++j)
        u.col(j) *= std::exp(Complex{0.0, -rho(j) * t});
    return OperatorMatrix{std::move(u), layout, std::nullopt};
}

TransformChain::TransformChain(const SystemParams& p, const TensorLayout& l, EffVariant v)
    : params(p), layout(l), variant(v) {
    MOps mo = m_ops(layout);
    m = std::move(mo.m);
    m_dag = std::move(mo.m_dag);
    r_full = r_op(layout).entries;
    SmallRotations sr = small_rotations(params, layout);
    u1 = std::move(sr.u1);
    u2 = std::move(sr.u2);
    chain = u2 * (u1 * (r_full * m));
}

OperatorMatrix effective_propagator(double t, const SystemParams& params,
                                    const TensorLayout& layout, EffVariant variant) {
    const TransformChain tc(params, layout, variant);
    const OperatorMatrix h_eff = build_h_effective(params, layout, variant);
    Mat u = tc.chain.adjoint() * (expm_hermitian(h_eff, t) * tc.chain);
    u += p_g0(layout);
    const RealVec rho = rho22_diagonal(params, layout);
    for (int j = 0; j < layout.total_dim(); ++j)
        u.col(j) *= std::exp(Complex{0.0, -rho(j) * t});
    return OperatorMatrix{std::move(u), layout, std::nullopt};
}

} // namespace mfa

#include "mfa/hamiltonians.hpp"

#include <cmath>
#include <sstream>

#include "mfa/ops.hpp"

namespace mfa {

namespace {

struct Pieces {
    Mat i2, pe, pg, sx, sz, sp, sm;      // atom
    Mat iface, nf, sqrtn1;               // field
    Mat im, nm, b, bd, x;                // mirror

    explicit Pieces(const TensorLayout& layout) {
        const AtomOps atom = atom_ops();
        sp = atom.sigma_plus;
        sm = atom.sigma_minus;
        sz = atom.sigma_z;
        sx = sp + sm;
        i2 = Mat::Identity(2, 2);
        pe = fock_projector(2, 0);
        pg = fock_projector(2, 1);

        const LadderOps field = ladder_ops(layout.field_dim);
        iface = Mat::Identity(layout.field_dim, layout.field_dim);
        nf = field.number;
        sqrtn1 = sqrt_number_plus_one(layout.field_dim);

        const LadderOps mirror = ladder_ops(layout.mirror_dim);
        im = Mat::Identity(layout.mirror_dim, layout.mirror_dim);
        nm = mirror.number;
        b = mirror.lowering;
        bd = mirror.raising;
        x = b + bd;
    }
};

void check(const SystemParams& params, const TensorLayout& layout) {
    params.validate();
    layout.validate();
}

std::vector<XiCoefficients> chosen_xi(const SystemParams& params, int field_dim) {
    std::vector<XiCoefficients> xi;
    xi.reserve(static_cast<std::size_t>(field_dim));
    for (int n = 0; n < field_dim; ++n) xi.push_back(xi_coefficients(n, params));
    return xi;
}

} // namespace

OperatorMatrix build_h_lab(const SystemParams& params, const TensorLayout& layout, LabModel model) {
    check(params, layout);
    const Pieces p(layout);
    const double g = std::abs(params.chi);
    Mat h = params.omega * kron3(p.i2, p.nf, p.im)
          + params.nu * kron3(p.i2, p.iface, p.nm)
          - g * kron3(p.i2, p.nf, p.x);
    if (model == LabModel::AtomFieldMirror) {
        const LadderOps field = ladder_ops(layout.field_dim);
        h += 0.5 * params.omega0 * kron3(p.sz, p.iface, p.im);
        h += params.lambda * (kron3(p.sp, field.lowering, p.im) + kron3(p.sm, field.raising, p.im));
    }
    return hermitian_operator(std::move(h), layout);
}

OperatorMatrix build_h_int(const SystemParams& params, const TensorLayout& layout) {
    check(params, layout);
    if (std::abs(params.omega - params.omega0) > 1e-12 * std::max(params.omega, params.omega0)) {
        std::ostringstream os;
        os << "build_h_int: the interaction picture assumes the on-resonant atom-field "
              "interaction omega = omega0, got omega = " << params.omega
           << ", omega0 = " << params.omega0;
        throw ModelAssumptionError(os.str());
    }
    const Pieces p(layout);
    const LadderOps field = ladder_ops(layout.field_dim);
    Mat h = params.nu * kron3(p.i2, p.iface, p.nm)
          + params.chi * kron3(p.i2, p.nf, p.x)
          + params.lambda * (kron3(p.sp, field.lowering, p.im) + kron3(p.sm, field.raising, p.im));
    return hermitian_operator(std::move(h), layout);
}

OperatorMatrix build_h_tilde(const SystemParams& params, const TensorLayout& layout) {
    check(params, layout);
    const Pieces p(layout);
    Mat h = params.nu * kron3(p.i2, p.iface, p.nm)
          + params.chi * kron3(p.pe, p.nf, p.x)
          + params.chi * kron3(p.pg, p.nf + p.iface, p.x)
          + params.lambda * kron3(p.sx, p.sqrtn1, p.im);
    return hermitian_operator(std::move(h), layout);
}

OperatorMatrix build_rho22(const SystemParams& params, const TensorLayout& layout) {
    check(params, layout);
    const Pieces p(layout);
    Mat h = params.nu * kron3(p.pg, fock_projector(layout.field_dim, 0), p.nm);
    return hermitian_operator(std::move(h), layout);
}

OperatorMatrix build_h_rotated(const SystemParams& params, const TensorLayout& layout) {
    check(params, layout);
    const Pieces p(layout);
    Mat half = 0.5 * p.iface;
    Mat h = params.nu * kron3(p.i2, p.iface, p.nm)
          + params.chi * kron3(p.i2, p.nf + half, p.x)
          + params.lambda * kron3(p.sz, p.sqrtn1, p.im)
          + 0.5 * params.chi * kron3(p.sx, p.iface, p.x);
    return hermitian_operator(std::move(h), layout);
}

FirstOrderBrackets first_order_brackets(int n, const SystemParams& params, const XiCoefficients& xi) {
    const double gap = 2.0 * params.lambda * std::sqrt(static_cast<double>(n + 1));
    return {0.5 * params.chi - xi.xi1 * (params.nu + gap),
            0.5 * params.chi + xi.xi2 * (params.nu - gap)};
}

OperatorMatrix build_h2_first_order(const SystemParams& params, const TensorLayout& layout,
                                    const std::vector<XiCoefficients>& xi_per_sector) {
    check(params, layout);
    if (static_cast<int>(xi_per_sector.size()) != layout.field_dim)
        throw LayoutError("build_h2_first_order: need one xi pair per photon sector, got " +
                          std::to_string(xi_per_sector.size()) + " for field_dim " +
                          std::to_string(layout.field_dim));
    const Pieces p(layout);
    const int nf = layout.field_dim;

    Mat x1 = Mat::Zero(nf, nf), x2 = Mat::Zero(nf, nf);
    Mat c_jc = Mat::Zero(nf, nf), c_ajc = Mat::Zero(nf, nf);
    for (int n = 0; n < nf; ++n) {
        x1(n, n) = xi_per_sector[static_cast<std::size_t>(n)].xi1;
        x2(n, n) = xi_per_sector[static_cast<std::size_t>(n)].xi2;
        const FirstOrderBrackets br = first_order_brackets(n, params, xi_per_sector[static_cast<std::size_t>(n)]);
        c_jc(n, n) = br.jc;
        c_ajc(n, n) = br.anti_jc;
    }

    const Mat half = 0.5 * p.iface;
    const Mat x_sq = p.x * p.x;
    Mat h = params.nu * kron3(p.i2, p.iface, p.nm)
          + params.lambda * kron3(p.sz, p.sqrtn1, p.im)
          + params.chi * kron3(p.i2, p.nf + half, p.x)
          + 0.5 * params.chi * kron3(p.sz, x1 + x2, x_sq)
          + 0.5 * params.chi * kron3(p.i2, x2 - x1, p.im)
          + params.chi * kron3(p.sx, (x2 - x1) * (p.nf + half), p.im)
          + kron3(p.sp, c_jc, p.bd) + kron3(p.sm, c_jc, p.b)
          + kron3(p.sp, c_ajc, p.b) + kron3(p.sm, c_ajc, p.bd);
    return hermitian_operator(std::move(h), layout);
}

OperatorMatrix build_h2_first_order(const SystemParams& params, const TensorLayout& layout,
                                    bool use_chosen_xi) {
    check(params, layout);
    std::vector<XiCoefficients> xi;
    if (use_chosen_xi) {
        xi = chosen_xi(params, layout.field_dim);
    } else {
        xi.resize(static_cast<std::size_t>(layout.field_dim));
        for (int n = 0; n < layout.field_dim; ++n) xi[static_cast<std::size_t>(n)].n = n;
    }
    return build_h2_first_order(params, layout, xi);
}

OperatorMatrix build_h_effective(const SystemParams& params, const TensorLayout& layout,
                                 EffVariant variant) {
    check(params, layout);
    if (!(params.lambda > 0.0))
        throw ModelAssumptionError("build_h_effective: lambda must be > 0; the quadratic "
                                   "coefficient chi^2/(lambda sqrt(n+1)) is undefined at lambda = 0");
    const Pieces p(layout);
    const int nf = layout.field_dim;
    Mat quad = Mat::Zero(nf, nf);
    for (int n = 0; n < nf; ++n)
        quad(n, n) = params.chi * params.chi / (params.lambda * std::sqrt(static_cast<double>(n + 1)));

    const Mat half = 0.5 * p.iface;
    const Mat x_sq = p.x * p.x;
    Mat h = params.nu * kron3(p.i2, p.iface, p.nm)
          + params.chi * kron3(p.i2, p.nf + half, p.x)
          + params.lambda * kron3(p.sz, p.sqrtn1, p.im)
          + kron3(variant == EffVariant::Derivation ? p.sz : p.i2, quad, x_sq);
    return hermitian_operator(std::move(h), layout);
}

} // namespace mfa

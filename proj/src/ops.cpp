#include "mfa/ops.hpp"

#include <cmath>
#include <string>

namespace mfa {

namespace {

void require_dim(int dim, const char* what) {
    if (dim < 2)
        throw DimensionError(std::string(what) + ": dim must be >= 2, got " + std::to_string(dim));
}

} // namespace

LadderOps ladder_ops(int dim) {
    require_dim(dim, "ladder_ops");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Mat ad = a.adjoint();
    Mat num = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) num(n, n) = static_cast<double>(n);
    return {std::move(a), std::move(ad), std::move(num)};
}

SgOps sg_ops(int dim) {
    require_dim(dim, "sg_ops");
    Mat v = Mat::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) v(n, n + 1) = 1.0;
    Mat vd = v.adjoint();
    return {std::move(v), std::move(vd)};
}

AtomOps atom_ops() {
    Mat sp = Mat::Zero(2, 2);
    sp(0, 1) = 1.0;
    Mat sm = sp.adjoint();
    Mat sz = Mat::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    return {std::move(sp), std::move(sm), std::move(sz)};
}

Mat sqrt_number_plus_one(int dim) {
    require_dim(dim, "sqrt_number_plus_one");
    Mat d = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) d(n, n) = std::sqrt(static_cast<double>(n + 1));
    return d;
}

Mat fock_projector(int dim, int n) {
    if (n < 0 || n >= dim)
        throw DimensionError("fock_projector: index " + std::to_string(n) + " outside dim " + std::to_string(dim));
    Mat p = Mat::Zero(dim, dim);
    p(n, n) = 1.0;
    return p;
}

Mat kron3(const Mat& a, const Mat& f, const Mat& m, Exec exec) {
    return kernels::kron(a, kernels::kron(f, m, exec), exec);
}

OperatorMatrix embed(const Mat& op, Slot slot, const TensorLayout& layout) {
    layout.validate();
    const int want = layout.slot_dim(slot);
    if (op.rows() != want || op.cols() != want)
        throw LayoutError("embed: operator side " + std::to_string(op.rows()) +
                          " does not match slot dimension " + std::to_string(want));
    const Mat ia = Mat::Identity(layout.atom_dim, layout.atom_dim);
    const Mat iface = Mat::Identity(layout.field_dim, layout.field_dim);
    const Mat im = Mat::Identity(layout.mirror_dim, layout.mirror_dim);
    Mat full;
    switch (slot) {
        case Slot::Atom: full = kron3(op, iface, im); break;
        case Slot::Field: full = kron3(ia, op, im); break;
        default: full = kron3(ia, iface, op); break;
    }
    return OperatorMatrix{std::move(full), layout, std::nullopt};
}

Mat p_g0(const TensorLayout& layout) {
    Mat p = Mat::Zero(layout.total_dim(), layout.total_dim());
    for (int m = 0; m < layout.mirror_dim; ++m) {
        const int i = layout.index(1, 0, m);
        p(i, i) = 1.0;
    }
    return p;
}

Mat p_top(const TensorLayout& layout) {
    Mat p = Mat::Zero(layout.total_dim(), layout.total_dim());
    for (int m = 0; m < layout.mirror_dim; ++m) {
        const int i = layout.index(1, layout.field_dim - 1, m);
        p(i, i) = 1.0;
    }
    return p;
}

RealVec interior_mask(const TensorLayout& layout, int guard_field) {
    return interior_mask(layout, guard_field, 0);
}

RealVec interior_mask(const TensorLayout& layout, int guard_field, int guard_mirror) {
    RealVec mask = RealVec::Ones(layout.total_dim());
    for (int a = 0; a < layout.atom_dim; ++a)
        for (int n = 0; n < layout.field_dim; ++n)
            for (int m = 0; m < layout.mirror_dim; ++m)
                if (n >= layout.field_dim - guard_field || m >= layout.mirror_dim - guard_mirror)
                    mask(layout.index(a, n, m)) = 0.0;
    return mask;
}

} // namespace mfa

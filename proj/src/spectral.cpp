#include "mfa/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <lapacke.h>

namespace mfa {

namespace {

// zheevd, in place: a's lower triangle is read, eigenvectors replace a.
void zheevd_inplace(Mat& a, RealVec& w) {
    const auto n = static_cast<lapack_int>(a.rows());
    w.resize(n);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    if (info != 0)
        throw Error("zheevd failed with info = " + std::to_string(info));
}

// Union-find over the structural nonzero pattern.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

std::vector<std::vector<int>> components(const Mat& h) {
    const int n = static_cast<int>(h.rows());
    UnionFind uf(n);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i)
            if (h(i, j) != Complex{0.0, 0.0} || h(j, i) != Complex{0.0, 0.0}) uf.unite(i, j);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(uf.find(i))].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& g : groups)
        if (!g.empty()) out.push_back(std::move(g));
    return out;
}

} // namespace

RealVec HermitianEigen::eigenvalues_sorted() const {
    RealVec all(dim);
    int k = 0;
    for (const auto& b : blocks)
        for (Eigen::Index i = 0; i < b.eigenvalues.size(); ++i) all(k++) = b.eigenvalues(i);
    std::sort(all.data(), all.data() + all.size());
    return all;
}

Mat HermitianEigen::eigenvectors_dense() const {
    Mat w = Mat::Zero(dim, dim);
    int col = 0;
    for (const auto& b : blocks) {
        const int s = static_cast<int>(b.indices.size());
        for (int j = 0; j < s; ++j, ++col)
            for (int i = 0; i < s; ++i) w(b.indices[static_cast<std::size_t>(i)], col) = b.eigenvectors(i, j);
    }
    return w;
}

Vec HermitianEigen::apply_exp(double t, const Vec& x) const {
    Vec y(dim);
    for (const auto& b : blocks) {
        const int s = static_cast<int>(b.indices.size());
        Vec local(s);
        for (int i = 0; i < s; ++i) local(i) = x(b.indices[static_cast<std::size_t>(i)]);
        Vec coeff = b.eigenvectors.adjoint() * local;
        for (int i = 0; i < s; ++i) coeff(i) *= std::exp(Complex{0.0, -b.eigenvalues(i) * t});
        Vec back = b.eigenvectors * coeff;
        for (int i = 0; i < s; ++i) y(b.indices[static_cast<std::size_t>(i)]) = back(i);
    }
    return y;
}

void HermitianEigen::accumulate_exp(double t, Mat& out) const {
    for (const auto& b : blocks) {
        const int s = static_cast<int>(b.indices.size());
        Mat phased = b.eigenvectors;
        for (int j = 0; j < s; ++j) phased.col(j) *= std::exp(Complex{0.0, -b.eigenvalues(j) * t});
        Mat u = phased * b.eigenvectors.adjoint();
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < s; ++i)
                out(b.indices[static_cast<std::size_t>(i)], b.indices[static_cast<std::size_t>(j)]) += u(i, j);
    }
}

Mat HermitianEigen::exp_matrix(double t) const {
    Mat u = Mat::Zero(dim, dim);
    accumulate_exp(t, u);
    return u;
}

HermitianEigen eigh_blocked(const Mat& h, double herm_rel_tol) {
    require_hermitian(h, herm_rel_tol, "eigh_blocked");
    HermitianEigen out;
    out.dim = static_cast<int>(h.rows());
    for (auto& idx : components(h)) {
        HermitianEigen::Block b;
        const int s = static_cast<int>(idx.size());
        Mat local(s, s);
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < s; ++i)
                local(i, j) = h(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        // zheevd reads the lower triangle only, so tiny A-A^H asymmetry
        // within tolerance is resolved there.
        zheevd_inplace(local, b.eigenvalues);
        b.eigenvectors = std::move(local);
        b.indices = std::move(idx);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

Mat expm_hermitian(const Mat& h, double t, double herm_rel_tol) {
    return eigh_blocked(h, herm_rel_tol).exp_matrix(t);
}

Mat expm_hermitian(const OperatorMatrix& h, double t, double herm_rel_tol) {
    return expm_hermitian(h.entries, t, herm_rel_tol);
}

Mat expm_skew(const Mat& g, double rel_tol) {
    return expm_hermitian(Mat(kI * g), 1.0, rel_tol);
}

RealVec eigvals_symmetric(const Eigen::MatrixXd& h) {
    Eigen::MatrixXd a = h;
    const auto n = static_cast<lapack_int>(a.rows());
    RealVec w(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0)
        throw Error("dsyevd failed with info = " + std::to_string(info));
    return w;
}

} // namespace mfa

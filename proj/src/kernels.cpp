#include "mfa/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfa::kernels {

void for_each_index(std::size_t count, Exec exec, const std::function<void(std::size_t)>& f) {
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        f(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < count; ++i) f(i);
#endif
}

Mat kron(const Mat& a, const Mat& b, Exec exec) {
    const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Mat c(ar * br, ac * bc);
    for_each_index(static_cast<std::size_t>(ar), exec, [&](std::size_t i) {
        for (Eigen::Index j = 0; j < ac; ++j) {
            const Complex aij = a(static_cast<Eigen::Index>(i), j);
            if (aij == Complex{0.0, 0.0}) {
                c.block(static_cast<Eigen::Index>(i) * br, j * bc, br, bc).setZero();
            } else {
                c.block(static_cast<Eigen::Index>(i) * br, j * bc, br, bc) = aij * b;
            }
        }
    });
    return c;
}

kernels::SparsePattern SparsePattern::from_dense(const Mat& m) {
    SparsePattern p;
    p.rows = static_cast<int>(m.rows());
    p.cols = static_cast<int>(m.cols());
    p.col_start.assign(static_cast<std::size_t>(p.cols) + 1, 0);
    for (int j = 0; j < p.cols; ++j) {
        p.col_start[static_cast<std::size_t>(j)] = static_cast<int>(p.row.size());
        for (int i = 0; i < p.rows; ++i) {
            const Complex v = m(i, j);
            if (v != Complex{0.0, 0.0}) {
                p.row.push_back(i);
                p.val.push_back(v);
            }
        }
    }
    p.col_start[static_cast<std::size_t>(p.cols)] = static_cast<int>(p.row.size());
    return p;
}

Vec SparsePattern::apply(const Vec& x) const {
    Vec y = Vec::Zero(rows);
    for (int j = 0; j < cols; ++j) {
        const Complex xj = x(j);
        if (xj == Complex{0.0, 0.0}) continue;
        for (int k = col_start[static_cast<std::size_t>(j)]; k < col_start[static_cast<std::size_t>(j) + 1]; ++k)
            y(row[static_cast<std::size_t>(k)]) += val[static_cast<std::size_t>(k)] * xj;
    }
    return y;
}

Vec SparsePattern::apply_adjoint(const Vec& x) const {
    Vec y = Vec::Zero(cols);
    for (int j = 0; j < cols; ++j) {
        Complex acc{0.0, 0.0};
        for (int k = col_start[static_cast<std::size_t>(j)]; k < col_start[static_cast<std::size_t>(j) + 1]; ++k)
            acc += std::conj(val[static_cast<std::size_t>(k)]) * x(row[static_cast<std::size_t>(k)]);
        y(j) = acc;
    }
    return y;
}

} // namespace mfa::kernels

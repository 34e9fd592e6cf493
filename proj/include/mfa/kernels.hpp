#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mfa/types.hpp"

namespace mfa {

// Execution policy for the data-parallel kernels. Serial and Parallel run the
// same per-item code on disjoint outputs, so results are bitwise identical;
// Serial is kept as the reference implementation for tests and benchmarks.
enum class Exec { Serial, Parallel };

namespace kernels {

// Dispatch f(i) for i in [0, count). Parallel uses a static OpenMP schedule.
void for_each_index(std::size_t count, Exec exec, const std::function<void(std::size_t)>& f);

// C = A (x) B, row-parallel assembly.
Mat kron(const Mat& a, const Mat& b, Exec exec = Exec::Parallel);

// Nonzero pattern of a matrix, column-major triplets. Used to push structured
// transform chains (few nonzeros per column) through per-time conjugations
// without dense GEMMs.
struct SparsePattern {
    int rows = 0, cols = 0;
    std::vector<int> row;       // nonzero row indices, column by column
    std::vector<Complex> val;
    std::vector<int> col_start; // size cols+1

    static SparsePattern from_dense(const Mat& m);
    std::size_t nnz() const { return val.size(); }

    Vec apply(const Vec& x) const;          // y = C x
    Vec apply_adjoint(const Vec& x) const;  // y = C^H x
};

} // namespace kernels
} // namespace mfa

#pragma once

#include <optional>

#include "mfa/layout.hpp"
#include "mfa/types.hpp"

namespace mfa {

/// Dense complex operator on the full tensor basis, tagged with its layout.
struct OperatorMatrix {
    Mat entries;
    TensorLayout layout;
    std::optional<bool> hermitian_hint;

    int dim() const { return static_cast<int>(entries.rows()); }
};

double max_abs(const Mat& a);

// max |A - A^H| over all entries.
double hermiticity_defect(const Mat& a);

bool is_hermitian(const Mat& a, double rel_tol);

// Throws HermiticityError (reporting the deviation) unless
// max|A - A^H| <= rel_tol * max|A|.
void require_hermitian(const Mat& a, double rel_tol, const char* what);

// max |U^H U - I|.
double unitarity_defect(const Mat& u);

// Full-space operator with a verified Hermitian invariant (1e-12 relative).
OperatorMatrix hermitian_operator(Mat entries, const TensorLayout& layout);

} // namespace mfa

#include "mfa/matrix.hpp"

#include <sstream>

namespace mfa {

double max_abs(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& a) {
    return max_abs(a - a.adjoint().eval());
}

bool is_hermitian(const Mat& a, double rel_tol) {
    return hermiticity_defect(a) <= rel_tol * max_abs(a);
}

void require_hermitian(const Mat& a, double rel_tol, const char* what) {
    const double defect = hermiticity_defect(a);
    const double scale = max_abs(a);
    if (defect > rel_tol * scale) {
        std::ostringstream os;
        os << what << ": matrix is not Hermitian, max |A - A^H| = " << defect
           << " exceeds " << rel_tol << " * max|A| = " << rel_tol * scale;
        throw HermiticityError(os.str());
    }
}

double unitarity_defect(const Mat& u) {
    Mat g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    return max_abs(g);
}

OperatorMatrix hermitian_operator(Mat entries, const TensorLayout& layout) {
    require_hermitian(entries, 1e-12, "hermitian_operator");
    return OperatorMatrix{std::move(entries), layout, true};
}

} // namespace mfa

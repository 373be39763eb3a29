#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ptspeed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/* largest entrywise deviation from the adjoint */
inline double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(ComplexMatrix(m - m.adjoint()));
}

inline bool is_hermitian_within(const ComplexMatrix& m, double tol) {
    return hermiticity_defect(m) <= tol * std::max(1.0, max_abs(m));
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

}  // namespace ptspeed

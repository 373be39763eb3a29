#include "ptspeed/pt_metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "ptspeed/operator_core.hpp"

namespace ptspeed {

namespace {

/* eigendecomposition of a validated metric, shared by the operations below */
struct MetricEig {
    RealVector values;
    ComplexMatrix vectors;
};

MetricEig decompose_metric(const MetricOperator& metric) {
    if (metric.g.rows() != metric.g.cols() || metric.g.rows() == 0) {
        throw DimensionMismatchError("metric: g must be square and non-empty");
    }
    if (!is_hermitian_within(metric.g, 1e-12)) {
        throw NotHermitianError("metric: g deviates from its adjoint beyond 1e-12");
    }
    const HermitianEig eig = hermitian_eig(metric.g);
    const double top = eig.values.cwiseAbs().maxCoeff();
    if (eig.values.minCoeff() <= 1e-12 * top) {
        throw SingularMetricError("metric: smallest eigenvalue " +
                                  std::to_string(eig.values.minCoeff()) +
                                  " is not positive relative to " + std::to_string(top));
    }
    return {eig.values, eig.vectors};
}

ComplexMatrix apply_power(const MetricEig& eig, double exponent) {
    RealVector powered(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        powered[i] = std::pow(eig.values[i], exponent);
    }
    ComplexMatrix m = eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (m + m.adjoint());
}

}  // namespace

void validate_metric(const MetricOperator& metric) {
    (void)decompose_metric(metric);
}

bool is_pseudo_hermitian(const ComplexMatrix& f, const MetricOperator& metric, double tol) {
    const MetricEig eig = decompose_metric(metric);
    if (f.rows() != metric.g.rows() || f.cols() != metric.g.cols()) {
        throw DimensionMismatchError("is_pseudo_hermitian: F and g dimensions differ");
    }
    const ComplexMatrix ginv = apply_power(eig, -1.0);
    const double defect = max_abs(ComplexMatrix(f.adjoint() - ginv * f * metric.g));
    return defect <= tol * std::max(1.0, max_abs(f));
}

ComplexMatrix metric_factor(const MetricOperator& metric) {
    return apply_power(decompose_metric(metric), 0.5);
}

ComplexMatrix hermitian_counterpart(const ComplexMatrix& h, const MetricOperator& metric) {
    if (!is_pseudo_hermitian(h, metric)) {
        throw NotPseudoHermitianError(
            "hermitian_counterpart: F^+ != g^{-1} F g for the supplied metric");
    }
    const MetricEig eig = decompose_metric(metric);
    const ComplexMatrix u = apply_power(eig, 0.5);
    const ComplexMatrix uinv = apply_power(eig, -0.5);
    return uinv * h * u;
}

int param_count(int n, OperatorFamily family) {
    if (n < 1) {
        throw DimensionOutOfRangeError("param_count: n must be positive");
    }
    return family == OperatorFamily::Hermitian ? n * n : n * (2 * n - 1);
}

MetricOperator metric_from_eigenvectors(const ComplexMatrix& f, double cond_limit) {
    if (f.rows() != f.cols() || f.rows() == 0) {
        throw DimensionMismatchError("metric_from_eigenvectors: F must be square");
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(f, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NoConvergenceError("metric_from_eigenvectors: eigensolver did not converge");
    }
    /* Conditioning first: a defective F scatters its eigenvalue cluster by
       machine-noise powers, so realness of the computed spectrum is
       meaningless until the eigenvector matrix is known to be sound. */
    const ComplexMatrix s = solver.eigenvectors();
    Eigen::JacobiSVD<ComplexMatrix> svd(s);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0.0) || smax / smin > cond_limit) {
        throw SingularMetricError(
            "metric_from_eigenvectors: eigenvector matrix is numerically defective "
            "(exceptional point); no well-conditioned metric exists");
    }
    const double scale = solver.eigenvalues().cwiseAbs().maxCoeff();
    const double max_imag = solver.eigenvalues().imag().cwiseAbs().maxCoeff();
    if (max_imag > 1e-9 * std::max(1.0, scale)) {
        throw NotPseudoHermitianError(
            "metric_from_eigenvectors: spectrum has imaginary parts up to " +
            std::to_string(max_imag) + "; no positive metric exists");
    }
    MetricOperator metric{ComplexMatrix(s * s.adjoint())};
    metric.g = 0.5 * (metric.g + metric.g.adjoint());
    return metric;
}

}  // namespace ptspeed

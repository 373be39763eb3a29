#pragma once

#include "ptspeed/errors.hpp"
#include "ptspeed/types.hpp"

namespace ptspeed {

/* Positive-definite metric g defining the adjoint F^+ = g^{-1} F g. */
struct MetricOperator {
    ComplexMatrix g;
};

/* Validates positivity: smallest eigenvalue must exceed 1e-12 of the largest,
   else SingularMetricError. */
void validate_metric(const MetricOperator& metric);

/* Does F satisfy F^+ = g^{-1} F g within tol (relative to |F|)? */
bool is_pseudo_hermitian(const ComplexMatrix& f, const MetricOperator& metric,
                         double tol = 1e-10);

/* Canonical factor u with u u^+ = g: the principal Hermitian square root. */
ComplexMatrix metric_factor(const MetricOperator& metric);

/* Similarity transform h = u^{-1} H u with u = metric_factor(g); Hermitian
   whenever H is pseudo-Hermitian with respect to g, and isospectral to H.
   Throws NotPseudoHermitianError otherwise. */
ComplexMatrix hermitian_counterpart(const ComplexMatrix& h, const MetricOperator& metric);

/* Real parameter counts of the two operator families on an n-level system:
   Hermitian has n^2, a PT-symmetric (parity-adjoint-symmetric) family has
   n(2n - 1); the families differ by n(n - 1) parameters. */
enum class OperatorFamily { Hermitian, PTSymmetric };

int param_count(int n, OperatorFamily family);

/* Metric built from the eigenvectors of a diagonalizable F with real
   spectrum: g = S S^+ where F = S D S^{-1}.  Throws SingularMetricError when
   the eigenvector matrix is too ill-conditioned (defective F, e.g. at an
   exceptional point) and NotPseudoHermitianError when the spectrum is not
   real. */
MetricOperator metric_from_eigenvectors(const ComplexMatrix& f, double cond_limit = 1e8);

}  // namespace ptspeed

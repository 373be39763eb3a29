#include "ptspeed/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <limits>

namespace ptspeed {

namespace {

void require_square(const Eigen::Index rows, const Eigen::Index cols, const char* what) {
    if (rows != cols || rows == 0) {
        throw DimensionMismatchError(std::string(what) + ": matrix must be square and non-empty");
    }
}

/* max column sum */
double one_norm(const RealMatrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

/* Pade numerator/denominator split: U collects odd powers, V even ones.
   exp(A) ~ (V - U)^{-1} (V + U). */
void pade(const RealMatrix& a, int degree, RealMatrix& u, RealMatrix& v) {
    const Eigen::Index n = a.rows();
    const RealMatrix id = RealMatrix::Identity(n, n);
    const RealMatrix a2 = a * a;

    switch (degree) {
        case 3: {
            static constexpr std::array<double, 4> b{120, 60, 12, 1};
            u = a * (b[3] * a2 + b[1] * id);
            v = b[2] * a2 + b[0] * id;
            return;
        }
        case 5: {
            static constexpr std::array<double, 6> b{30240, 15120, 3360, 420, 30, 1};
            const RealMatrix a4 = a2 * a2;
            u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
            v = b[4] * a4 + b[2] * a2 + b[0] * id;
            return;
        }
        case 7: {
            static constexpr std::array<double, 8> b{17297280, 8648640, 1995840, 277200,
                                                     25200,    1512,    56,      1};
            const RealMatrix a4 = a2 * a2;
            const RealMatrix a6 = a4 * a2;
            u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            return;
        }
        case 9: {
            static constexpr std::array<double, 10> b{17643225600, 8821612800, 2075673600,
                                                      302702400,   30270240,   2162160,
                                                      110880,      3960,       90,
                                                      1};
            const RealMatrix a4 = a2 * a2;
            const RealMatrix a6 = a4 * a2;
            const RealMatrix a8 = a6 * a2;
            u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            return;
        }
        default: {  // 13
            static constexpr std::array<double, 14> b{
                64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                1187353796428800.0,  129060195264000.0,   10559470521600.0,
                670442572800.0,      33522128640.0,       1323241920.0,
                40840800.0,          960960.0,            16380.0,
                182.0,               1.0};
            const RealMatrix a4 = a2 * a2;
            const RealMatrix a6 = a4 * a2;
            u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                     b[3] * a2 + b[1] * id);
            v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                b[0] * id;
            return;
        }
    }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
    require_square(m.rows(), m.cols(), "hermitian_eig");
    if (!is_hermitian_within(m, hermiticity_tol)) {
        throw NotHermitianError("hermitian_eig: input deviates from its adjoint beyond tolerance");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(ComplexMatrix(0.5 * (m + m.adjoint())));
    if (solver.info() != Eigen::Success) {
        throw NoConvergenceError("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& rho) {
    const HermitianEig eig = hermitian_eig(rho);
    RealVector clamped = eig.values;
    for (Eigen::Index i = 0; i < clamped.size(); ++i) {
        if (clamped[i] < -1e-10) {
            throw NotPositiveError("hermitian_sqrt: eigenvalue " + std::to_string(clamped[i]) +
                                   " below the -1e-10 clamp");
        }
        // |value| < 1e-10 is treated as an exact zero on both sides: the sqrt
        // is not Lipschitz at 0, so keeping eigensolver noise there would
        // amplify O(eps) rounding into O(sqrt(eps)) errors (visible on
        // rank-deficient states such as pure projectors)
        clamped[i] = clamped[i] < 1e-10 ? 0.0 : std::sqrt(clamped[i]);
    }
    ComplexMatrix s = eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (s + s.adjoint());
}

RealMatrix real_expm(const RealMatrix& m, double t) {
    require_square(m.rows(), m.cols(), "real_expm");
    RealMatrix a = m * t;
    if (!a.allFinite()) {
        throw OverflowError("real_expm: scaled input is not finite");
    }

    // Higham (2005) degree thresholds for the 1-norm
    static constexpr double theta3 = 1.495585217958292e-2;
    static constexpr double theta5 = 2.539398330063230e-1;
    static constexpr double theta7 = 9.504178996162932e-1;
    static constexpr double theta9 = 2.097847961257068e0;
    static constexpr double theta13 = 5.371920351148152e0;

    const double norm = one_norm(a);
    int degree = 13;
    int squarings = 0;
    if (norm <= theta3) {
        degree = 3;
    } else if (norm <= theta5) {
        degree = 5;
    } else if (norm <= theta7) {
        degree = 7;
    } else if (norm <= theta9) {
        degree = 9;
    } else if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        a /= std::pow(2.0, squarings);
    }

    RealMatrix u, v;
    pade(a, degree, u, v);
    RealMatrix f = RealMatrix(v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        f = f * f;
        if (!f.allFinite()) {
            throw OverflowError("real_expm: result overflowed while squaring");
        }
    }
    if (!f.allFinite()) {
        throw OverflowError("real_expm: result is not finite");
    }
    return f;
}

Spectrum spectrum(const RealMatrix& m) {
    require_square(m.rows(), m.cols(), "spectrum");
    if (m.rows() > 64) {
        throw DimensionOutOfRangeError("spectrum: dimension " + std::to_string(m.rows()) +
                                       " exceeds the supported 64");
    }
    Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NoConvergenceError("spectrum: QR iteration did not converge");
    }
    Spectrum out;
    out.values = solver.eigenvalues();

    Eigen::JacobiSVD<ComplexMatrix> svd(solver.eigenvectors());
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    out.vector_condition = (smin > 0.0 && std::isfinite(smax / smin))
                               ? smax / smin
                               : std::numeric_limits<double>::infinity();
    return out;
}

ComplexVector complex_eigenvalues(const ComplexMatrix& m) {
    require_square(m.rows(), m.cols(), "complex_eigenvalues");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NoConvergenceError("complex_eigenvalues: eigensolver did not converge");
    }
    return solver.eigenvalues();
}

}  // namespace ptspeed

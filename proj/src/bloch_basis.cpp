#include "ptspeed/bloch_basis.hpp"

#include <cmath>
#include <string>

namespace ptspeed {

namespace {

void require_dim(const ComplexMatrix& m, const OperatorBasis& basis, const char* what) {
    if (basis.n < 2 || static_cast<int>(basis.sigma.size()) != basis.n * basis.n) {
        throw DimensionMismatchError(std::string(what) + ": malformed basis");
    }
    if (m.rows() != basis.n || m.cols() != basis.n) {
        throw DimensionMismatchError(std::string(what) + ": operator is " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                     " but the basis is for n = " + std::to_string(basis.n));
    }
}

}  // namespace

OperatorBasis make_basis(int n) {
    if (n < 2 || n > 8) {
        throw DimensionOutOfRangeError("make_basis: n = " + std::to_string(n) +
                                       " outside the supported range [2, 8]");
    }
    OperatorBasis basis;
    basis.n = n;
    basis.sigma.reserve(static_cast<std::size_t>(n) * n);

    basis.sigma.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));

    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (int h = 0; h < n; ++h) {
        for (int k = h + 1; k < n; ++k) {
            ComplexMatrix s = ComplexMatrix::Zero(n, n);
            s(h, k) = inv_rt2;
            s(k, h) = inv_rt2;
            basis.sigma.push_back(std::move(s));
        }
    }
    for (int h = 0; h < n; ++h) {
        for (int k = h + 1; k < n; ++k) {
            ComplexMatrix s = ComplexMatrix::Zero(n, n);
            s(h, k) = Complex(0.0, -inv_rt2);
            s(k, h) = Complex(0.0, inv_rt2);
            basis.sigma.push_back(std::move(s));
        }
    }
    for (int l = 1; l < n; ++l) {
        ComplexMatrix s = ComplexMatrix::Zero(n, n);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) s(j, j) = norm;
        s(l, l) = -static_cast<double>(l) * norm;
        basis.sigma.push_back(std::move(s));
    }
    return basis;
}

RealVector components(const ComplexMatrix& m, const OperatorBasis& basis) {
    require_dim(m, basis, "components");
    const int d = basis.dim();
    RealVector r(d);
    const double scale = std::max(1.0, max_abs(m));
    for (int j = 0; j < d; ++j) {
        const Complex c = (m * basis.sigma[static_cast<std::size_t>(j) + 1]).trace();
        if (std::abs(c.imag()) > 1e-10 * scale) {
            throw ImaginaryResidueError("components: tr(m sigma_" + std::to_string(j + 1) +
                                        ") has imaginary residue " + std::to_string(c.imag()));
        }
        r[j] = c.real();
    }
    return r;
}

BlochState embed(const ComplexMatrix& rho, const OperatorBasis& basis) {
    require_dim(rho, basis, "embed");
    if (hermiticity_defect(rho) > 1e-10 * std::max(1.0, max_abs(rho))) {
        throw NotHermitianError("embed: state deviates from its adjoint beyond 1e-10");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10) {
        throw TraceViolationError("embed: trace " + std::to_string(tr.real()) + "+" +
                                  std::to_string(tr.imag()) + "i is not 1 within 1e-10");
    }
    return {basis.n, components(rho, basis)};
}

ComplexMatrix reconstruct(const BlochState& state, const OperatorBasis& basis) {
    if (state.n != basis.n) {
        throw DimensionMismatchError("reconstruct: state n = " + std::to_string(state.n) +
                                     " does not match basis n = " + std::to_string(basis.n));
    }
    if (state.r.size() != basis.dim()) {
        throw LengthMismatchError("reconstruct: Bloch vector has " +
                                  std::to_string(state.r.size()) + " components, expected " +
                                  std::to_string(basis.dim()));
    }
    ComplexMatrix rho =
        ComplexMatrix::Identity(basis.n, basis.n) / static_cast<double>(basis.n);
    for (int j = 0; j < basis.dim(); ++j) {
        rho += state.r[j] * basis.sigma[static_cast<std::size_t>(j) + 1];
    }
    return rho;
}

PurityRadius purity_radius(const ComplexMatrix& rho, const OperatorBasis& basis) {
    const BlochState state = embed(rho, basis);
    PurityRadius out;
    out.purity = (rho * rho).trace().real();
    out.radius_sq = state.r.squaredNorm();
    return out;
}

}  // namespace ptspeed

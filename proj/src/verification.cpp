#include "ptspeed/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/errors.hpp"
#include "ptspeed/models.hpp"
#include "ptspeed/operator_core.hpp"
#include "ptspeed/propagator.hpp"
#include "ptspeed/pt_metric.hpp"
#include "ptspeed/speedometry.hpp"
#include "ptspeed/unravel.hpp"

namespace ptspeed {

namespace {

ComplexMatrix random_complex_matrix(int n, rng::Stream& stream) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = stream.complex_gaussian();
        }
    }
    return m;
}

ComplexMatrix random_hermitian(int n, double scale, rng::Stream& stream) {
    const ComplexMatrix a = random_complex_matrix(n, stream);
    return scale * 0.5 * (a + a.adjoint());
}

ComplexMatrix random_density(int n, rng::Stream& stream) {
    const ComplexMatrix a = random_complex_matrix(n, stream);
    const ComplexMatrix p = a * a.adjoint();
    return p / p.trace().real();
}

}  // namespace

LindbladModel random_model(const ModelGenerator& gen) {
    if (gen.n < 2 || gen.n > 8) {
        throw DimensionOutOfRangeError("random_model: n must lie in [2, 8], got " +
                                       std::to_string(gen.n));
    }
    if (!(gen.hamiltonian_scale > 0.0) || !std::isfinite(gen.hamiltonian_scale) ||
        !(gen.lindblad_scale > 0.0) || !std::isfinite(gen.lindblad_scale)) {
        throw ConfigError("random_model: scales must be positive and finite");
    }
    if (gen.n_lindblads < 0) {
        throw ConfigError("random_model: n_lindblads must be non-negative");
    }

    rng::Stream stream(rng::substream_seed(gen.seed, 0));
    LindbladModel model;
    model.n = gen.n;
    model.hamiltonian = random_hermitian(gen.n, gen.hamiltonian_scale, stream);
    for (int k = 0; k < gen.n_lindblads; ++k) {
        if (gen.hermitian_lindblads) {
            model.lindblads.push_back(random_hermitian(gen.n, gen.lindblad_scale, stream));
        } else {
            model.lindblads.push_back(gen.lindblad_scale * random_complex_matrix(gen.n, stream));
        }
    }
    return model;
}

bool SuiteReport::all_passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed(); });
}

namespace {

using CaseCheck = std::function<std::optional<std::string>(int)>;

PropertyResult run_cases(const std::string& name, int n_cases, const CaseCheck& check) {
    PropertyResult result;
    result.name = name;
    result.n_cases = n_cases;
    for (int k = 0; k < n_cases; ++k) {
        if (auto failure = check(k)) {
            ++result.n_failed;
            if (result.counterexample.empty()) {
                result.counterexample = *failure;
            }
        }
    }
    return result;
}

std::string describe(int case_index, int n, const std::string& what, double value) {
    std::ostringstream out;
    out << "case " << case_index << " (n = " << n << "): " << what << " = " << value;
    return out.str();
}

/* Greedy nearest-neighbour matching distance between two eigenvalue
   multisets; infinity when the sizes differ. */
double spectra_mismatch(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    std::vector<Complex> pool(b.data(), b.data() + b.size());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pool.size(); ++j) {
            const double d = std::abs(a[i] - pool[j]);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        worst = std::max(worst, best_dist);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

ModelGenerator case_generator(std::uint64_t seed, std::uint64_t salt, int case_index) {
    ModelGenerator gen;
    gen.n = 2 + case_index % 2;
    gen.n_lindblads = 1 + case_index % 3;
    gen.hermitian_lindblads = (case_index % 5 == 0);
    gen.seed = rng::substream_seed(seed, salt * 1000003ULL + static_cast<std::uint64_t>(case_index));
    return gen;
}

}  // namespace

SuiteReport run_property_suite(std::uint64_t seed, int n_cases, bool inject_fault) {
    if (n_cases < 1) {
        throw ConfigError("run_property_suite: n_cases must be at least 1");
    }

    SuiteReport report;
    report.seed = seed;
    report.n_cases = n_cases;

    // 1. Bloch embedding round trip and purity bookkeeping
    report.properties.push_back(run_cases(
        "embed/reconstruct round trip", n_cases, [&](int k) -> std::optional<std::string> {
            const int n = 2 + k % 3;
            rng::Stream stream(rng::substream_seed(seed, 11000 + static_cast<std::uint64_t>(k)));
            const OperatorBasis basis = make_basis(n);
            const ComplexMatrix rho = random_density(n, stream);
            const BlochState state = embed(rho, basis);
            const double round_trip = max_abs(ComplexMatrix(reconstruct(state, basis) - rho));
            if (round_trip > 1e-12) {
                return describe(k, n, "round-trip deviation", round_trip);
            }
            const PurityRadius pr = purity_radius(rho, basis);
            const double direct = (rho * rho).trace().real();
            if (std::abs(pr.purity - direct) > 1e-12 ||
                std::abs(pr.radius_sq - state.r.squaredNorm()) > 1e-12) {
                return describe(k, n, "purity bookkeeping deviation", std::abs(pr.purity - direct));
            }
            return std::nullopt;
        }));

    // 2. affine Bloch generator consistent with the operator flow
    report.properties.push_back(run_cases(
        "Bloch generator matches operator flow", n_cases, [&](int k) -> std::optional<std::string> {
            const ModelGenerator mg = case_generator(seed, 2, k);
            const LindbladModel model = random_model(mg);
            rng::Stream stream(rng::substream_seed(seed, 12000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix rho = random_density(mg.n, stream);
            const OperatorBasis basis = make_basis(mg.n);
            BlochGenerator gen = bloch_generator(model, basis);
            if (inject_fault && k == 0) {
                gen.lambda(0, 0) += 0.5;  // harness self-test: must be caught below
            }
            const RealVector via_bloch = gen.lambda * components(rho, basis) + gen.b;
            const RealVector via_operator = components(apply_liouvillian(model, rho), basis);
            const double dev = (via_bloch - via_operator).cwiseAbs().maxCoeff();
            if (dev > 1e-9 * std::max(1.0, via_operator.cwiseAbs().maxCoeff())) {
                return describe(k, mg.n, "flow deviation", dev);
            }
            if (mg.hermitian_lindblads && gen.b.norm() > 1e-12) {
                return describe(k, mg.n, "drift for Hermitian jump operators", gen.b.norm());
            }
            return std::nullopt;
        }));

    // 3. spectra closed under conjugation; affine extension adds one zero mode
    report.properties.push_back(run_cases(
        "spectrum conjugation symmetry", n_cases, [&](int k) -> std::optional<std::string> {
            const ModelGenerator mg = case_generator(seed, 3, k);
            const LindbladModel model = random_model(mg);
            const OperatorBasis basis = make_basis(mg.n);
            const BlochGenerator gen = bloch_generator(model, basis);
            const ComplexVector eigs = spectrum(gen.lambda).values;
            const double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
            const double conj_dev = spectra_mismatch(eigs, eigs.conjugate());
            if (conj_dev > 1e-8 * scale) {
                return describe(k, mg.n, "conjugation mismatch", conj_dev);
            }
            ComplexVector extended(eigs.size() + 1);
            extended << Complex(0.0, 0.0), eigs;
            const double affine_dev = spectra_mismatch(spectrum(gen.full).values, extended);
            if (affine_dev > 1e-7 * scale) {
                return describe(k, mg.n, "affine spectrum mismatch", affine_dev);
            }
            return std::nullopt;
        }));

    // 4. speed splits orthogonally into radial and tangential parts
    report.properties.push_back(run_cases(
        "Pythagorean speed split", n_cases, [&](int k) -> std::optional<std::string> {
            const ModelGenerator mg = case_generator(seed, 4, k);
            const LindbladModel model = random_model(mg);
            rng::Stream stream(rng::substream_seed(seed, 14000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix rho = random_density(mg.n, stream);
            const OperatorBasis basis = make_basis(mg.n);
            const BlochGenerator gen = bloch_generator(model, basis);
            const RealVector r = components(rho, basis);
            const RealVector rdot = gen.lambda * r + gen.b;
            const RealVector rhat = r / r.norm();
            const double radial = rhat.dot(rdot);
            const double tangential_sq = (rdot - radial * rhat).squaredNorm();

            const double v_sq = speed_squared(model, basis, rho);
            const double v_r = radial_speed(model, rho);
            if (std::abs(v_r - std::abs(radial)) > 1e-9 * std::max(1.0, v_r)) {
                return describe(k, mg.n, "radial route mismatch", std::abs(v_r - std::abs(radial)));
            }
            const double split = std::abs(v_sq - radial * radial - tangential_sq);
            if (split > 1e-9 * std::max(1.0, v_sq)) {
                return describe(k, mg.n, "split deviation", split);
            }
            return std::nullopt;
        }));

    // 5. coherent + cross + dissipative terms reproduce the squared speed
    report.properties.push_back(run_cases(
        "decomposition terms sum to squared speed", n_cases,
        [&](int k) -> std::optional<std::string> {
            const ModelGenerator mg = case_generator(seed, 5, k);
            const LindbladModel model = random_model(mg);
            rng::Stream stream(rng::substream_seed(seed, 15000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix rho = random_density(mg.n, stream);
            const OperatorBasis basis = make_basis(mg.n);
            const double v_sq = speed_squared(model, basis, rho);
            const double total = speed_decomposition(model, rho).total();
            const double dev = std::abs(total - v_sq);
            if (dev > 1e-9 * std::max(1.0, v_sq)) {
                return describe(k, mg.n, "sum deviation", dev);
            }
            return std::nullopt;
        }));

    // 6. skew information sandwiched between zero and the variance
    report.properties.push_back(run_cases(
        "skew information sandwich", n_cases, [&](int k) -> std::optional<std::string> {
            const int n = 2 + k % 3;
            rng::Stream stream(rng::substream_seed(seed, 16000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix h = random_hermitian(n, 1.0, stream);
            const ComplexMatrix rho = random_density(n, stream);
            const double skew = wy_skew(h, rho);
            const double var = variance(h, rho);
            if (skew < -1e-12 || skew > var + 1e-12) {
                return describe(k, n, "sandwich violation, skew", skew);
            }
            return std::nullopt;
        }));

    // 7. radial speed equals the jump-operator skew sum
    report.properties.push_back(run_cases(
        "radial speed identity", n_cases, [&](int k) -> std::optional<std::string> {
            const ModelGenerator mg = case_generator(seed, 7, k);
            const LindbladModel model = random_model(mg);
            rng::Stream stream(rng::substream_seed(seed, 17000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix rho = random_density(mg.n, stream);
            const RadialIdentity identity = radial_speed_identity_check(model, rho);
            const double dev = std::abs(identity.radial_speed - identity.skew_sum_form);
            if (dev > 1e-9 * std::max(1.0, identity.radial_speed)) {
                return describe(k, mg.n, "identity deviation", dev);
            }
            return std::nullopt;
        }));

    // 8. closed form, exact exponential, and RK4 agree on the driven model
    report.properties.push_back(run_cases(
        "closed form / exact / RK4 triple agreement", n_cases,
        [&](int k) -> std::optional<std::string> {
            rng::Stream stream(rng::substream_seed(seed, 18000 + static_cast<std::uint64_t>(k)));
            TwoLevelParams params;
            params.g = 0.1 + 2.9 * stream.uniform();
            params.gamma = 0.1 + 2.9 * stream.uniform();
            const double t = 0.3 + 2.7 * stream.uniform();
            RealVector r0(3);
            r0 << stream.gaussian(), stream.gaussian(), stream.gaussian();
            const double cap = 0.9 / std::sqrt(2.0);  // stay inside the pure-state ball
            if (r0.norm() > cap) {
                r0 *= cap / r0.norm();
            }

            const LindbladModel model = pt_model(params);
            const OperatorBasis basis = make_basis(2);
            const BlochGenerator gen = bloch_generator(model, basis);
            const RealVector exact = evolve_exact(gen, r0, t);
            const RealVector closed = pt_closed_form(params, {2, r0}, t).r;
            const double closed_dev = (closed - exact).cwiseAbs().maxCoeff();
            if (closed_dev > 1e-9) {
                return describe(k, 2, "closed-form deviation", closed_dev);
            }
            const int steps = static_cast<int>(std::ceil(t / 1e-3));
            const Trajectory rk4 = evolve_rk4(gen, r0, t, t / steps);
            const double rk4_dev = (rk4.states.back() - exact).cwiseAbs().maxCoeff();
            if (rk4_dev > 1e-6) {
                return describe(k, 2, "RK4 deviation", rk4_dev);
            }
            return std::nullopt;
        }));

    // 9. trajectory ensemble reproduces the deterministic flow (one sampled
    //    configuration; the Monte Carlo cost dwarfs every other property)
    report.properties.push_back(
        run_cases("ensemble matches deterministic flow", 1, [&](int) -> std::optional<std::string> {
            const LindbladModel model = pt_model({2.0, 1.0});
            const OperatorBasis basis = make_basis(2);
            ComplexVector psi0 = ComplexVector::Zero(2);
            psi0[0] = 1.0;
            const double t = 0.5;
            const EnsembleEstimate est =
                ensemble_mean(model, psi0, t, 1e-3, 500, rng::substream_seed(seed, 19000));
            const RealVector exact = evolve_exact(model, basis, named_init("up_z"), t);
            const RealVector got = components(est.mean_rho, basis);
            for (int i = 0; i < 3; ++i) {
                const double dev = std::abs(got[i] - exact[i]);
                if (dev > 4.0 * est.standard_error[i] + 2e-3) {
                    return describe(0, 2, "ensemble deviation beyond sampling error", dev);
                }
            }
            return std::nullopt;
        }));

    // 10. metric conjugation preserves the spectrum
    report.properties.push_back(run_cases(
        "metric counterpart preserves spectrum", n_cases, [&](int k) -> std::optional<std::string> {
            const int n = 2 + k % 2;
            rng::Stream stream(rng::substream_seed(seed, 20000 + static_cast<std::uint64_t>(k)));
            const ComplexMatrix h = random_hermitian(n, 1.0, stream);
            const ComplexMatrix a = random_complex_matrix(n, stream);
            const ComplexMatrix metric =
                a * a.adjoint() + 0.5 * ComplexMatrix::Identity(n, n);
            const MetricOperator g{metric};
            const ComplexMatrix u = metric_factor(g);
            const ComplexMatrix f = u * h * u.inverse();
            if (!is_pseudo_hermitian(f, g, 1e-9)) {
                return describe(k, n, "constructed operator failed the adjoint relation", 1.0);
            }
            const ComplexMatrix counterpart = hermitian_counterpart(f, g);
            const double dev = spectra_mismatch(complex_eigenvalues(counterpart),
                                                complex_eigenvalues(h));
            if (dev > 1e-9 * std::max(1.0, max_abs(h))) {
                return describe(k, n, "spectrum deviation", dev);
            }
            return std::nullopt;
        }));

    return report;
}

std::string format_report(const SuiteReport& report) {
    std::ostringstream out;
    out << "property suite: seed " << report.seed << ", " << report.n_cases << " cases\n";
    for (const PropertyResult& p : report.properties) {
        if (p.passed()) {
            out << "pass  " << p.name << " (" << p.n_cases << " cases)\n";
        } else {
            out << "FAIL  " << p.name << " (" << p.n_failed << "/" << p.n_cases
                << " failed): " << p.counterexample << "\n";
        }
    }
    out << (report.all_passed() ? "all properties passed\n" : "PROPERTY FAILURES DETECTED\n");
    return out.str();
}

}  // namespace ptspeed

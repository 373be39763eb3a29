#include "ptspeed/models.hpp"

#include <cmath>

namespace ptspeed {

namespace {

ComplexMatrix pauli(char axis) {
    ComplexMatrix m(2, 2);
    switch (axis) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

void validate_params(const TwoLevelParams& p) {
    if (!std::isfinite(p.g) || !std::isfinite(p.gamma) || p.g <= 0.0 || p.gamma < 0.0) {
        throw ConfigError("two-level params: need finite g > 0 and gamma >= 0");
    }
}

LindbladModel dephasing_model(const TwoLevelParams& p) {
    validate_params(p);
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = 0.5 * p.g * pauli('z');
    if (p.gamma > 0.0) {
        m.lindblads = {std::sqrt(p.gamma) * pauli('z')};
    }
    return m;
}

LindbladModel pt_model(const TwoLevelParams& p) {
    validate_params(p);
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = 0.5 * p.g * pauli('x');
    if (p.gamma > 0.0) {
        m.lindblads = {std::sqrt(p.gamma) * pauli('z')};
    }
    return m;
}

double dephasing_speed_closed_form(const TwoLevelParams& p, const BlochState& r0, double t) {
    validate_params(p);
    if (r0.n != 2 || r0.r.size() != 3) {
        throw LengthMismatchError("dephasing_speed_closed_form: expected a two-level state");
    }
    const double planar = r0.r[0] * r0.r[0] + r0.r[1] * r0.r[1];
    return std::exp(-4.0 * p.gamma * t) * (4.0 * p.gamma * p.gamma + p.g * p.g) * planar;
}

BlochState pt_closed_form(const TwoLevelParams& p, const BlochState& r0, double t) {
    validate_params(p);
    if (r0.n != 2 || r0.r.size() != 3) {
        throw LengthMismatchError("pt_closed_form: expected a two-level state");
    }
    const double g = p.g, gamma = p.gamma;
    const double w_sq = (g - gamma) * (g + gamma);  // signed w^2, stable near g = gamma

    // c(t) = cos(wt), s(t) = sin(wt)/w, continued through w^2 <= 0
    double c, s;
    if (std::abs(g - gamma) <= 1e-8 * g) {
        // degenerate neighbourhood: polynomial branch in (w t)^2, signed
        const double x = w_sq * t * t;
        c = 1.0 - x / 2.0 + x * x / 24.0;
        s = t * (1.0 - x / 6.0 + x * x / 120.0);
    } else if (w_sq > 0.0) {
        const double w = std::sqrt(w_sq);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
    } else {
        const double k = std::sqrt(-w_sq);
        c = std::cosh(k * t);
        s = std::sinh(k * t) / k;
    }

    const double damp = std::exp(-gamma * t);
    BlochState out;
    out.n = 2;
    out.r.resize(3);
    out.r[0] = std::exp(-2.0 * gamma * t) * r0.r[0];
    out.r[1] = damp * ((c - gamma * s) * r0.r[1] - g * s * r0.r[2]);
    out.r[2] = damp * (g * s * r0.r[1] + (c + gamma * s) * r0.r[2]);
    return out;
}

RealVector named_init(const std::string& name) {
    RealVector r = RealVector::Zero(3);
    const double rad = 1.0 / std::sqrt(2.0);
    if (name == "up_z") {
        r[2] = rad;
    } else if (name == "down_z") {
        r[2] = -rad;
    } else if (name == "plus_x") {
        r[0] = rad;
    } else {
        throw ConfigError("unknown initial state '" + name +
                          "' (expected up_z, down_z or plus_x)");
    }
    return r;
}

LindbladModel named_model(const std::string& name, const TwoLevelParams& p) {
    if (name == "pt") return pt_model(p);
    if (name == "dephasing") return dephasing_model(p);
    throw ConfigError("unknown model '" + name + "' (expected pt or dephasing)");
}

}  // namespace ptspeed

#include "ptspeed/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/errors.hpp"
#include "ptspeed/propagator.hpp"
#include "ptspeed/speedometry.hpp"

namespace ptspeed {

SpeedTable build_speed_table(const LindbladModel& model, const RealVector& r0, double t_max,
                             double dt) {
    if (model.n != 2) {
        throw DimensionMismatchError("speed table: only two-level models have the fixed "
                                     "(r_x, r_y, r_z) row layout, got n = " +
                                     std::to_string(model.n));
    }
    const OperatorBasis basis = make_basis(2);
    const BlochGenerator gen = bloch_generator(model, basis);
    const Trajectory traj = evolve_exact_grid(gen, r0, t_max, dt);

    SpeedTable table;
    table.rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const RealVector& r = traj.states[i];
        const ComplexMatrix rho = reconstruct({2, r}, basis);

        SpeedRow row;
        row.t = traj.times[i];
        row.v = std::sqrt(speed_squared(model, basis, gen, rho));
        row.v_r = radial_speed(model, rho);
        row.v_t = std::sqrt(std::max(0.0, row.v * row.v - row.v_r * row.v_r));
        row.r_x = r[0];
        row.r_y = r[1];
        row.r_z = r[2];
        row.purity = purity_radius(rho, basis).purity;
        table.rows.push_back(row);
    }
    return table;
}

namespace {

void append_value(std::string& line, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    line += buf;
}

}  // namespace

void write_csv(std::ostream& out, const SpeedTable& table) {
    out << "t,v,v_R,v_T,r_x,r_y,r_z,purity\n";
    std::string line;
    for (const SpeedRow& row : table.rows) {
        line.clear();
        const double values[] = {row.t,   row.v,   row.v_r, row.v_t,
                                 row.r_x, row.r_y, row.r_z, row.purity};
        for (int k = 0; k < 8; ++k) {
            if (k > 0) line += ',';
            append_value(line, values[k]);
        }
        line += '\n';
        out << line;
    }
}

void write_json(std::ostream& out, const SpeedTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SpeedRow& row : table.rows) {
        rows.push_back({{"t", row.t},
                        {"v", row.v},
                        {"v_R", row.v_r},
                        {"v_T", row.v_t},
                        {"r_x", row.r_x},
                        {"r_y", row.r_y},
                        {"r_z", row.r_z},
                        {"purity", row.purity}});
    }
    out << rows.dump(2) << '\n';
}

std::vector<std::size_t> local_maxima_indices(const std::vector<double>& y,
                                              double relative_margin) {
    std::vector<std::size_t> out;
    if (y.size() < 3) {
        return out;
    }
    double amplitude = 0.0;
    for (double v : y) {
        amplitude = std::max(amplitude, std::abs(v));
    }
    const double margin = relative_margin * amplitude;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] + margin && y[i] > y[i + 1] + margin) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> local_minima_indices(const std::vector<double>& y,
                                              double relative_margin) {
    std::vector<double> negated(y.size());
    std::transform(y.begin(), y.end(), negated.begin(), [](double v) { return -v; });
    return local_maxima_indices(negated, relative_margin);
}

double refine_extremum(const std::vector<double>& t, const std::vector<double>& y,
                       std::size_t i) {
    if (i == 0 || i + 1 >= y.size() || t.size() != y.size()) {
        throw ConfigError("refine_extremum: index must be interior to matching series");
    }
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (denom == 0.0) {
        return t[i];
    }
    const double h = 0.5 * (t[i + 1] - t[i - 1]);
    const double shift = 0.5 * h * (y[i - 1] - y[i + 1]) / denom;
    return t[i] + std::clamp(shift, -h, h);
}

std::vector<double> zero_crossings(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size()) {
        throw LengthMismatchError("zero_crossings: series lengths differ");
    }
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        if (y[i] == 0.0) {
            roots.push_back(t[i]);
        } else if ((y[i] > 0.0) != (y[i + 1] > 0.0) && y[i + 1] != 0.0) {
            roots.push_back(t[i] - y[i] * (t[i + 1] - t[i]) / (y[i + 1] - y[i]));
        }
    }
    if (!y.empty() && y.back() == 0.0) {
        roots.push_back(t.back());
    }
    return roots;
}

}  // namespace ptspeed

#include "ptspeed/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/errors.hpp"
#include "ptspeed/liouvillian.hpp"
#include "ptspeed/model_io.hpp"
#include "ptspeed/models.hpp"
#include "ptspeed/operator_core.hpp"
#include "ptspeed/propagator.hpp"
#include "ptspeed/table.hpp"
#include "ptspeed/unravel.hpp"
#include "ptspeed/verification.hpp"

namespace ptspeed::cli {

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double effective_dt(const RunConfig& config) {
    if (config.dt != 0.0) {
        return config.dt;
    }
    return 1e-3 / std::max(config.g, config.gamma);
}

void check_time_grid(double t_max, double dt) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ConfigError("t-max: must be positive and finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("dt: must be positive and finite");
    }
    if (dt > t_max) {
        throw ConfigError("dt: must not exceed t-max");
    }
}

LindbladModel resolve_model(const RunConfig& config) {
    if (!config.model_file.empty()) {
        try {
            return load_model(config.model_file);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("model-file: " + std::string(e.what()));
        }
    }
    if (config.model_name == "pt" || config.model_name == "dephasing") {
        return named_model(config.model_name, {config.g, config.gamma});
    }
    throw ConfigError("model: unknown name '" + config.model_name +
                      "' (expected pt, dephasing, or --model-file)");
}

RealVector resolve_init(const std::string& init) {
    if (init.find(',') == std::string::npos) {
        try {
            return named_init(init);
        } catch (const Error& e) {
            throw ConfigError("init: " + std::string(e.what()));
        }
    }
    std::vector<double> values;
    std::istringstream in(init);
    std::string field;
    while (std::getline(in, field, ',')) {
        char* end = nullptr;
        const double x = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0' || !std::isfinite(x)) {
            throw ConfigError("init: cannot parse component '" + field + "'");
        }
        values.push_back(x);
    }
    if (values.size() != 3) {
        throw ConfigError("init: explicit Bloch vector needs three components, got " +
                          std::to_string(values.size()));
    }
    RealVector r(3);
    r << values[0], values[1], values[2];
    if (r.squaredNorm() > pure_radius_sq(2) + 1e-12) {
        throw ConfigError("init: Bloch vector lies outside the physical ball");
    }
    return r;
}

void require_two_level(const LindbladModel& model, const char* command) {
    if (model.n != 2) {
        throw ConfigError(std::string("model: ") + command +
                          " requires a two-level model, got n = " + std::to_string(model.n));
    }
}

/* Output sink: file when a path is configured, the provided stream otherwise. */
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw ConfigError("out: cannot open '" + path + "' for writing");
            }
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

void emit_table(const SpeedTable& table, const RunConfig& config, const std::string& path,
                std::ostream& fallback) {
    Sink sink(path, fallback);
    if (config.format == "json") {
        write_json(sink.get(), table);
    } else {
        write_csv(sink.get(), table);
    }
}

int run_simulate(const RunConfig& config, std::ostream& out) {
    const LindbladModel model = resolve_model(config);
    require_two_level(model, "simulate");
    const double dt = effective_dt(config);
    check_time_grid(config.t_max, dt);
    const RealVector r0 = resolve_init(config.init);
    const SpeedTable table = build_speed_table(model, r0, config.t_max, dt);
    emit_table(table, config, config.out_path, out);
    return 0;
}

int run_classify(const RunConfig& config, std::ostream& out) {
    const LindbladModel model = resolve_model(config);
    const PhaseClassification phase = classify_phase(model);

    std::vector<Complex> eigs(phase.eigenvalues.data(),
                              phase.eigenvalues.data() + phase.eigenvalues.size());
    std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    nlohmann::ordered_json record;
    record["label"] = to_string(phase.label);
    record["eigenvalues"] = nlohmann::ordered_json::array();
    for (const Complex& z : eigs) {
        record["eigenvalues"].push_back({z.real(), z.imag()});
    }
    record["coalescence_gap"] = phase.coalescence_gap;

    Sink sink(config.out_path, out);
    sink.get() << record.dump(2) << '\n';
    return 0;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
    if (!config.model_file.empty()) {
        throw ConfigError("model-file: sweep scans the builtin family; use --model");
    }
    if (config.g_grid.empty()) {
        throw ConfigError("g-grid: sweep needs a nonempty grid");
    }
    if (config.gamma_grid.empty()) {
        throw ConfigError("gamma-grid: sweep needs a nonempty grid");
    }
    Sink sink(config.out_path, out);
    sink.get() << "g,gamma,label,max_imag,coalescence_gap\n";
    for (const double g : config.g_grid) {
        for (const double gamma : config.gamma_grid) {
            RunConfig point = config;
            point.g = g;
            point.gamma = gamma;
            const LindbladModel model = resolve_model(point);
            const PhaseClassification phase = classify_phase(model);
            sink.get() << format_double(g) << ',' << format_double(gamma) << ','
                       << to_string(phase.label) << ',' << format_double(phase.max_imag) << ','
                       << format_double(phase.coalescence_gap) << '\n';
        }
    }
    return 0;
}

/* Deterministic pure-state vector for an initial Bloch vector: named states
   map to fixed vectors; explicit triples go through the top eigenvector of
   the reconstructed state (which must be pure). */
ComplexVector initial_state_vector(const std::string& init) {
    ComplexVector psi = ComplexVector::Zero(2);
    if (init == "up_z") {
        psi[0] = 1.0;
        return psi;
    }
    if (init == "down_z") {
        psi[1] = 1.0;
        return psi;
    }
    if (init == "plus_x") {
        psi[0] = psi[1] = 1.0 / std::sqrt(2.0);
        return psi;
    }
    const RealVector r = resolve_init(init);
    if (std::abs(r.squaredNorm() - pure_radius_sq(2)) > 1e-9) {
        throw ConfigError("init: unravel needs a pure state (squared radius 1/2)");
    }
    const OperatorBasis basis = make_basis(2);
    const HermitianEig eig = hermitian_eig(reconstruct({2, r}, basis));
    psi = eig.vectors.col(1);  // eigenvalues ascend; the pure direction is last
    const int lead = std::abs(psi[0]) >= std::abs(psi[1]) ? 0 : 1;
    psi *= std::conj(psi[lead]) / std::abs(psi[lead]);  // deterministic phase
    return psi / psi.norm();
}

int run_unravel(const RunConfig& config, std::ostream& out) {
    const LindbladModel model = resolve_model(config);
    require_two_level(model, "unravel");
    const double dt = effective_dt(config);
    check_time_grid(config.t_max, dt);
    if (config.n_traj < 100) {
        throw ConfigError("n-traj: must be at least 100");
    }
    const ComplexVector psi0 = initial_state_vector(config.init);
    const EnsembleEstimate est =
        ensemble_mean(model, psi0, config.t_max, dt, config.n_traj, config.seed);

    const OperatorBasis basis = make_basis(2);
    const RealVector r0 = components(ComplexMatrix(psi0 * psi0.adjoint()), basis);
    const RealVector exact = evolve_exact(model, basis, r0, config.t_max);
    const RealVector mean = components(est.mean_rho, basis);

    nlohmann::ordered_json record;
    record["t"] = config.t_max;
    record["dt"] = dt;
    record["n_traj"] = est.n_traj;
    record["seed"] = est.seed;
    record["mean_r"] = {mean[0], mean[1], mean[2]};
    record["standard_error"] = {est.standard_error[0], est.standard_error[1],
                                est.standard_error[2]};
    record["exact_r"] = {exact[0], exact[1], exact[2]};
    RealVector sigmas(3);
    for (int i = 0; i < 3; ++i) {
        const double se = est.standard_error[i];
        sigmas[i] = se > 0.0 ? std::abs(mean[i] - exact[i]) / se : 0.0;
    }
    record["deviation_sigmas"] = {sigmas[0], sigmas[1], sigmas[2]};

    Sink sink(config.out_path, out);
    sink.get() << record.dump(2) << '\n';
    return 0;
}

int run_figure1(const RunConfig& config, std::ostream& out) {
    if (!config.model_file.empty()) {
        throw ConfigError("model-file: figure1 uses the builtin driven family");
    }
    struct Panel {
        const char* suffix;
        double gamma_factor;
    };
    const Panel panels[] = {{"_unbroken", 0.5}, {"_critical", 1.0}, {"_broken", 2.0}};

    const std::string base = config.out_path.empty()
                                 ? (config.format == "json" ? "figure1.json" : "figure1.csv")
                                 : config.out_path;
    const std::filesystem::path base_path(base);
    const RealVector r0 = resolve_init(config.init);

    for (const Panel& panel : panels) {
        RunConfig point = config;
        point.gamma = config.g * panel.gamma_factor;
        const double dt = effective_dt(point);
        check_time_grid(config.t_max, dt);
        const LindbladModel model = pt_model({point.g, point.gamma});
        const SpeedTable table = build_speed_table(model, r0, config.t_max, dt);

        std::filesystem::path path = base_path;
        path.replace_filename(base_path.stem().string() + panel.suffix +
                              base_path.extension().string());
        emit_table(table, config, path.string(), out);
        out << path.string() << '\n';
    }
    return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    if (config.cases < 1) {
        throw ConfigError("cases: must be at least 1");
    }
    const SuiteReport report = run_property_suite(config.seed, config.cases);
    Sink sink(config.out_path, out);
    sink.get() << format_report(report);
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.format != "csv" && config.format != "json") {
            throw ConfigError("format: must be csv or json");
        }
        if (config.command == "simulate") return run_simulate(config, out);
        if (config.command == "classify") return run_classify(config, out);
        if (config.command == "sweep") return run_sweep(config, out);
        if (config.command == "unravel") return run_unravel(config, out);
        if (config.command == "figure1") return run_figure1(config, out);
        if (config.command == "verify") return run_verify(config, out);
        throw ConfigError("command: unknown command '" + config.command + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ModelFormatError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ptspeed::cli

#include "ptspeed/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ptspeed {

namespace {

using nlohmann::json;

ComplexMatrix parse_matrix(const json& rows, int n, const std::string& name) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        throw ModelFormatError("model: " + name + " must be an array of " + std::to_string(n) +
                               " rows");
    }
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ModelFormatError("model: " + name + " row " + std::to_string(i) +
                                   " must have " + std::to_string(n) + " entries");
        }
        for (int j = 0; j < n; ++j) {
            const json& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw ModelFormatError("model: " + name + "[" + std::to_string(i) + "][" +
                                       std::to_string(j) + "] must be an [re, im] pair");
            }
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

json dump_matrix(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

LindbladModel parse_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ModelFormatError(std::string("model: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("H") || !doc.contains("L")) {
        throw ModelFormatError("model: expected an object with fields n, H, L");
    }
    if (!doc["n"].is_number_integer()) {
        throw ModelFormatError("model: n must be an integer");
    }
    const int n = doc["n"].get<int>();
    if (n < 2) {
        throw ModelFormatError("model: n must be at least 2");
    }

    LindbladModel model;
    model.n = n;
    model.hamiltonian = parse_matrix(doc["H"], n, "H");
    if (!doc["L"].is_array()) {
        throw ModelFormatError("model: L must be an array of matrices");
    }
    for (std::size_t k = 0; k < doc["L"].size(); ++k) {
        model.lindblads.push_back(parse_matrix(doc["L"][k], n, "L[" + std::to_string(k) + "]"));
    }

    if (!is_hermitian_within(model.hamiltonian, 1e-12)) {
        throw NotHermitianError("model: H is not Hermitian within 1e-12");
    }
    validate_model(model);
    return model;
}

LindbladModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModelFormatError("model: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const LindbladModel& model) {
    validate_model(model);
    json doc;
    doc["n"] = model.n;
    doc["H"] = dump_matrix(model.hamiltonian);
    json ls = json::array();
    for (const auto& l : model.lindblads) ls.push_back(dump_matrix(l));
    doc["L"] = ls;
    return doc.dump(2) + "\n";
}

void save_model(const LindbladModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ModelFormatError("model: cannot write '" + path + "'");
    }
    out << serialize_model(model);
}

}  // namespace ptspeed

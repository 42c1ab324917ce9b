#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbound/complex_matrix.hpp"
#include "qbound/errors.hpp"
#include "qbound/operators.hpp"

namespace qbound {

using nlohmann::json;

/// Matrix file schema: {"dim": d, "entries": [[re, im], ...]} with entries
/// row-major. CSV is accepted for real matrices (d rows of d columns).
inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const cplx& v : m.entries()) entries.push_back({v.real(), v.imag()});
    return {{"dim", m.dim()}, {"entries", entries}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix JSON needs 'dim' and 'entries' fields");
    const int dim = j.at("dim").get<int>();
    std::vector<cplx> entries;
    for (const json& e : j.at("entries")) {
        if (e.is_number()) {
            entries.emplace_back(e.get<double>(), 0.0);
        } else {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("matrix entries must be numbers or [re, im] pairs");
            entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (int(entries.size()) != dim * dim)
        throw ParseError("matrix JSON has " + std::to_string(entries.size()) +
                         " entries, expected dim^2");
    return {dim, std::move(entries)};
}

inline ComplexMatrix matrix_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("CSV cell is not a real number: '" + cell + "'", lineno, col);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const int d = int(rows.size());
    if (d == 0) throw ParseError("CSV matrix file is empty");
    std::vector<cplx> entries;
    for (int r = 0; r < d; ++r) {
        if (int(rows[r].size()) != d)
            throw ParseError("CSV matrix is not square", r + 1, int(rows[r].size()));
        for (double v : rows[r]) entries.emplace_back(v, 0.0);
    }
    return {d, std::move(entries)};
}

inline ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return matrix_from_csv(in);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("matrix JSON parse failure: ") + e.what());
    }
    return matrix_from_json(j);
}

inline json operator_set_to_json(const OperatorSet& set) {
    json ops = json::array();
    for (int i = 0; i < set.size(); ++i) {
        json entries = json::array();
        for (const cplx& v : set[i].matrix.entries()) entries.push_back({v.real(), v.imag()});
        ops.push_back({{"label", set[i].label}, {"hermitian", set[i].hermitian}, {"entries", entries}});
    }
    return {{"dim", set.dim()}, {"label", set.label()}, {"operators", ops}};
}

inline OperatorSet operator_set_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("operators"))
        throw ParseError("operator-set JSON needs 'dim' and 'operators' fields");
    const int dim = j.at("dim").get<int>();
    OperatorSet set(dim, j.value("label", std::string("file")));
    for (const json& op : j.at("operators")) {
        std::vector<cplx> entries;
        for (const json& e : op.at("entries")) entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        set.add(op.value("label", std::string("op")), ComplexMatrix(dim, std::move(entries)),
                op.value("hermitian", true));
    }
    return set;
}

inline OperatorSet load_operator_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open operator-set file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("operator-set JSON parse failure: ") + e.what());
    }
    return operator_set_from_json(j);
}

/// 12 significant digits, the CLI-wide numeric format.
inline std::string format_number(double v) {
    std::ostringstream ss;
    ss << std::setprecision(12) << v;
    return ss.str();
}

inline std::string format_scientific(double v) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(3) << v;
    return ss.str();
}

} // namespace qbound

#include "wpolar/matrix_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace wpolar::io {

namespace {

double finite_or_throw(double v, const std::string& where) {
    if (!std::isfinite(v)) throw FormatError("non-finite number in " + where);
    return v;
}

MatrixFile parse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("matrix file must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw FormatError("missing integer field 'dim'");
    if (!doc.contains("entries") || !doc["entries"].is_array()) throw FormatError("missing array field 'entries'");

    const auto dim = doc["dim"].get<long long>();
    if (dim < 1) throw FormatError("'dim' must be positive");
    const auto& entries = doc["entries"];
    if (entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw FormatError("'entries' has " + std::to_string(entries.size()) + " elements, expected dim^2 = " +
                          std::to_string(dim * dim));
    }

    MatrixFile out;
    out.matrix.resize(dim, dim);
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        const auto& e = entries[idx];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw FormatError("entry " + std::to_string(idx) + " is not a [re, im] pair");
        }
        const std::string where = "entry " + std::to_string(idx);
        out.matrix(static_cast<Eigen::Index>(idx) / dim, static_cast<Eigen::Index>(idx) % dim) =
            Complex(finite_or_throw(e[0].get<double>(), where), finite_or_throw(e[1].get<double>(), where));
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw FormatError("'name' must be a string");
        out.name = doc["name"].get<std::string>();
    }
    return out;
}

MatrixFile parse_text(const std::string& text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::vector<Complex> row;
        std::string token;
        while (tokens >> token) row.push_back(parse_complex_token(token));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("empty matrix input");
    const auto n = rows.size();
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw FormatError("matrix is not square: " + std::to_string(n) + " rows, a row of " +
                              std::to_string(row.size()) + " entries");
        }
    }
    MatrixFile out;
    out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return out;
}

}  // namespace

Complex parse_complex_token(const std::string& token) {
    auto bad = [&]() { return FormatError("cannot parse complex number '" + token + "'"); };
    auto is_unit = [](char c) { return c == 'i' || c == 'j'; };
    if (token.empty()) throw bad();

    const char* begin = token.c_str();
    char* end = nullptr;
    const double first = std::strtod(begin, &end);
    if (end == begin) {
        // bare imaginary unit
        if (token == "i" || token == "+i" || token == "j" || token == "+j") return {0.0, 1.0};
        if (token == "-i" || token == "-j") return {0.0, -1.0};
        throw bad();
    }
    if (!std::isfinite(first)) throw bad();
    if (*end == '\0') return {first, 0.0};
    if (is_unit(*end) && end[1] == '\0') return {0.0, first};
    if (*end != '+' && *end != '-') throw bad();

    const std::string rest(end);
    if (rest == "+i" || rest == "+j") return {first, 1.0};
    if (rest == "-i" || rest == "-j") return {first, -1.0};
    char* end2 = nullptr;
    const double second = std::strtod(end, &end2);
    if (end2 == end || !std::isfinite(second) || !is_unit(*end2) || end2[1] != '\0') throw bad();
    return {first, second};
}

MatrixFile parse_matrix(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_text(text);
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

nlohmann::json to_json(const Matrix& m, const std::optional<std::string>& name) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
    nlohmann::json doc{{"dim", m.rows()}, {"entries", std::move(entries)}};
    if (name) doc["name"] = *name;
    return doc;
}

void write_matrix_file(const std::string& path, const Matrix& m, const std::optional<std::string>& name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << to_json(m, name).dump(2) << '\n';
}

std::string format_matrix(const Matrix& m, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    // values that would print as zero are printed without a sign
    const double half_ulp = 0.5 * std::pow(10.0, -precision);
    auto snap = [half_ulp](double v) { return std::abs(v) < half_ulp ? 0.0 : v; };
    const bool real = m.imag().cwiseAbs().maxCoeff() < half_ulp;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = snap(m(i, j).real());
            const double im = snap(m(i, j).imag());
            os << (j ? ", " : "") << std::setw(precision + 4) << re;
            if (!real) os << (im < 0 ? " - " : " + ") << std::setw(precision + 2) << std::abs(im) << "i";
        }
        os << "]\n";
    }
    return os.str();
}

}  // namespace wpolar::io

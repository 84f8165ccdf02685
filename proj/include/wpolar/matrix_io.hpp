#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wpolar/core_linalg.hpp"

namespace wpolar::io {

/// Malformed or unreadable matrix input (distinct from numerical precondition failures).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MatrixFile {
    Matrix matrix;
    std::optional<std::string> name;
};

/// Accepts the JSON object form {"dim": n, "entries": [[re, im], ...], "name": "..."}
/// (row-major) or, as a fallback, whitespace separated rows of tokens like 1, -2.5, 1+2i, -i.
MatrixFile parse_matrix(const std::string& text);
MatrixFile read_matrix_file(const std::string& path);

nlohmann::json to_json(const Matrix& m, const std::optional<std::string>& name = std::nullopt);
void write_matrix_file(const std::string& path, const Matrix& m,
                       const std::optional<std::string>& name = std::nullopt);

/// Fixed-width human readable rendering used by the CLI.
std::string format_matrix(const Matrix& m, int precision = 6);

/// Parses one complex token of the plain-text format.
Complex parse_complex_token(const std::string& token);

}  // namespace wpolar::io

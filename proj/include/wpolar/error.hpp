#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wpolar {

enum class ErrorKind {
    NotHermitian,
    NotPositiveDefinite,
    NotUnitary,
    NotReflection,
    Singular,
    RankDeficient,
    DomainError,
    DimensionMismatch,
    NumericalFailure,
    BadParams,
    EnumerationOverflow,
    IllConditionedEigenbasis,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failed precondition or numerical breakdown surfaces as this type.
/// `what()` reads "Kind(subject): detail" so the CLI can print it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string subject, const std::string& detail = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& subject() const noexcept { return subject_; }

private:
    ErrorKind kind_;
    std::string subject_;
};

}  // namespace wpolar

#include "wpolar/error.hpp"

namespace wpolar {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotReflection: return "NotReflection";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::EnumerationOverflow: return "EnumerationOverflow";
        case ErrorKind::IllConditionedEigenbasis: return "IllConditionedEigenbasis";
    }
    return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& subject, const std::string& detail) {
    std::string msg(to_string(kind));
    msg += "(" + subject + ")";
    if (!detail.empty()) msg += ": " + detail;
    return msg;
}

}  // namespace

Error::Error(ErrorKind kind, std::string subject, const std::string& detail)
    : std::runtime_error(format_message(kind, subject, detail)),
      kind_(kind),
      subject_(std::move(subject)) {}

}  // namespace wpolar

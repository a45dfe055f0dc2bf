#ifndef CUBICPART_ERROR_HPP
#define CUBICPART_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cubicpart {

enum class ErrorKind {
    ring_mismatch,
    non_unit_leading,
    out_of_window,
    invalid_argument,
    non_integral_exponent,
    nonzero_residual,
    insufficient_precision,
    oracle_disagreement,
    support_violation,
    insufficient_matrix_rows,
    parse_error,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::ring_mismatch: return "RingMismatch";
    case ErrorKind::non_unit_leading: return "NonUnitLeading";
    case ErrorKind::out_of_window: return "OutOfWindow";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::non_integral_exponent: return "NonIntegralExponent";
    case ErrorKind::nonzero_residual: return "NonzeroResidual";
    case ErrorKind::insufficient_precision: return "InsufficientPrecision";
    case ErrorKind::oracle_disagreement: return "OracleDisagreement";
    case ErrorKind::support_violation: return "SupportViolation";
    case ErrorKind::insufficient_matrix_rows: return "InsufficientMatrixRows";
    case ErrorKind::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cubicpart

#endif // CUBICPART_ERROR_HPP

#ifndef CLM_ERROR_HPP
#define CLM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace clm {

enum class ErrorKind {
    EmptyInput,
    InvalidArgument,
    TooFewClasses,
    ClassTooSmall,
    DegenerateDispersion,
    DegenerateCentroids,
    DegenerateRange,
    DegenerateTargets,
    DegenerateRanks,
    CalibrationFailed,
    SchemaError,
    ParseError,
    TooFewRows,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of the measure arithmetic itself (as opposed to bad
/// input data or usage); the CLI maps these to exit code 3.
bool is_degenerate(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace clm

#endif  // CLM_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace densecode {

/// Distinguishes caller mistakes from numerical breakdowns so front ends can
/// map them to different exit codes.
enum class ErrorKind {
    InvalidArgument,
    Numerical,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error invalid_argument(const std::string& what) {
    return Error(ErrorKind::InvalidArgument, what);
}

inline Error numerical_failure(const std::string& what) {
    return Error(ErrorKind::Numerical, what);
}

}  // namespace densecode

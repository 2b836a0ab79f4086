#pragma once

#include <stdexcept>
#include <string>

namespace padic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value. Maps to exit code 1 in the CLI.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The requested value is outside the region where it is defined or where a
/// certified bound exists (a pole, a divergent half-plane, t <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A symbol value escaped the band c0 p^{j beta} <= A(p^j) <= c1 p^{j beta}.
class CertificateViolation : public Error {
public:
    CertificateViolation(const std::string &what, int shell)
            : Error(what), shell_(shell) {}
    int shell() const noexcept { return shell_; }

private:
    int shell_;
};

/// An exact digit computation needs more digits than the configured cap.
class WindowOverflow : public Error {
public:
    using Error::Error;
};

/// A dense lattice construction would exceed the configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace padic

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace unirat {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleOnAxis : public Error {
public:
    using Error::Error;
};

/// Adjacent phase samples differ by more than pi/2; the grid is too coarse to unwrap.
class BranchJump : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class PoleOnInterval : public Error {
public:
    using Error::Error;
};

class FrequencyOutOfRange : public Error {
public:
    using Error::Error;
};

class FrequencyTooSmall : public Error {
public:
    using Error::Error;
};

class CriterionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidInterlacing : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

/// Approximation target e^{i omega x} on [-1, 1] together with the degree n
/// of the rational approximants (numerator and denominator degree <= n).
class Target {
public:
    Target(double omega, int degree);

    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] int degree() const noexcept { return degree_; }

    [[nodiscard]] cplx operator()(double x) const { return std::polar(1.0, omega_ * x); }

    /// (n+1) pi: at and above this frequency every unitary function has error 2.
    [[nodiscard]] double degenerate_frequency() const noexcept { return (degree_ + 1) * kPi; }
    [[nodiscard]] bool is_degenerate() const noexcept { return omega_ >= degenerate_frequency(); }

private:
    double omega_;
    int degree_;
};

}  // namespace unirat

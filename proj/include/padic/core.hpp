#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Default number of digits an exact computation may use per coordinate.
inline constexpr int default_window_cap = 64;

bool is_prime(std::int64_t p);

/// The prime p and the dimension n shared by every computation.
class GlobalParams {
public:
    GlobalParams(int p, int n);

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    double log_p() const noexcept { return log_p_; }

    /// p^e as a double (e may be negative).
    double pow_p(double e) const;
    /// p^{n e} as an exact rational.
    Rational pow_pn(int e) const;

    bool operator==(const GlobalParams &) const = default;

private:
    int p_;
    int n_;
    double log_p_;
};

/// p-adic order: an integer or +infinity (the order of zero).
class Order {
public:
    static Order finite(int v) { return Order(v, false); }
    static Order infinity() { return Order(0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }
    /// Throws DomainError for +infinity.
    int value() const;

    std::strong_ordering operator<=>(const Order &other) const;
    bool operator==(const Order &other) const = default;

    std::string to_string() const;

private:
    Order(int v, bool inf) : value_(v), infinite_(inf) {}
    int value_;
    bool infinite_;
};

/// An exact element of Q/Z with p-power denominator, stored as num/den with
/// 0 <= num < den and gcd(num, den) = 1.
class UnitPhase {
public:
    UnitPhase() = default;
    UnitPhase(BigInt num, BigInt den);

    const BigInt &num() const noexcept { return num_; }
    const BigInt &den() const noexcept { return den_; }
    bool is_zero() const noexcept { return den_ == 1; }

    UnitPhase operator+(const UnitPhase &other) const;
    UnitPhase operator-() const;
    bool operator==(const UnitPhase &other) const = default;

    /// exp(2 pi i num/den). Multiples of a quarter turn are returned exactly.
    std::complex<double> to_complex() const;

private:
    BigInt num_ = 0;
    BigInt den_ = 1;
};

/// A point of Q_p^n given by a finite window of base-p digits: coordinate i is
/// sum_{j=low}^{top-1} digit(i, j) p^j. Digits outside the window are zero.
///
/// Sums and products are exact and widen the window as needed (up to the
/// cap). A difference may be a negative rational whose p-adic expansion is
/// infinite upwards; it is returned truncated at the top of the union window,
/// which preserves its order, norm and fractional part.
class PointAddress {
public:
    PointAddress(int p, int low, int top, std::vector<std::vector<unsigned>> rows);

    /// x_i = numerators[i] * p^exponent, numerators non-negative.
    static PointAddress from_integers(int p, std::span<const std::int64_t> numerators,
                                      int exponent = 0);
    static PointAddress scalar(int p, std::int64_t numerator, int exponent = 0);
    static PointAddress zero(int p, int n);

    int p() const noexcept { return p_; }
    int dim() const noexcept { return static_cast<int>(rows_.size()); }
    int low() const noexcept { return low_; }
    int top() const noexcept { return top_; }
    int width() const noexcept { return top_ - low_; }

    unsigned digit(int coord, int exponent) const;
    PointAddress coordinate(int coord) const;

    Order coordinate_order(int coord) const;
    Order order() const;
    /// p^{-ord}; zero for the zero address.
    double norm() const;

    PointAddress operator+(const PointAddress &other) const;
    PointAddress operator-(const PointAddress &other) const;
    bool operator==(const PointAddress &other) const;

private:
    PointAddress add_sub(const PointAddress &other, bool subtract, int cap) const;

    int p_;
    int low_;
    int top_;
    std::vector<std::vector<unsigned>> rows_;
};

Order ord(const PointAddress &x);

/// {y}_p: the digits of y below exponent 0, as an exact phase.
UnitPhase fractional_part(const PointAddress &y);

/// chi_p(y) = exp(2 pi i {y}_p) for a scalar address.
std::complex<double> character(const PointAddress &y);

/// sum_i x_i y_i, exact. Throws WindowOverflow when more than `cap` digits are needed.
PointAddress dot(const PointAddress &x, const PointAddress &y, int cap = default_window_cap);

/// 1 iff ||x - a||_p <= p^r.
int ball_indicator(int r, const PointAddress &x, const PointAddress &a);

/// Haar measure of the sphere {||x||_p = p^j} in Q_p^n: p^{nj}(1 - p^{-n}).
Rational shell_volume(const GlobalParams &params, int j);

/// Exact value of the integral of chi_p(-x.xi) over the sphere ||xi||_p = p^j,
/// where m = ord(x).
Rational shell_character_integral(const GlobalParams &params, int j, Order m);

double to_double(const Rational &q);

} // namespace padic

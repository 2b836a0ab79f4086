#include "padic/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "padic/errors.hpp"

namespace padic {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

GlobalParams::GlobalParams(int p, int n) : p_(p), n_(n), log_p_(std::log(static_cast<double>(p))) {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not a prime");
    if (n < 1) throw InvalidArgument("n must be >= 1, got " + std::to_string(n));
}

double GlobalParams::pow_p(double e) const { return std::pow(static_cast<double>(p_), e); }

Rational GlobalParams::pow_pn(int e) const {
    BigInt base = boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(n_ * std::abs(e)));
    return e >= 0 ? Rational(base) : Rational(BigInt(1), base);
}

int Order::value() const {
    if (infinite_) throw DomainError("order is +infinity");
    return value_;
}

std::strong_ordering Order::operator<=>(const Order &other) const {
    if (infinite_ || other.infinite_) {
        if (infinite_ && other.infinite_) return std::strong_ordering::equal;
        return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return value_ <=> other.value_;
}

std::string Order::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

UnitPhase::UnitPhase(BigInt num, BigInt den) {
    if (den <= 0) throw InvalidArgument("phase denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    BigInt g = boost::multiprecision::gcd(num, den);
    if (num == 0) {
        num_ = 0;
        den_ = 1;
        return;
    }
    num_ = num / g;
    den_ = den / g;
}

UnitPhase UnitPhase::operator+(const UnitPhase &other) const {
    return UnitPhase(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

UnitPhase UnitPhase::operator-() const { return UnitPhase(den_ - num_, den_); }

std::complex<double> UnitPhase::to_complex() const {
    if ((4 * num_) % den_ == 0) {
        switch (static_cast<int>(4 * num_ / den_)) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    const double turn = Rational(num_, den_).convert_to<double>();
    return std::polar(1.0, 2.0 * std::numbers::pi * turn);
}

PointAddress::PointAddress(int p, int low, int top, std::vector<std::vector<unsigned>> rows)
        : p_(p), low_(low), top_(top), rows_(std::move(rows)) {
    if (p < 2) throw InvalidArgument("address prime must be >= 2");
    if (top < low) throw InvalidArgument("address window top below low");
    if (rows_.empty()) throw InvalidArgument("address needs at least one coordinate");
    for (const auto &row : rows_) {
        if (static_cast<int>(row.size()) != top - low)
            throw InvalidArgument("address row width does not match its window");
        for (unsigned d : row) {
            if (d >= static_cast<unsigned>(p)) throw InvalidArgument("address digit out of range");
        }
    }
}

PointAddress PointAddress::from_integers(int p, std::span<const std::int64_t> numerators, int exponent) {
    std::vector<std::vector<unsigned>> rows;
    std::size_t width = 0;
    for (std::int64_t v : numerators) {
        if (v < 0) throw InvalidArgument("address numerators must be non-negative");
        std::vector<unsigned> row;
        for (; v > 0; v /= p) row.push_back(static_cast<unsigned>(v % p));
        width = std::max(width, row.size());
        rows.push_back(std::move(row));
    }
    for (auto &row : rows) row.resize(width, 0);
    return PointAddress(p, exponent, exponent + static_cast<int>(width), std::move(rows));
}

PointAddress PointAddress::scalar(int p, std::int64_t numerator, int exponent) {
    const std::int64_t v[1] = {numerator};
    return from_integers(p, v, exponent);
}

PointAddress PointAddress::zero(int p, int n) {
    return PointAddress(p, 0, 0, std::vector<std::vector<unsigned>>(static_cast<std::size_t>(n)));
}

unsigned PointAddress::digit(int coord, int exponent) const {
    if (exponent < low_ || exponent >= top_) return 0;
    return rows_.at(static_cast<std::size_t>(coord))[static_cast<std::size_t>(exponent - low_)];
}

PointAddress PointAddress::coordinate(int coord) const {
    return PointAddress(p_, low_, top_, {rows_.at(static_cast<std::size_t>(coord))});
}

Order PointAddress::coordinate_order(int coord) const {
    const auto &row = rows_.at(static_cast<std::size_t>(coord));
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0) return Order::finite(low_ + static_cast<int>(j));
    }
    return Order::infinity();
}

Order PointAddress::order() const {
    Order best = Order::infinity();
    for (int i = 0; i < dim(); ++i) best = std::min(best, coordinate_order(i));
    return best;
}

double PointAddress::norm() const {
    const Order o = order();
    if (o.is_infinite()) return 0.0;
    return std::pow(static_cast<double>(p_), -o.value());
}

PointAddress PointAddress::add_sub(const PointAddress &other, bool subtract, int cap) const {
    if (other.p_ != p_ || other.dim() != dim())
        throw InvalidArgument("addresses differ in prime or dimension");
    const int lo = std::min(low_, other.low_);
    int hi = std::max(top_, other.top_);
    std::vector<std::vector<unsigned>> rows(rows_.size());
    bool carry_out = false;
    const int p = p_;
    for (int i = 0; i < dim(); ++i) {
        auto &row = rows[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(hi - lo));
        int carry = 0;
        for (int j = lo; j < hi; ++j) {
            int d = static_cast<int>(digit(i, j)) +
                    (subtract ? -1 : 1) * static_cast<int>(other.digit(i, j)) + carry;
            carry = 0;
            if (d < 0) {
                d += p;
                carry = -1;
            } else if (d >= p) {
                d -= p;
                carry = 1;
            }
            row[static_cast<std::size_t>(j - lo)] = static_cast<unsigned>(d);
        }
        // a final borrow is the truncated infinite expansion of a negative value
        if (carry > 0) {
            row.push_back(static_cast<unsigned>(carry));
            carry_out = true;
        }
    }
    if (carry_out) {
        ++hi;
        for (auto &row : rows) row.resize(static_cast<std::size_t>(hi - lo), 0);
    }
    if (hi - lo > cap) throw WindowOverflow("sum needs " + std::to_string(hi - lo) + " digits, cap is " +
                                            std::to_string(cap));
    return PointAddress(p, lo, hi, std::move(rows));
}

PointAddress PointAddress::operator+(const PointAddress &other) const {
    return add_sub(other, false, std::max({default_window_cap, width(), other.width()}) + 1);
}

PointAddress PointAddress::operator-(const PointAddress &other) const {
    return add_sub(other, true, std::max({default_window_cap, width(), other.width()}) + 1);
}

bool PointAddress::operator==(const PointAddress &other) const {
    if (other.p_ != p_ || other.dim() != dim()) return false;
    const int lo = std::min(low_, other.low_);
    const int hi = std::max(top_, other.top_);
    for (int i = 0; i < dim(); ++i) {
        for (int j = lo; j < hi; ++j) {
            if (digit(i, j) != other.digit(i, j)) return false;
        }
    }
    return true;
}

Order ord(const PointAddress &x) { return x.order(); }

UnitPhase fractional_part(const PointAddress &y) {
    if (y.dim() != 1) throw InvalidArgument("fractional_part expects a scalar address");
    if (y.low() >= 0) return {};
    BigInt value = 0;
    BigInt weight = 1;
    for (int j = y.low(); j < 0; ++j) {
        value += weight * y.digit(0, j);
        weight *= y.p();
    }
    return UnitPhase(value, weight);
}

std::complex<double> character(const PointAddress &y) { return fractional_part(y).to_complex(); }

namespace {

// Integer N with value = N * p^low.
BigInt coordinate_integer(const PointAddress &x, int coord) {
    BigInt v = 0;
    for (int j = x.top() - 1; j >= x.low(); --j) v = v * x.p() + x.digit(coord, j);
    return v;
}

} // namespace

PointAddress dot(const PointAddress &x, const PointAddress &y, int cap) {
    if (x.p() != y.p() || x.dim() != y.dim()) throw InvalidArgument("dot: addresses differ in prime or dimension");
    const int p = x.p();
    const int low = x.low() + y.low();
    BigInt total = 0;
    for (int i = 0; i < x.dim(); ++i) total += coordinate_integer(x, i) * coordinate_integer(y, i);

    std::vector<unsigned> digits;
    for (BigInt v = total; v > 0; v /= p) digits.push_back(static_cast<unsigned>(v % p));
    std::size_t first = 0;
    while (first < digits.size() && digits[first] == 0) ++first;
    if (static_cast<int>(digits.size() - first) > cap) {
        throw WindowOverflow("dot product needs " + std::to_string(digits.size() - first) +
                             " digits, cap is " + std::to_string(cap));
    }
    std::vector<unsigned> row(digits.begin() + static_cast<std::ptrdiff_t>(first), digits.end());
    const int new_low = low + static_cast<int>(first);
    const int new_top = new_low + static_cast<int>(row.size());
    return PointAddress(p, new_low, new_top, {std::move(row)});
}

int ball_indicator(int r, const PointAddress &x, const PointAddress &a) {
    const Order o = ord(x - a);
    return o >= Order::finite(-r) ? 1 : 0;
}

Rational shell_volume(const GlobalParams &params, int j) {
    return params.pow_pn(j) * (Rational(1) - params.pow_pn(-1));
}

Rational shell_character_integral(const GlobalParams &params, int j, Order m) {
    if (m.is_infinite() || j <= m.value()) return shell_volume(params, j);
    if (j == m.value() + 1) return -params.pow_pn(j - 1);
    return Rational(0);
}

double to_double(const Rational &q) { return q.convert_to<double>(); }

} // namespace padic

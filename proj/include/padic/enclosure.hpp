#pragma once

#include <cmath>
#include <complex>

namespace padic {

/// A computed value together with a certified absolute error bound: the true
/// value lies within `bound` of `value`. Rounding error is not tracked.
template <typename T>
struct BasicEnclosure {
    T value{};
    double bound = 0.0;

    bool contains(const T &x, double slack = 0.0) const {
        return std::abs(x - value) <= bound + slack;
    }
};

using Enclosure = BasicEnclosure<double>;
using ComplexEnclosure = BasicEnclosure<std::complex<double>>;

/// True when two enclosures overlap, i.e. they can describe the same number.
template <typename T>
bool overlap(const BasicEnclosure<T> &a, const BasicEnclosure<T> &b, double slack = 0.0) {
    return std::abs(a.value - b.value) <= a.bound + b.bound + slack;
}

} // namespace padic

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "padic/core.hpp"
#include "padic/errors.hpp"

using namespace padic;

namespace {

PointAddress random_address(std::mt19937 &rng, int p, int n) {
    std::uniform_int_distribution<int> low_dist(-4, 3);
    std::uniform_int_distribution<int> width_dist(0, 8);
    std::uniform_int_distribution<int> zero_dist(0, 4);
    std::uniform_int_distribution<unsigned> digit(0, static_cast<unsigned>(p - 1));
    const int low = low_dist(rng);
    const int width = width_dist(rng);
    std::vector<std::vector<unsigned>> rows(static_cast<std::size_t>(n));
    for (auto &row : rows) {
        const bool zero_row = zero_dist(rng) == 0;
        for (int j = 0; j < width; ++j) row.push_back(zero_row ? 0u : digit(rng));
    }
    return PointAddress(p, low, low + width, rows);
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("params reject non-primes and bad dimensions") {
    CHECK_NOTHROW(GlobalParams(2, 1));
    CHECK_NOTHROW(GlobalParams(7, 3));
    CHECK_THROWS_AS(GlobalParams(4, 1), InvalidArgument);
    CHECK_THROWS_AS(GlobalParams(1, 1), InvalidArgument);
    CHECK_THROWS_AS(GlobalParams(3, 0), InvalidArgument);
}

TEST_CASE("order and norm") {
    const std::int64_t v[] = {4, 6};
    const PointAddress x = PointAddress::from_integers(2, v);
    CHECK(ord(x) == Order::finite(1));
    CHECK(x.norm() == 0.5);

    const PointAddress zero = PointAddress::zero(2, 2);
    CHECK(ord(zero).is_infinite());
    CHECK(zero.norm() == 0.0);
    CHECK_THROWS_AS(ord(zero).value(), DomainError);

    const PointAddress ninth = PointAddress::scalar(3, 1, -2);
    CHECK(ord(ninth) == Order::finite(-2));
    CHECK(ninth.norm() == 9.0);

    CHECK(Order::finite(100) < Order::infinity());
    CHECK(Order::infinity() == Order::infinity());
}

TEST_CASE("addresses with equal digit content compare equal across windows") {
    const PointAddress a(2, 0, 2, {{1, 1}});
    const PointAddress b(2, -2, 4, {{0, 0, 1, 1, 0, 0}});
    CHECK(a == b);
    CHECK_FALSE(a == PointAddress::scalar(2, 2));
    CHECK_THROWS_AS(PointAddress(2, 0, 1, {{2}}), InvalidArgument);
}

TEST_CASE("fractional part") {
    const UnitPhase q = fractional_part(PointAddress::scalar(2, 3, -2));
    CHECK(q.num() == 3);
    CHECK(q.den() == 4);
    CHECK(fractional_part(PointAddress::scalar(5, 7)).is_zero());
    // 3/4 + 2 = 11/4
    const UnitPhase r = fractional_part(PointAddress::scalar(2, 11, -2));
    CHECK(r == q);
    // 2/4 reduces to 1/2
    const UnitPhase half = fractional_part(PointAddress::scalar(2, 2, -2));
    CHECK(half.num() == 1);
    CHECK(half.den() == 2);
    CHECK_THROWS_AS(fractional_part(PointAddress::zero(2, 2)), InvalidArgument);
}

TEST_CASE("additive character") {
    const auto minus_one = character(PointAddress::scalar(2, 1, -1));
    CHECK(minus_one.real() == -1.0);
    CHECK(minus_one.imag() == 0.0);
    const auto minus_i = character(PointAddress::scalar(2, 3, -2));
    CHECK(minus_i.real() == 0.0);
    CHECK(minus_i.imag() == -1.0);
    CHECK(character(PointAddress::scalar(3, 12)) == std::complex<double>(1.0, 0.0));
    const auto third = character(PointAddress::scalar(3, 1, -1));
    CHECK(third.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(third.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
}

TEST_CASE("dot product") {
    const std::int64_t e1[] = {1, 0};
    const std::int64_t e2[] = {0, 1};
    CHECK(ord(dot(PointAddress::from_integers(3, e1), PointAddress::from_integers(3, e2))).is_infinite());
    // 1/2 * 3 = 3/2
    const PointAddress prod = dot(PointAddress::scalar(2, 1, -1), PointAddress::scalar(2, 3));
    CHECK(prod == PointAddress::scalar(2, 3, -1));
    CHECK(ord(dot(PointAddress::zero(5, 1), PointAddress::scalar(5, 17))).is_infinite());

    // (2^40 - 1)^2 needs 80 digits
    const PointAddress big = PointAddress::scalar(2, (std::int64_t{1} << 40) - 1);
    CHECK_THROWS_AS(dot(big, big), WindowOverflow);
    CHECK_NOTHROW(dot(big, big, 80));
}

TEST_CASE("ball indicator") {
    const PointAddress zero = PointAddress::zero(2, 1);
    CHECK(ball_indicator(0, PointAddress::scalar(2, 5), zero) == 1);
    CHECK(ball_indicator(0, PointAddress::scalar(2, 1, -1), zero) == 0);
    CHECK(ball_indicator(1, PointAddress::scalar(2, 1, -1), zero) == 1);
    // 3 - 7 = -4 has order 2
    CHECK(ball_indicator(-2, PointAddress::scalar(2, 3), PointAddress::scalar(2, 7)) == 1);
    CHECK(ball_indicator(-3, PointAddress::scalar(2, 3), PointAddress::scalar(2, 7)) == 0);
}

TEST_CASE("shell volumes") {
    CHECK(shell_volume(GlobalParams(2, 1), 0) == Rational(1, 2));
    CHECK(shell_volume(GlobalParams(2, 1), 3) == Rational(4));
    CHECK(shell_volume(GlobalParams(3, 2), 1) == Rational(8));
    CHECK(shell_volume(GlobalParams(3, 2), -1) == Rational(8, 81));
}

TEST_CASE("shell partition telescopes exactly") {
    for (int p : {2, 3, 5}) {
        for (int n : {1, 2, 3}) {
            const GlobalParams params(p, n);
            for (int r0 = -4; r0 <= 2; ++r0) {
                for (int r1 = r0; r1 <= 5; ++r1) {
                    Rational sum = 0;
                    for (int j = r0; j <= r1; ++j) sum += shell_volume(params, j);
                    CHECK(sum == params.pow_pn(r1) - params.pow_pn(r0 - 1));
                }
            }
        }
    }
}

TEST_CASE("shell character integral cases") {
    const GlobalParams params(2, 1);
    CHECK(shell_character_integral(params, 1, Order::finite(0)) == Rational(-1));
    CHECK(shell_character_integral(params, 1, Order::finite(3)) == Rational(1));
    CHECK(shell_character_integral(params, 5, Order::finite(3)) == Rational(0));
    CHECK(shell_character_integral(params, 4, Order::finite(2)) == Rational(0));
    CHECK(shell_character_integral(params, 40, Order::infinity()) == shell_volume(params, 40));
}

TEST_CASE("shell character integral matches brute-force quotient sums") {
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            const GlobalParams params(p, n);
            const int K = 3;
            const long long modulus = oracle::ipow(p, K);
            const long long count = oracle::ipow(modulus, n);
            for (long long idx = 0; idx < count; ++idx) {
                std::vector<long long> x;
                std::vector<std::int64_t> digits;
                for (long long rest = idx, i = 0; i < n; ++i, rest /= modulus) {
                    x.push_back(rest % modulus);
                    digits.push_back(rest % modulus);
                }
                const Order m = ord(PointAddress::from_integers(p, digits));
                for (int j = 1; j <= K; ++j) {
                    // x is only known mod p^K; shells j <= K see x mod p^j
                    const auto brute = oracle::shell_character_sum(p, n, x, j);
                    const Order eff = m.is_finite() && m.value() < K ? m : Order::infinity();
                    CHECK(brute.real() == doctest::Approx(to_double(shell_character_integral(params, j, eff))));
                    CHECK(std::abs(brute.imag()) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("property: ultrametric inequality") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int p = trial % 2 == 0 ? 2 : 3;
        const int n = 1 + trial % 3;
        const PointAddress x = random_address(rng, p, n);
        const PointAddress y = random_address(rng, p, n);
        const double nx = x.norm();
        const double ny = y.norm();
        const double ns = (x + y).norm();
        CHECK(ns <= std::max(nx, ny));
        if (nx != ny) CHECK(ns == std::max(nx, ny));
        // the difference keeps the same norm relations
        if (nx != ny) CHECK((x - y).norm() == std::max(nx, ny));
    }
}

TEST_CASE("property: character additivity") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const int p = trial % 2 == 0 ? 2 : 5;
        const PointAddress a = random_address(rng, p, 1);
        const PointAddress b = random_address(rng, p, 1);
        CHECK(std::abs(character(a + b) - character(a) * character(b)) <= 1e-14);
        CHECK(fractional_part(a + b) == fractional_part(a) + fractional_part(b));
    }
}

} // TEST_SUITE

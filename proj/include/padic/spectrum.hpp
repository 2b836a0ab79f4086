#pragma once

#include <complex>
#include <optional>
#include <ranges>
#include <string>
#include <vector>

#include "padic/enclosure.hpp"
#include "padic/symbols.hpp"

namespace padic {

/// Exact eigenvalue counts. p^{nm} for the tested ranges needs more than 64 bits.
using Count = unsigned __int128;

std::string to_string(Count value);

/// p^{nm}(1 - p^{-n}) = p^{nm} - p^{n(m-1)} exactly. Throws CapExceeded on overflow.
Count exact_multiplicity(const GlobalParams &params, int m);

/// Eigenvalue data of one shell: lambda = A(p^m) with multiplicity p^{nm}(1 - p^{-n}).
struct SpectralLine {
    int m = 0;
    double lambda = 0.0;
    /// Exact below 2^53, may overflow to +inf for huge shells.
    double multiplicity = 0.0;
    double log_multiplicity = 0.0;
};

SpectralLine spectral_line(const RadialSymbol &symbol, int m);

/// Lines for m = 1, 2, 3, ... in shell order (not sorted by lambda). Unbounded;
/// take as many as needed.
inline auto spectrum_iter(const RadialSymbol &symbol) {
    return std::views::iota(1) | std::views::transform([symbol](int m) { return spectral_line(symbol, m); });
}

/// N(T): eigenvalues <= T counted with multiplicity. Only shells with
/// c0 p^{m beta} <= T are inspected.
Count counting_function(const RadialSymbol &symbol, double T);

/// Least-squares fit of log N(T) against log T over T = lambda_m <= Tmax.
/// Only the bound N(T) = O(T^{n/beta}) is proven; the slope is an estimate.
struct GrowthEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root mean square of the fit residuals.
    double residual = 0.0;
    int shells = 0;
};

GrowthEstimate growth_exponent_estimate(const RadialSymbol &symbol, double Tmax);

struct ZetaSeriesResult {
    ComplexEnclosure value;
    int shells_used = 0;
    /// n / beta, the boundary of the certified half-plane.
    double abscissa = 0.0;
};

/// Default tolerance of certified series.
inline constexpr double default_series_tol = 1e-12;

/// sum_m mult_m A(p^m)^{-s} with certified geometric tail from the
/// certificate's c0. Requires Re(s) > n/beta.
ZetaSeriesResult zeta_series(const RadialSymbol &symbol, std::complex<double> s, double tol = default_series_tol);

/// Same partial sums from explicitly supplied lines, for cross-checks.
std::complex<double> zeta_partial_sum(std::span<const SpectralLine> lines, std::complex<double> s);

/// zeta(s; Taibleson) = (p^n - 1) v / (1 - p^n v) with v = p^{-beta s}. For
/// integer beta, v = u^beta with u = p^{-s} and the fraction is a rational
/// function of u with integer coefficients.
struct ZetaClosedForm {
    int p = 2;
    int n = 1;
    double beta = 1.0;
    /// Coefficients in v, lowest degree first.
    std::vector<long long> numerator;
    std::vector<long long> denominator;

    bool is_pole(std::complex<double> s) const;
    /// Throws DomainError at a pole.
    std::complex<double> evaluate(std::complex<double> s) const;
};

ZetaClosedForm taibleson_zeta_closed(const GlobalParams &params, double beta);

/// Poles n/beta + 2 pi i k / (beta ln p), k integer, of an eventually-power zeta.
struct PoleLattice {
    bool declined = false;
    std::string reason;

    double abscissa = 0.0;
    double spacing = 0.0;
    SymbolKind kind = SymbolKind::taibleson;
    /// A(p^m) = scale p^{m beta} for all m >= power_from.
    int power_from = 1;
    double scale = 1.0;
    double beta = 1.0;
    /// Shells below power_from; they contribute an entire correction term.
    std::vector<SpectralLine> correction;
    GlobalParams params{2, 1};

    bool is_pole(std::complex<double> s) const;
    std::complex<double> correction_term(std::complex<double> s) const;
    /// The meromorphic continuation. Throws DomainError at a pole or when declined.
    std::complex<double> continuation(std::complex<double> s) const;
};

PoleLattice pole_lattice(const RadialSymbol &symbol);
PoleLattice pole_lattice(const GlobalParams &params, double beta);

} // namespace padic

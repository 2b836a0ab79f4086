#include "padic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "padic/errors.hpp"
#include "padic/summation.hpp"

namespace padic {

namespace {

constexpr Count count_max = ~Count(0);

Count checked_mul(Count a, Count b) {
    if (b != 0 && a > count_max / b) throw CapExceeded("exact eigenvalue count exceeds 128 bits");
    return a * b;
}

Count checked_add(Count a, Count b) {
    if (a > count_max - b) throw CapExceeded("exact eigenvalue count exceeds 128 bits");
    return a + b;
}

// log sum_{m > last} (1 - p^{-n}) p^{nm} (c0 p^{m beta})^{-sigma}
double log_zeta_tail(const GlobalParams &params, const SymbolCertificate &cert, double sigma, int last) {
    const double exponent = params.n() - cert.beta * sigma;
    const double log_ratio = exponent * params.log_p();
    return std::log1p(-params.pow_p(-params.n())) - sigma * std::log(cert.c0) + (last + 1) * log_ratio -
           std::log1p(-std::exp(log_ratio));
}

constexpr int max_series_shells = 1 << 20;

} // namespace

std::string to_string(Count value) {
    if (value == 0) return "0";
    std::string out;
    for (; value > 0; value /= 10) out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    std::reverse(out.begin(), out.end());
    return out;
}

Count exact_multiplicity(const GlobalParams &params, int m) {
    if (m < 1) throw InvalidArgument("shell index must be >= 1");
    Count pn = 1;
    for (int i = 0; i < params.n(); ++i) pn = checked_mul(pn, static_cast<Count>(params.p()));
    Count result = pn - 1;
    for (int i = 1; i < m; ++i) result = checked_mul(result, pn);
    return result;
}

SpectralLine spectral_line(const RadialSymbol &symbol, int m) {
    if (m < 1) throw InvalidArgument("shell index must be >= 1");
    const GlobalParams &params = symbol.params();
    const double log_mult = params.n() * m * params.log_p() + std::log1p(-params.pow_p(-params.n()));
    double mult = std::exp(log_mult);
    if (params.n() * static_cast<double>(m) * params.log_p() < 52.0 * std::numbers::ln2) {
        // exact integer arithmetic while it fits a double
        mult = static_cast<double>(exact_multiplicity(params, m));
    }
    return {m, symbol(m), mult, log_mult};
}

Count counting_function(const RadialSymbol &symbol, double T) {
    if (!(T >= 0.0)) throw InvalidArgument("counting function needs T >= 0");
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    Count total = 0;
    for (int m = 1; cert.lower(params, m) * (1.0 - certificate_slack) <= T; ++m) {
        if (symbol(m) <= T) total = checked_add(total, exact_multiplicity(params, m));
    }
    return total;
}

GrowthEstimate growth_exponent_estimate(const RadialSymbol &symbol, double Tmax) {
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    std::vector<double> xs;
    std::vector<double> ys;
    for (int m = 1; cert.lower(params, m) * (1.0 - certificate_slack) <= Tmax; ++m) {
        const double lambda = symbol(m);
        if (lambda > Tmax) continue;
        const Count count = counting_function(symbol, lambda);
        xs.push_back(std::log(lambda));
        ys.push_back(std::log(static_cast<long double>(count)));
    }
    if (xs.size() < 5) {
        throw InvalidArgument("growth estimate needs at least 5 shells below Tmax, found " +
                              std::to_string(xs.size()));
    }
    const auto k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    GrowthEstimate est;
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (est.intercept + est.slope * xs[i]);
        ss += r * r;
    }
    est.residual = std::sqrt(ss / k);
    est.shells = static_cast<int>(xs.size());
    return est;
}

std::complex<double> zeta_partial_sum(std::span<const SpectralLine> lines, std::complex<double> s) {
    std::vector<std::complex<double>> terms;
    terms.reserve(lines.size());
    for (const SpectralLine &line : lines) terms.push_back(std::exp(line.log_multiplicity - s * std::log(line.lambda)));
    return pairwise_sum<std::complex<double>>(terms);
}

ZetaSeriesResult zeta_series(const RadialSymbol &symbol, std::complex<double> s, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    const double abscissa = params.n() / cert.beta;
    const double sigma = s.real();
    if (!(sigma > abscissa)) {
        throw DomainError("zeta series converges only for Re(s) > n/beta = " + std::to_string(abscissa));
    }
    const double log_tol = std::log(tol);
    std::vector<std::complex<double>> terms;
    double symbol_error = 0.0;
    int last = 0;
    while (last == 0 || log_zeta_tail(params, cert, sigma, last) >= log_tol) {
        if (last >= max_series_shells) throw DomainError("zeta series tail does not reach the tolerance");
        ++last;
        const SpectralLine line = spectral_line(symbol, last);
        terms.push_back(std::exp(line.log_multiplicity - s * std::log(line.lambda)));
        const double delta = symbol.enclosure(last).bound;
        if (delta > 0.0) {
            symbol_error += std::exp(line.log_multiplicity) * std::abs(s) * delta *
                            std::pow(line.lambda - delta, -sigma - 1.0);
        }
    }
    ZetaSeriesResult result;
    result.value.value = pairwise_sum<std::complex<double>>(terms);
    result.value.bound = std::exp(log_zeta_tail(params, cert, sigma, last)) + symbol_error;
    result.shells_used = last;
    result.abscissa = abscissa;
    return result;
}

namespace {

bool on_pole_lattice(std::complex<double> s, double abscissa, double spacing) {
    if (std::abs(s.real() - abscissa) > 1e-12 * std::max(1.0, abscissa)) return false;
    const double k = s.imag() / spacing;
    return std::abs(k - std::round(k)) <= 1e-9;
}

} // namespace

bool ZetaClosedForm::is_pole(std::complex<double> s) const {
    return on_pole_lattice(s, n / beta, 2.0 * std::numbers::pi / (beta * std::log(static_cast<double>(p))));
}

std::complex<double> ZetaClosedForm::evaluate(std::complex<double> s) const {
    if (is_pole(s)) {
        throw DomainError("zeta closed form has a pole at s = " + std::to_string(s.real()) + " + " +
                          std::to_string(s.imag()) + "i");
    }
    const std::complex<double> v = std::exp(-beta * s * std::log(static_cast<double>(p)));
    auto horner = [&v](const std::vector<long long> &coeffs) {
        std::complex<double> acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + static_cast<double>(*it);
        return acc;
    };
    return horner(numerator) / horner(denominator);
}

ZetaClosedForm taibleson_zeta_closed(const GlobalParams &params, double beta) {
    if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
    long long pn = 1;
    for (int i = 0; i < params.n(); ++i) {
        if (pn > std::numeric_limits<long long>::max() / params.p())
            throw CapExceeded("p^n does not fit a 64-bit coefficient");
        pn *= params.p();
    }
    return {params.p(), params.n(), beta, {0, pn - 1}, {1, -pn}};
}

bool PoleLattice::is_pole(std::complex<double> s) const {
    return !declined && on_pole_lattice(s, abscissa, spacing);
}

std::complex<double> PoleLattice::correction_term(std::complex<double> s) const {
    return zeta_partial_sum(correction, s);
}

std::complex<double> PoleLattice::continuation(std::complex<double> s) const {
    if (declined) throw DomainError("no meromorphic continuation: " + reason);
    if (is_pole(s)) throw DomainError("continuation has a pole at s = " + std::to_string(s.real()));
    const double n = params.n();
    const double lp = params.log_p();
    const std::complex<double> main = std::exp(-s * std::log(scale)) * (1.0 - params.pow_p(-n)) *
                                      std::exp(static_cast<double>(power_from) * (n - beta * s) * lp) /
                                      (1.0 - std::exp((n - beta * s) * lp));
    return correction_term(s) + main;
}

PoleLattice pole_lattice(const GlobalParams &params, double beta) {
    return pole_lattice(taibleson_symbol(params, beta));
}

PoleLattice pole_lattice(const RadialSymbol &symbol) {
    const GlobalParams &params = symbol.params();
    PoleLattice lattice;
    lattice.params = params;
    lattice.kind = symbol.kind();
    lattice.beta = symbol.certificate().beta;
    lattice.abscissa = params.n() / lattice.beta;
    lattice.spacing = 2.0 * std::numbers::pi / (lattice.beta * params.log_p());

    if (symbol.power_scale() > 0.0) {
        lattice.scale = symbol.power_scale();
        lattice.power_from = 1;
        return lattice;
    }
    if (symbol.kind() != SymbolKind::table) {
        lattice.declined = true;
        lattice.reason = to_string(symbol.kind()) + " symbol is not of eventually-power type";
        return lattice;
    }

    std::vector<std::pair<int, double>> shells;
    for (const auto &entry : symbol.table()) {
        if (entry.first >= 1) shells.push_back(entry);
    }
    for (std::size_t i = 0; i < shells.size(); ++i) {
        if (shells[i].first != static_cast<int>(i) + 1) {
            lattice.declined = true;
            lattice.reason = "table does not cover shells 1.." + std::to_string(shells.size()) + " contiguously";
            return lattice;
        }
    }
    auto ratio = [&](std::size_t i) { return shells[i].second / params.pow_p(shells[i].first * lattice.beta); };
    std::size_t first = shells.size();
    if (!shells.empty()) {
        const double c = ratio(shells.size() - 1);
        while (first > 0 && std::abs(ratio(first - 1) - c) <= 1e-12 * c) --first;
        lattice.scale = c;
    }
    // at least three trailing shells of exact power form
    if (shells.size() < 3 || shells.size() - first < 3) {
        lattice.declined = true;
        lattice.reason = "table symbol does not end in an exact power regime c p^{m beta}";
        return lattice;
    }
    lattice.power_from = static_cast<int>(first) + 1;
    for (int m = 1; m < lattice.power_from; ++m) lattice.correction.push_back(spectral_line(symbol, m));
    return lattice;
}

} // namespace padic

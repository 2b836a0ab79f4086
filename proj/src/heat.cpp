#include "padic/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "padic/errors.hpp"
#include "padic/spectrum.hpp"
#include "padic/summation.hpp"

namespace padic {

namespace {

void require_positive_time(double t) {
    if (!(t > 0.0)) throw DomainError("heat quantities need t > 0, got " + std::to_string(t));
}

void require_tol(double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

// log of the majorant term (1 - p^{-n}) p^{nj} e^{-t c0 p^{j beta}}
double log_majorant_term(const GlobalParams &params, const SymbolCertificate &cert, double t, int j) {
    return std::log1p(-params.pow_p(-params.n())) + params.n() * j * params.log_p() - t * cert.lower(params, j);
}

// Certified bound on sum_{j > last} of the majorant terms. The ratio of
// consecutive terms p^n exp(-t c0 p^{j beta}(p^beta - 1)) decreases in j, so
// once it drops below one the tail is dominated by a geometric series.
double upper_tail_bound(const GlobalParams &params, const SymbolCertificate &cert, double t, int last) {
    const double first = log_majorant_term(params, cert, t, last + 1);
    const double log_ratio = log_majorant_term(params, cert, t, last + 2) - first;
    if (log_ratio >= 0.0) return std::numeric_limits<double>::infinity();
    return std::exp(first) / -std::expm1(log_ratio);
}

// Error in e^{-tA} caused by an enclosure radius delta on A.
double exp_perturbation(double t, const Enclosure &a) {
    if (a.bound == 0.0) return 0.0;
    return t * a.bound * std::exp(-t * (a.value - a.bound));
}

constexpr int max_shells = 1 << 16;

// Floating-point error of a sum of terms w e^{-tA}, each evaluated through exp
// of an argument no larger than max_exponent in magnitude.
double rounding_error(const std::vector<double> &terms, double max_exponent) {
    double magnitude = 0.0;
    for (double x : terms) magnitude += std::abs(x);
    const double per_term = max_exponent + static_cast<double>(terms.size()) + 4.0;
    return magnitude * per_term * std::numeric_limits<double>::epsilon();
}

struct SeriesSum {
    double value = 0.0;
    double bound = 0.0;
};

// sum_{j >= 1} weight(j) e^{-t A(p^j)}, weight(j) = (1 - p^{-n}) p^{nj} given in log form.
template <typename LogWeight>
SeriesSum upper_shell_series(const RadialSymbol &symbol, double t, double tol, LogWeight log_weight) {
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    std::vector<double> terms;
    double symbol_error = 0.0;
    double max_exponent = 0.0;
    int last = 0;
    while (last == 0 || upper_tail_bound(params, cert, t, last) >= tol) {
        if (last >= max_shells) throw DomainError("heat series tail does not reach the tolerance");
        ++last;
        const Enclosure a = symbol.enclosure(last);
        const double w = std::exp(log_weight(last));
        terms.push_back(w * std::exp(-t * a.value));
        symbol_error += w * exp_perturbation(t, a);
        max_exponent = std::max(max_exponent, std::abs(log_weight(last)) + t * a.value);
    }
    return {pairwise_sum<double>(terms),
            upper_tail_bound(params, cert, t, last) + symbol_error + rounding_error(terms, max_exponent)};
}

double log_shell_weight(const GlobalParams &params, int j) {
    return std::log1p(-params.pow_p(-params.n())) + params.n() * j * params.log_p();
}

} // namespace

Enclosure heat_kernel(const RadialSymbol &symbol, const KernelQuery &q) {
    require_positive_time(q.t);
    require_tol(q.tol);
    const GlobalParams &params = symbol.params();
    if (q.ordx.is_infinite()) {
        const SeriesSum sum = upper_shell_series(symbol, q.t, q.tol, [&](int j) { return log_shell_weight(params, j); });
        return {sum.value, sum.bound};
    }
    const int m = q.ordx.value();
    if (m < 0) return {0.0, 0.0};

    std::vector<double> terms;
    double error = 0.0;
    double max_exponent = 0.0;
    for (int j = 1; j <= m; ++j) {
        const Enclosure a = symbol.enclosure(j);
        const double w = std::exp(log_shell_weight(params, j));
        terms.push_back(w * std::exp(-q.t * a.value));
        error += w * exp_perturbation(q.t, a);
        max_exponent = std::max(max_exponent, std::abs(log_shell_weight(params, j)) + q.t * a.value);
    }
    const Enclosure a = symbol.enclosure(m + 1);
    const double w = params.pow_p(params.n() * m);
    terms.push_back(-w * std::exp(-q.t * a.value));
    error += w * exp_perturbation(q.t, a);
    max_exponent = std::max(max_exponent, q.t * a.value);
    return {pairwise_sum<double>(terms), error + rounding_error(terms, max_exponent)};
}

Enclosure full_space_kernel(const RadialSymbol &symbol, Order ordx, double t, double tol) {
    require_positive_time(t);
    require_tol(tol);
    const GlobalParams &params = symbol.params();
    const int n = params.n();

    // Shells j <= top contribute vol(S_j) e^{-tA(p^j)}; top = ord(x) or 0 at x = 0.
    const int top = ordx.is_infinite() ? 0 : ordx.value();
    // sum_{j < low} vol(S_j) = p^{n(low - 1)} bounds the discarded lower shells
    int low = top;
    while (params.pow_p(n * (low - 1)) >= tol / 2) --low;

    std::vector<double> terms;
    double error = params.pow_p(n * (low - 1));
    auto value_at = [&](int j) {
        try {
            return symbol.enclosure(j);
        } catch (const InvalidArgument &e) {
            throw InvalidArgument("full-space kernel needs the symbol at shell " + std::to_string(j) + ": " +
                                  e.what());
        }
    };
    double max_exponent = 0.0;
    for (int j = low; j <= top; ++j) {
        const Enclosure a = value_at(j);
        const double w = to_double(shell_volume(params, j));
        terms.push_back(w * std::exp(-t * a.value));
        error += w * exp_perturbation(t, a);
        max_exponent = std::max(max_exponent, t * a.value);
    }
    if (ordx.is_infinite()) {
        const SeriesSum upper =
                upper_shell_series(symbol, t, tol / 2, [&](int j) { return log_shell_weight(params, j); });
        terms.push_back(upper.value);
        error += upper.bound;
    } else {
        const Enclosure a = value_at(top + 1);
        const double w = -to_double(shell_character_integral(params, top + 1, ordx));
        terms.push_back(-w * std::exp(-t * a.value));
        error += w * exp_perturbation(t, a);
        max_exponent = std::max(max_exponent, t * a.value);
    }
    return {pairwise_sum<double>(terms), error + rounding_error(terms, max_exponent)};
}

Enclosure heat_trace(const RadialSymbol &symbol, double t, double tol) {
    require_positive_time(t);
    require_tol(tol);
    const SeriesSum sum =
            upper_shell_series(symbol, t, tol, [&](int m) { return spectral_line(symbol, m).log_multiplicity; });
    return {sum.value, sum.bound};
}

TraceBracket trace_bracket(const RadialSymbol &symbol, std::span<const double> t_grid, double tol) {
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    const RadialSymbol majorant_symbol = scaled_power_symbol(params, cert.beta, cert.c0);
    const double exponent = params.n() / cert.beta;

    TraceBracket report;
    report.scaled_min = std::numeric_limits<double>::infinity();
    report.scaled_max = -std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        BracketRow row;
        row.t = t;
        row.trace = heat_trace(symbol, t, tol);
        row.majorant = heat_trace(majorant_symbol, t, tol);
        row.scaled = std::pow(t, exponent) * row.trace.value;
        row.below_majorant =
                row.trace.value - row.trace.bound <= row.majorant.value + row.majorant.bound;
        report.majorant_holds = report.majorant_holds && row.below_majorant;
        report.scaled_min = std::min(report.scaled_min, row.scaled);
        report.scaled_max = std::max(report.scaled_max, row.scaled);
        report.rows.push_back(row);
    }
    return report;
}

double certified_upper_tail(const RadialSymbol &symbol, double t, int first_shell) {
    require_positive_time(t);
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    std::vector<double> terms;
    double sum = 0.0;
    double max_exponent = 0.0;
    int last = first_shell - 1;
    for (;;) {
        const double tail = upper_tail_bound(params, cert, t, last);
        if (tail <= 1e-17 * sum || (sum == 0.0 && tail == 0.0)) return sum + tail + rounding_error(terms, max_exponent);
        if (last - first_shell >= max_shells) throw DomainError("heat series tail does not converge");
        ++last;
        const double log_term = log_majorant_term(params, cert, t, last);
        terms.push_back(std::exp(log_term));
        sum += terms.back();
        max_exponent = std::max(max_exponent, std::abs(log_term) + t * cert.lower(params, last));
    }
}

double trace_small_time_constant(const RadialSymbol &symbol) {
    // sum_j y_j^a e^{-y_j} over the geometric grid y_j = t c0 p^{j beta} is at
    // most Gamma(a) / (beta ln p) + max_y y^a e^{-y}, with a = n / beta.
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    const double a = params.n() / cert.beta;
    const double grid_sum = std::tgamma(a) / (cert.beta * params.log_p()) + std::pow(a / std::numbers::e, a);
    return (1.0 - params.pow_p(-params.n())) * std::pow(cert.c0, -a) * grid_sum;
}

MellinReport mellin_check(const RadialSymbol &symbol, double s, double rel_tol) {
    const GlobalParams &params = symbol.params();
    const SymbolCertificate &cert = symbol.certificate();
    const double a = params.n() / cert.beta;
    if (!(s > std::max(1.0, a))) {
        throw DomainError("Mellin identity needs s > max(1, n/beta) = " + std::to_string(std::max(1.0, a)));
    }
    if (!(rel_tol > 0.0)) throw InvalidArgument("tolerance must be positive");

    MellinReport report;
    report.s = s;
    report.rhs = std::tgamma(s) * zeta_series(symbol, s).value.value.real();
    const double target = 1e-3 * rel_tol * std::abs(report.rhs);

    // head: int_0^t0 Tr t^{s-1} <= C' t0^{s-a} / (s-a)
    const double c_head = trace_small_time_constant(symbol);
    double t_low = 1.0;
    auto head = [&](double t0) { return c_head * std::pow(t0, s - a) / (s - a); };
    while (head(t_low) >= target) t_low /= 2;

    // tail: for t >= b, Tr(t) <= Tr_major(b) e^{-(t-b) lambda} with lambda = c0 p^beta,
    // and t^{s-1} e^{-(t-b) lambda / 2} is non-increasing once b >= 2(s-1)/lambda.
    const double lambda = cert.lower(params, 1);
    const RadialSymbol majorant_symbol = scaled_power_symbol(params, cert.beta, cert.c0);
    auto tail = [&](double b) {
        const Enclosure m = heat_trace(majorant_symbol, b, 1e-300 + 1e-6 * target);
        return (m.value + m.bound) * 2.0 * std::pow(b, s - 1.0) / lambda;
    };
    double t_high = std::max(1.0, 2.0 * (s - 1.0) / lambda);
    while (tail(t_high) >= target) t_high *= 2;

    // integrand in v = ln t: Tr(e^v) e^{s v}
    auto integrand = [&](double v) {
        const double t = std::exp(v);
        const double scale = std::max(1.0, c_head * std::pow(t, -a));
        return heat_trace(symbol, t, 1e-15 * scale).value * std::exp(s * v);
    };
    const double v0 = std::log(t_low);
    const double v1 = std::log(t_high);
    auto composite = [&](int panels) {
        std::vector<double> parts;
        const double h = (v1 - v0) / panels;
        for (int i = 0; i < panels; ++i) {
            parts.push_back(boost::math::quadrature::gauss<double, 20>::integrate(integrand, v0 + i * h,
                                                                                  v0 + (i + 1) * h));
        }
        return pairwise_sum<double>(parts);
    };
    int panels = 4;
    double coarse = composite(panels);
    double fine = composite(2 * panels);
    while (std::abs(fine - coarse) > rel_tol * std::abs(fine) && panels < (1 << 12)) {
        panels *= 2;
        coarse = fine;
        fine = composite(2 * panels);
    }

    report.lhs = fine;
    report.lhs_bound = head(t_low) + tail(t_high) + std::abs(fine - coarse);
    report.relerr = std::abs(report.lhs - report.rhs) / std::abs(report.rhs);
    report.t_low = t_low;
    report.t_high = t_high;
    report.panels = 2 * panels;
    return report;
}

} // namespace padic

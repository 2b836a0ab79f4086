#pragma once

#include <span>
#include <vector>

#include "padic/core.hpp"
#include "padic/enclosure.hpp"
#include "padic/symbols.hpp"

namespace padic {

/// K(x, t) depends on x only through ord(x).
struct KernelQuery {
    Order ordx = Order::infinity();
    double t = 1.0;
    double tol = 1e-12;
};

/// Heat kernel of the unit ball,
///   K(x,t) = int_{||xi||_p > 1} chi_p(-x.xi) e^{-t A(xi)} d^n xi.
/// Zero for ord(x) < 0, a finite shell sum for finite ord(x) >= 0 and a
/// certified series at x = 0.
Enclosure heat_kernel(const RadialSymbol &symbol, const KernelQuery &q);

/// Full-space heat kernel Z(x,t) = int_{Q_p^n} chi_p(-x.xi) e^{-t A(xi)} d^n xi
/// as a two-sided shell series with both tails certified. Needs A on shells
/// j <= 0; table symbols must list them.
Enclosure full_space_kernel(const RadialSymbol &symbol, Order ordx, double t, double tol);

/// Tr e^{-tA} = sum_m mult_m e^{-t A(p^m)} with certified tail.
Enclosure heat_trace(const RadialSymbol &symbol, double t, double tol);

struct BracketRow {
    double t = 0.0;
    Enclosure trace;
    /// t^{n/beta} Tr(t)
    double scaled = 0.0;
    /// int_{||xi||>1} e^{-t c0 ||xi||^beta} d^n xi
    Enclosure majorant;
    bool below_majorant = false;
};

struct TraceBracket {
    std::vector<BracketRow> rows;
    double scaled_min = 0.0;
    double scaled_max = 0.0;
    bool majorant_holds = true;
};

TraceBracket trace_bracket(const RadialSymbol &symbol, std::span<const double> t_grid, double tol = 1e-12);

struct MellinReport {
    double s = 0.0;
    /// int_0^inf Tr(t) t^{s-1} dt by quadrature.
    double lhs = 0.0;
    /// Certified head and tail cut-offs plus the quadrature error estimate.
    double lhs_bound = 0.0;
    /// Gamma(s) zeta(s)
    double rhs = 0.0;
    double relerr = 0.0;
    double t_low = 0.0;
    double t_high = 0.0;
    int panels = 0;
};

/// Compares the Mellin transform of the heat trace with Gamma(s) zeta(s).
/// Requires s > max(1, n/beta).
MellinReport mellin_check(const RadialSymbol &symbol, double s, double rel_tol = 1e-6);

/// Certified upper bound on sum_{j >= first_shell} (1 - p^{-n}) p^{nj} e^{-t c0 p^{j beta}},
/// which dominates the shells j >= first_shell of the trace and of K(0, t).
double certified_upper_tail(const RadialSymbol &symbol, double t, int first_shell);

/// C' with Tr(t) <= C' t^{-n/beta} for all t > 0, from the certificate.
double trace_small_time_constant(const RadialSymbol &symbol);

} // namespace padic

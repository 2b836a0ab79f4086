// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "padic/heat.hpp"
#include "padic/lattice.hpp"
#include "padic/spectrum.hpp"

using namespace padic;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) detail << what;
        pass = pass && ok;
    }
};

std::vector<RadialSymbol> builtin_symbols() {
    const GlobalParams p2(2, 1);
    std::vector<std::pair<int, double>> table;
    for (int m = 1; m <= 64; ++m) table.emplace_back(m, 1.25 * p2.pow_p(m));
    table[0].second = 2.2;
    return {taibleson_symbol(p2, 1.0),
            taibleson_symbol(GlobalParams(3, 2), 2.0),
            damped_symbol(GlobalParams(3, 1), 1.5, 1.0, 2.0),
            walpha_symbol(GlobalParams(2, 1), {2.5, 1.0, WeightFunction::pure_power(GlobalParams(2, 1), 2.5)}, 1e-13),
            symbol_from_table(p2, table, 1.0, 1.0, 1.25)};
}

void zeta_agreement(Verdict &v) {
    double worst = 0.0;
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            for (double beta : {1.0, 2.0}) {
                const RadialSymbol a = taibleson_symbol(GlobalParams(p, n), beta);
                for (std::complex<double> s : {std::complex<double>(2.0, 0.0), {3.0, 0.0}, {1.5, 4.0}}) {
                    if (!(s.real() > n / beta)) continue;
                    const std::complex<double> x = std::pow(std::complex<double>(p), static_cast<double>(n) - beta * s);
                    const std::complex<double> closed = (1.0 - std::pow(p, -n)) * x / (1.0 - x);
                    const ZetaSeriesResult z = zeta_series(a, s);
                    const double excess = std::abs(z.value.value - closed) - z.value.bound;
                    worst = std::max(worst, excess);
                    v.require(excess <= 1e-12, "mismatch beyond bound");
                }
            }
        }
    }
    v.detail << "worst excess over bound " << worst;
}

void pole_abscissa(Verdict &v) {
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            for (double beta : {1.0, 2.0}) {
                const ZetaClosedForm z = taibleson_zeta_closed(GlobalParams(p, n), beta);
                const double a = n / beta;
                const double im = 2.0 * std::numbers::pi / (beta * std::log(static_cast<double>(p)));
                v.require(z.is_pole(a), "no pole at n/beta");
                v.require(z.is_pole({a, im}), "no pole at the first imaginary translate");
                v.require(!z.is_pole({a, im / 2.0}), "spurious pole");
            }
        }
    }
    v.detail << "poles at n/beta + 2 pi i k/(beta ln p)";
}

void counting_exactness(Verdict &v) {
    const GlobalParams params(2, 1);
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            for (double beta : {1.0, 2.0}) {
                const GlobalParams g(p, n);
                const RadialSymbol a = taibleson_symbol(g, beta);
                Count pnm = 1;
                for (int M = 1; M <= 10; ++M) {
                    for (int i = 0; i < n; ++i) pnm *= static_cast<Count>(p);
                    v.require(counting_function(a, g.pow_p(M * beta)) == pnm - 1, "N(p^{M beta}) != p^{nM} - 1");
                }
            }
        }
    }
    for (double beta : {1.0, 2.0}) {
        const RadialSymbol a = taibleson_symbol(params, beta);
        const GrowthEstimate est = growth_exponent_estimate(a, a(30));
        v.require(std::abs(est.slope - 1.0 / beta) <= 0.02, "growth slope off");
        v.detail << "slope(beta=" << beta << ") = " << est.slope << "  ";
    }
}

void finite_trace(Verdict &v) {
    double worst = 0.0;
    for (const RadialSymbol &a : builtin_symbols()) {
        for (int K : {2, 3}) {
            const LatticeLevel level(a.params(), K);
            if (level.size() > 729) continue;
            const FourierLattice fourier(level);
            for (double t : {0.25, 1.0, 4.0}) {
                double partial = 0.0;
                for (int m = 1; m <= K; ++m) partial += spectral_line(a, m).multiplicity * std::exp(-t * a(m));
                const double matrix_trace = semigroup_matrix(a, fourier, t).trace().real();
                worst = std::max(worst, std::abs(matrix_trace - partial));
                v.require(std::abs(matrix_trace - partial) <= 1e-12, "matrix trace differs from the partial sum");
                const Enclosure tr = heat_trace(a, t, 1e-13);
                const double tail = certified_upper_tail(a, t, K + 1);
                v.require(tr.value + tr.bound >= partial && tr.value - tr.bound <= partial + tail,
                          "heat trace enclosure misses partial sum + tail");
            }
        }
    }
    v.detail << "max |tr M(t) - partial| = " << worst;
}

void kernel_trace(Verdict &v) {
    double worst = 0.0;
    for (const RadialSymbol &a : builtin_symbols()) {
        for (double t : {0.25, 1.0, 4.0}) {
            const Enclosure k = heat_kernel(a, {Order::infinity(), t, 1e-12});
            const Enclosure tr = heat_trace(a, t, 1e-12);
            worst = std::max(worst, std::abs(k.value - tr.value));
            v.require(std::abs(k.value - tr.value) <= k.bound + tr.bound, "kernel and trace disagree");
        }
    }
    v.detail << "max |K(0,t) - Tr(t)| = " << worst;
}

void mercer(Verdict &v) {
    const GlobalParams params(2, 1);
    const RadialSymbol a = taibleson_symbol(params, 1.0);
    const VerificationRecord r = mercer_check(a, LatticeLevel(params, 3), 1.0, 1e-12);
    double tail = 0.0;
    for (int j = 4; j <= 60; ++j) tail += std::ldexp(1.0, j - 1) * std::exp(-std::ldexp(1.0, j));
    v.require(r.pass, "mercer_check failed");
    v.require(r.max_error <= r.certified_bound + 1e-10, "deviation above certified tail");
    v.require(std::abs(r.certified_bound - tail) <= 1e-8, "certified tail far from the direct tail sum");
    v.detail << "deviation " << r.max_error << " <= bound " << r.certified_bound;
}

void semigroup_contraction(Verdict &v) {
    for (const RadialSymbol &a : {taibleson_symbol(GlobalParams(2, 1), 1.0), damped_symbol(GlobalParams(3, 2), 1.0, 0.5, 1.5)}) {
        const FourierLattice fourier(LatticeLevel(a.params(), a.params().n() == 1 ? 3 : 2));
        for (auto [t, s] : {std::pair{0.5, 0.5}, {1.0, 2.0}}) {
            const VerificationRecord r = semigroup_law_check(a, fourier, t, s);
            v.require(r.max_error <= 1e-12, "semigroup law");
        }
        for (double t : {0.1, 1.0, 4.0}) {
            const VerificationRecord c = contraction_check(a, fourier, t);
            v.require(c.max_error <= 1e-10 && c.params.at("norm") < 1.0, "contraction norm");
        }
    }
    v.detail << "law <= 1e-12, norm = max e^{-tA} within 1e-10";
}

void eigenfunctions(Verdict &v) {
    double worst = 0.0;
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            for (int K = 1; K <= 3; ++K) {
                const GlobalParams params(p, n);
                const LatticeLevel level(params, K);
                const FourierLattice fourier(level);
                const RadialSymbol a = taibleson_symbol(params, 1.0);
                for (const WaveletIndex &idx : wavelet_family(level)) {
                    const LevelKFunction w = wavelet_eval(idx, level);
                    const LevelKFunction aw = fourier_diagonal_apply(a, fourier, w);
                    const double err = (aw.values - a(idx.shell()) * w.values).cwiseAbs().maxCoeff();
                    worst = std::max(worst, err);
                }
            }
        }
    }
    v.require(worst <= 1e-12, "eigenfunction residual");
    v.detail << "max residual " << worst;
}

void completeness(Verdict &v) {
    double worst = 0.0;
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            for (int K = 1; K <= 3; ++K) {
                const LatticeLevel level(GlobalParams(p, n), K);
                const GramReport g = gram_matrix(level);
                v.require(g.exact_identity, "Gram matrix not exactly the identity");
                v.require(g.gram.rows() == static_cast<Eigen::Index>(level.size() - 1), "family size != p^{nK} - 1");
                worst = std::max({worst, g.max_offdiag, g.max_diag_error});
            }
        }
    }
    v.require(worst <= 1e-12, "Gram deviation");
    v.detail << "exact identity; max float deviation " << worst;
}

void mellin(Verdict &v) {
    const RadialSymbol a = taibleson_symbol(GlobalParams(2, 1), 1.0);
    for (double s : {2.0, 3.0}) {
        const MellinReport r = mellin_check(a, s);
        v.require(r.relerr <= 1e-4, "Mellin relative error");
        v.detail << "s=" << s << " relerr " << r.relerr << "  ";
    }
    v.require(std::abs(zeta_series(a, 2.0).value.value.real() - 0.5) <= 1e-12, "zeta(2) != 0.5");
}

void scaling_bracket(Verdict &v) {
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(std::ldexp(1.0, -k));
    const TraceBracket b = trace_bracket(taibleson_symbol(GlobalParams(2, 1), 1.0), grid);
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
        v.require(b.rows[i].scaled >= 0.17 && b.rows[i].scaled <= 0.73, "t Tr(t) outside [0.17, 0.73]");
        if (i > 0) v.require(b.rows[i].scaled >= b.rows[i - 1].scaled, "t Tr(t) not monotone");
    }
    v.require(std::abs(b.rows.back().scaled - 0.7213) <= 1e-3, "t Tr(t) not approaching 0.7213");
    for (const RadialSymbol &a : builtin_symbols()) v.require(trace_bracket(a, grid).majorant_holds, "majorant");
    v.detail << "t Tr(t) from " << b.rows.front().scaled << " to " << b.rows.back().scaled;
}

void walpha_scaling(Verdict &v) {
    for (auto [p, n, alpha] : {std::tuple{2, 1, 2.0}, {3, 1, 2.5}, {2, 2, 3.5}}) {
        const GlobalParams params(p, n);
        const RadialSymbol w = walpha_symbol(params, {alpha, 1.0, WeightFunction::pure_power(params, alpha)}, 1e-13);
        for (int g = 1; g <= 8; ++g) {
            const double ratio = w(g + 1) / w(g);
            v.require(std::abs(ratio - std::pow(p, alpha - n)) <= 1e-10, "ratio != p^{alpha - n}");
        }
    }
    const GlobalParams params(2, 1);
    const RadialSymbol w = walpha_symbol(params, {2.0, 1.0, WeightFunction::pure_power(params, 2.0)}, 1e-13);
    v.require(std::abs(w(1) - 1.5) <= 1e-10 && std::abs(w(2) - 3.0) <= 1e-10, "values at gamma = 1, 2");
    v.detail << "A(2) = " << w(1) << ", A(4) = " << w(2);
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict &)>>> criteria = {
            {"taibleson zeta series matches the closed form", zeta_agreement},
            {"pole abscissa and imaginary spacing", pole_abscissa},
            {"exact counting and growth exponent", counting_exactness},
            {"finite-level trace identity", finite_trace},
            {"kernel on the diagonal equals the trace", kernel_trace},
            {"mercer expansion within certified tail", mercer},
            {"semigroup law and contraction", semigroup_contraction},
            {"wavelet eigenfunction identity", eigenfunctions},
            {"orthonormal completeness", completeness},
            {"mellin transform of the trace", mellin},
            {"small-time scaling bracket", scaling_bracket},
            {"W_alpha scaling", walpha_scaling},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::printf("%s criterion %2zu: %s [%s] (%.2f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.str().c_str(), elapsed.count());
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "padic/core.hpp"
#include "padic/enclosure.hpp"
#include "padic/symbols.hpp"

namespace padic {

/// Largest quotient size p^{nK} a dense lattice construction accepts by default.
inline constexpr std::size_t default_lattice_cap = 4096;

/// The finite group Z_p^n / p^K Z_p^n. Coset x is represented by coordinates
/// c_i in [0, p^K) and enumerated lexicographically with coordinate 0 most
/// significant: index = sum_i c_i p^{K(n-1-i)}.
class LatticeLevel {
public:
    LatticeLevel(GlobalParams params, int K, std::size_t cap = default_lattice_cap);

    const GlobalParams &params() const noexcept { return params_; }
    int K() const noexcept { return K_; }
    /// p^K
    int modulus() const noexcept { return modulus_; }
    /// p^{nK}
    std::size_t size() const noexcept { return size_; }
    /// p^{-nK}
    double haar_weight() const noexcept { return 1.0 / static_cast<double>(size_); }

    std::vector<int> coordinates(std::size_t index) const;
    std::size_t index(std::span<const int> coords) const;
    /// Index of the coset x - y.
    std::size_t difference(std::size_t x, std::size_t y) const;
    /// ord of the coset representative; +infinity for the zero coset.
    Order order(std::size_t index) const;
    /// The coset representative as an exact address.
    PointAddress address(std::size_t index) const;

private:
    GlobalParams params_;
    int K_;
    int modulus_;
    std::size_t size_;
};

/// A function on the cosets of a level, i.e. a level-K locally constant
/// function on Z_p^n.
struct LevelKFunction {
    LatticeLevel level;
    Eigen::VectorXcd values;

    std::complex<double> integral() const;
    double l2_norm() const;
};

std::complex<double> inner_product(const LevelKFunction &f, const LevelKFunction &g);

/// omega_{gamma b k}(x) = p^{-n gamma/2} chi_p(p^{-1} k.(p^gamma x - b)) Omega(||p^gamma x - b||_p)
/// with gamma <= 0. b_i = b[i] p^gamma with b[i] in [0, p^{-gamma}); k_i in [0, p), k != 0.
struct WaveletIndex {
    int gamma = 0;
    std::vector<int> b;
    std::vector<int> k;

    /// Shell m = 1 - gamma; the eigenvalue is A(p^m).
    int shell() const { return 1 - gamma; }
};

/// All wavelets supported in Z_p^n with shell <= K, ordered by shell, then b, then k.
std::vector<WaveletIndex> wavelet_family(const LatticeLevel &level);

/// Exact phases of a wavelet: residue r in [0, p) with value amplitude * exp(2 pi i r/p)
/// on the support, -1 off the support.
std::vector<int> wavelet_residues(const WaveletIndex &idx, const LatticeLevel &level);

LevelKFunction wavelet_eval(const WaveletIndex &idx, const LatticeLevel &level);

struct GramReport {
    Eigen::MatrixXcd gram;
    /// Decided in exact cyclotomic arithmetic.
    bool exact_identity = false;
    double max_offdiag = 0.0;
    double max_diag_error = 0.0;
};

GramReport gram_matrix(const LatticeLevel &level);

/// Character table of the level: entry (xi, x) is chi_p(xi.x) with xi = r / p^K.
class FourierLattice {
public:
    explicit FourierLattice(LatticeLevel level);

    const LatticeLevel &level() const noexcept { return level_; }
    const Eigen::MatrixXcd &characters() const noexcept { return characters_; }
    /// Shell m of frequency r: ||r / p^K||_p = p^m, 0 for r = 0.
    int frequency_shell(std::size_t r) const { return shells_[r]; }

    /// Multiplier per frequency, m(0) = 0.
    Eigen::VectorXd multiplier(const RadialSymbol &symbol, double t) const;

private:
    LatticeLevel level_;
    Eigen::MatrixXcd characters_;
    std::vector<int> shells_;
};

/// F^{-1}[A(||xi||) F f] for mean-zero f.
LevelKFunction fourier_diagonal_apply(const RadialSymbol &symbol, const FourierLattice &fourier,
                                      const LevelKFunction &f);

/// Matrix of T(t) in the coset basis: F^{-1} diag(1_{xi != 0} e^{-tA(||xi||)}) F.
/// Acts as the identity on mean-zero functions at t = 0.
Eigen::MatrixXcd semigroup_matrix(const RadialSymbol &symbol, const FourierLattice &fourier, double t);

/// T(t) built instead as convolution with the kernel coset averages.
Eigen::MatrixXcd convolution_matrix(const RadialSymbol &symbol, const LatticeLevel &level, double t, double tol);

/// Average of K(., t) over the coset b + p^K Z_p^n.
Enclosure kernel_coset_average(const RadialSymbol &symbol, const LatticeLevel &level, std::size_t coset, double t,
                               double tol);
/// Same for an arbitrary address; zero outside Z_p^n.
Enclosure kernel_coset_average(const RadialSymbol &symbol, const LatticeLevel &level, const PointAddress &b,
                               double t, double tol);

/// One verification outcome, serialized as {check, params, max_error, certified_bound, pass}.
struct VerificationRecord {
    std::string check;
    std::map<std::string, double> params;
    double max_error = 0.0;
    double certified_bound = 0.0;
    bool pass = false;
};

/// Compares K(x - y, t) with the wavelet expansion over shells <= K.
VerificationRecord mercer_check(const RadialSymbol &symbol, const LatticeLevel &level, double t, double tol);
VerificationRecord semigroup_law_check(const RadialSymbol &symbol, const FourierLattice &fourier, double t,
                                       double s);
VerificationRecord contraction_check(const RadialSymbol &symbol, const FourierLattice &fourier, double t);

struct GeneratorReport {
    std::vector<double> t;
    std::vector<double> error;
    /// Fitted slope of log error against log t; 1 means first-order convergence.
    double order = 0.0;
    bool pass = false;
};

GeneratorReport generator_check(const RadialSymbol &symbol, const FourierLattice &fourier, const LevelKFunction &f,
                                std::span<const double> t_grid);

/// Every finite-level check, as run by the `verify` command.
struct SuiteOptions {
    int K = 3;
    double t = 1.0;
    double tol = 1e-12;
    std::uint64_t seed = 20240101;
};

std::vector<VerificationRecord> run_lattice_suite(const RadialSymbol &symbol, const SuiteOptions &options);

} // namespace padic

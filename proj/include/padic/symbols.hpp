#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padic/core.hpp"
#include "padic/enclosure.hpp"

namespace padic {

/// Growth band c0 p^{j beta} <= A(p^j) <= c1 p^{j beta} on shells j >= 1.
struct SymbolCertificate {
    double beta = 1.0;
    double c0 = 1.0;
    double c1 = 1.0;

    double lower(const GlobalParams &params, int j) const { return c0 * params.pow_p(j * beta); }
    double upper(const GlobalParams &params, int j) const { return c1 * params.pow_p(j * beta); }
};

enum class SymbolKind { taibleson, damped, walpha, table };

std::string to_string(SymbolKind kind);

/// Relative slack applied to certificate checks to absorb floating rounding.
inline constexpr double certificate_slack = 1e-12;

/// A radial Fourier multiplier, exposed through its shell values A(p^j).
///
/// Values are memoized per shell and the certificate is checked on every
/// shell j >= 1 the first time it is evaluated. Copies share the cache; the
/// cache is safe for concurrent readers.
class RadialSymbol {
public:
    using Evaluator = std::function<Enclosure(int)>;

    RadialSymbol(GlobalParams params, SymbolKind kind, SymbolCertificate certificate, Evaluator eval,
                 std::map<std::string, double> parameters = {});

    /// A(p^j). Throws CertificateViolation when the value leaves the band.
    double operator()(int j) const { return enclosure(j).value; }
    /// A(p^j) with its absolute error bound (zero except for W_alpha symbols).
    Enclosure enclosure(int j) const;
    /// True when A(p^j) can be evaluated without error.
    bool has_shell(int j) const;

    const GlobalParams &params() const;
    const SymbolCertificate &certificate() const;
    SymbolKind kind() const;
    /// Named construction parameters (beta, A, B, alpha, ...), for reports.
    const std::map<std::string, double> &parameters() const;

    /// Table entries for table symbols, empty otherwise.
    const std::vector<std::pair<int, double>> &table() const;
    /// Scale c of an exact power symbol c p^{j beta}, 0 when not of that form.
    double power_scale() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    friend RadialSymbol symbol_from_table(const GlobalParams &, std::vector<std::pair<int, double>>, double,
                                          double, double);
    friend RadialSymbol scaled_power_symbol(const GlobalParams &, double, double);
};

/// A(p^j) = p^{j beta}; certificate (beta, 1, 1).
RadialSymbol taibleson_symbol(const GlobalParams &params, double beta);

/// A(p^j) = c p^{j beta}; certificate (beta, c, c). Used for majorants.
RadialSymbol scaled_power_symbol(const GlobalParams &params, double beta, double scale);

/// A(p^j) = p^{j beta} (B - A e^{-p^j}) with B > A > 0; certificate (beta, B - A, B).
RadialSymbol damped_symbol(const GlobalParams &params, double beta, double a, double b);

/// Positive weight j -> w(p^j) with c_w0 p^{j alpha} <= w(p^j) <= c_w1 p^{j alpha}.
struct WeightFunction {
    std::function<double(int)> value;
    double cw0 = 1.0;
    double cw1 = 1.0;
    /// Shells above this index are not available; the tail beyond is bounded by cw0.
    int last_shell = std::numeric_limits<int>::max();
    /// Shells below this index are not available.
    int first_shell = std::numeric_limits<int>::min();

    /// w(p^j) = scale p^{j alpha}.
    static WeightFunction pure_power(const GlobalParams &params, double alpha, double scale = 1.0);
    /// Table-backed weight; must be strictly increasing and positive.
    static WeightFunction from_table(std::vector<std::pair<int, double>> entries, double cw0, double cw1);
};

struct WAlphaSpec {
    double alpha = 0.0;
    double kappa = 1.0;
    WeightFunction w;
};

/// Shell range over which the W_alpha certificate constants are measured.
struct WAlphaCertificateRange {
    int first = 1;
    int last = 32;
};

/// kappa * A_{w_alpha}(p^gamma) by the shell decomposition of
/// int (1 - chi_p(y.xi)) / w(||y||_p) d^n y, each value an enclosure with
/// bound < tol. The certificate exponent is alpha - n.
RadialSymbol walpha_symbol(const GlobalParams &params, const WAlphaSpec &spec, double tol,
                           WAlphaCertificateRange range = {});

/// Single evaluation of the W_alpha shell series, exposed for testing.
Enclosure walpha_value(const GlobalParams &params, const WAlphaSpec &spec, int gamma, double tol);

/// Lookup-backed symbol. Entries with j >= 1 are checked against the
/// certificate at load time.
RadialSymbol symbol_from_table(const GlobalParams &params, std::vector<std::pair<int, double>> entries,
                               double beta, double c0, double c1);

/// Reads `j value` pairs, one per line. Blank lines and lines starting with '#' are skipped.
std::vector<std::pair<int, double>> read_table_file(const std::string &path);

} // namespace padic

#include "padic/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "padic/errors.hpp"

namespace padic {

std::string to_string(SymbolKind kind) {
    switch (kind) {
    case SymbolKind::taibleson: return "taibleson";
    case SymbolKind::damped: return "damped";
    case SymbolKind::walpha: return "walpha";
    case SymbolKind::table: return "table";
    }
    return "unknown";
}

struct RadialSymbol::Impl {
    Impl(GlobalParams params_, SymbolKind kind_, SymbolCertificate certificate_, Evaluator eval_,
         std::map<std::string, double> parameters_)
            : params(params_), kind(kind_), certificate(certificate_), eval(std::move(eval_)),
              parameters(std::move(parameters_)) {}

    GlobalParams params;
    SymbolKind kind;
    SymbolCertificate certificate;
    Evaluator eval;
    std::map<std::string, double> parameters;
    std::vector<std::pair<int, double>> table;
    double power_scale = 0.0;

    mutable std::shared_mutex mutex;
    mutable std::unordered_map<int, Enclosure> cache;
};

namespace {

void check_certificate(const GlobalParams &params, const SymbolCertificate &cert, int j, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw CertificateViolation("symbol value at shell " + std::to_string(j) + " is not a positive finite number",
                                   j);
    }
    if (j < 1) return;
    const double lo = cert.lower(params, j) * (1.0 - certificate_slack);
    const double hi = cert.upper(params, j) * (1.0 + certificate_slack);
    if (value < lo || value > hi) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "certificate violated at shell " << j << ": A(p^" << j << ") = " << value << " outside ["
            << cert.lower(params, j) << ", " << cert.upper(params, j) << "]";
        throw CertificateViolation(msg.str(), j);
    }
}

void validate_certificate(const SymbolCertificate &cert) {
    if (!(cert.beta > 0.0)) throw InvalidArgument("certificate beta must be positive");
    if (!(cert.c0 > 0.0) || !(cert.c1 >= cert.c0))
        throw InvalidArgument("certificate constants must satisfy 0 < c0 <= c1");
}

} // namespace

RadialSymbol::RadialSymbol(GlobalParams params, SymbolKind kind, SymbolCertificate certificate, Evaluator eval,
                           std::map<std::string, double> parameters)
        : impl_(std::make_shared<Impl>(params, kind, certificate, std::move(eval), std::move(parameters))) {
    validate_certificate(certificate);
}

Enclosure RadialSymbol::enclosure(int j) const {
    {
        std::shared_lock lock(impl_->mutex);
        if (auto it = impl_->cache.find(j); it != impl_->cache.end()) return it->second;
    }
    const Enclosure value = impl_->eval(j);
    check_certificate(impl_->params, impl_->certificate, j, value.value);
    std::unique_lock lock(impl_->mutex);
    return impl_->cache.emplace(j, value).first->second;
}

bool RadialSymbol::has_shell(int j) const {
    try {
        enclosure(j);
        return true;
    } catch (const InvalidArgument &) {
        return false;
    }
}

const GlobalParams &RadialSymbol::params() const { return impl_->params; }
const SymbolCertificate &RadialSymbol::certificate() const { return impl_->certificate; }
SymbolKind RadialSymbol::kind() const { return impl_->kind; }
const std::map<std::string, double> &RadialSymbol::parameters() const { return impl_->parameters; }
const std::vector<std::pair<int, double>> &RadialSymbol::table() const { return impl_->table; }
double RadialSymbol::power_scale() const { return impl_->power_scale; }

RadialSymbol taibleson_symbol(const GlobalParams &params, double beta) {
    if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
    return scaled_power_symbol(params, beta, 1.0);
}

RadialSymbol scaled_power_symbol(const GlobalParams &params, double beta, double scale) {
    if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
    if (!(scale > 0.0)) throw InvalidArgument("power symbol scale must be positive");
    RadialSymbol symbol(params, SymbolKind::taibleson, {beta, scale, scale},
                        [params, beta, scale](int j) { return Enclosure{scale * params.pow_p(j * beta), 0.0}; },
                        {{"beta", beta}, {"scale", scale}});
    symbol.impl_->power_scale = scale;
    return symbol;
}

RadialSymbol damped_symbol(const GlobalParams &params, double beta, double a, double b) {
    if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
    if (!(a > 0.0) || !(b > a)) throw InvalidArgument("damped symbol needs B > A > 0");
    return RadialSymbol(
            params, SymbolKind::damped, {beta, b - a, b},
            [params, beta, a, b](int j) {
                return Enclosure{params.pow_p(j * beta) * (b - a * std::exp(-params.pow_p(j))), 0.0};
            },
            {{"beta", beta}, {"A", a}, {"B", b}});
}

WeightFunction WeightFunction::pure_power(const GlobalParams &params, double alpha, double scale) {
    if (!(scale > 0.0)) throw InvalidArgument("weight scale must be positive");
    WeightFunction w;
    w.value = [params, alpha, scale](int j) { return scale * params.pow_p(j * alpha); };
    w.cw0 = scale;
    w.cw1 = scale;
    return w;
}

WeightFunction WeightFunction::from_table(std::vector<std::pair<int, double>> entries, double cw0, double cw1) {
    if (entries.empty()) throw InvalidArgument("weight table is empty");
    if (!(cw0 > 0.0) || !(cw1 >= cw0)) throw InvalidArgument("weight constants must satisfy 0 < cw0 <= cw1");
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(entries[i].second > 0.0))
            throw InvalidArgument("weight at shell " + std::to_string(entries[i].first) + " is not positive");
        if (i > 0 && entries[i].first != entries[i - 1].first + 1)
            throw InvalidArgument("weight table must cover consecutive shells");
        if (i > 0 && !(entries[i].second > entries[i - 1].second))
            throw InvalidArgument("weight must be strictly increasing, fails at shell " +
                                  std::to_string(entries[i].first));
    }
    WeightFunction w;
    const int first = entries.front().first;
    w.first_shell = first;
    w.last_shell = entries.back().first;
    w.cw0 = cw0;
    w.cw1 = cw1;
    auto values = std::make_shared<std::vector<std::pair<int, double>>>(std::move(entries));
    w.value = [values, first](int j) {
        const auto idx = static_cast<std::size_t>(j - first);
        if (j < first || idx >= values->size())
            throw InvalidArgument("weight table has no entry for shell " + std::to_string(j));
        return (*values)[idx].second;
    };
    return w;
}

Enclosure walpha_value(const GlobalParams &params, const WAlphaSpec &spec, int gamma, double tol) {
    const int n = params.n();
    const double alpha = spec.alpha;
    if (!(alpha > n)) throw InvalidArgument("W_alpha needs alpha > n, the shell series diverges otherwise");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (!(spec.kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    const WeightFunction &w = spec.w;

    const int start = 1 - gamma;
    if (start < w.first_shell)
        throw InvalidArgument("weight table does not reach shell " + std::to_string(start));
    const double shell_factor = 1.0 - params.pow_p(-n);
    const double ratio = params.pow_p(n - alpha);
    // sum_{j>J} p^{nj}(1-p^{-n}) / (cw0 p^{j alpha})
    auto tail_after = [&](int last) {
        return spec.kappa * shell_factor / w.cw0 * params.pow_p((last + 1) * (n - alpha)) / (1.0 - ratio);
    };

    double sum = params.pow_p(n * start) / w.value(start);
    int last = start;
    while (tail_after(last) >= tol) {
        if (last >= w.last_shell)
            throw InvalidArgument("weight table ends at shell " + std::to_string(last) +
                                  " before the tail drops below the tolerance");
        ++last;
        sum += params.pow_p(n * last) * shell_factor / w.value(last);
    }
    return {spec.kappa * sum, tail_after(last)};
}

RadialSymbol walpha_symbol(const GlobalParams &params, const WAlphaSpec &spec, double tol,
                           WAlphaCertificateRange range) {
    if (range.first < 1 || range.last < range.first) throw InvalidArgument("invalid W_alpha certificate range");
    const double beta = spec.alpha - params.n();
    double c0 = std::numeric_limits<double>::infinity();
    double c1 = 0.0;
    for (int g = range.first; g <= range.last; ++g) {
        const Enclosure e = walpha_value(params, spec, g, tol);
        const double scale = params.pow_p(g * beta);
        c0 = std::min(c0, (e.value - e.bound) / scale);
        c1 = std::max(c1, (e.value + e.bound) / scale);
    }
    if (!(c0 > 0.0)) throw InvalidArgument("W_alpha tolerance too coarse for a positive lower constant");
    return RadialSymbol(
            params, SymbolKind::walpha, {beta, c0, c1},
            [params, spec, tol](int g) { return walpha_value(params, spec, g, tol); },
            {{"alpha", spec.alpha}, {"kappa", spec.kappa}, {"tol", tol}});
}

RadialSymbol symbol_from_table(const GlobalParams &params, std::vector<std::pair<int, double>> entries,
                               double beta, double c0, double c1) {
    const SymbolCertificate cert{beta, c0, c1};
    validate_certificate(cert);
    std::sort(entries.begin(), entries.end());
    std::set<int> seen;
    for (const auto &[j, v] : entries) {
        if (!seen.insert(j).second) throw InvalidArgument("duplicate table entry for shell " + std::to_string(j));
        check_certificate(params, cert, j, v);
    }
    auto values = std::make_shared<std::map<int, double>>(entries.begin(), entries.end());
    RadialSymbol symbol(
            params, SymbolKind::table, cert,
            [values](int j) {
                auto it = values->find(j);
                if (it == values->end())
                    throw InvalidArgument("table symbol has no entry for shell " + std::to_string(j));
                return Enclosure{it->second, 0.0};
            },
            {{"beta", beta}, {"c0", c0}, {"c1", c1}});
    symbol.impl_->table = std::move(entries);
    return symbol;
}

std::vector<std::pair<int, double>> read_table_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open table file " + path);
    std::vector<std::pair<int, double>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        int j = 0;
        double v = 0.0;
        std::string rest;
        if (!(fields >> j >> v) || (fields >> rest))
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected `j value`");
        entries.emplace_back(j, v);
    }
    return entries;
}

} // namespace padic

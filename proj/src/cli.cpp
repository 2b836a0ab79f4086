#include "padic/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "padic/errors.hpp"
#include "padic/heat.hpp"
#include "padic/lattice.hpp"
#include "padic/spectrum.hpp"

namespace padic::cli {

namespace {

const std::vector<std::string> subcommands = {"spectrum", "count", "zeta",   "poles",          "trace",
                                              "kernel",   "mellin", "verify", "estimate-growth"};

double parse_double(const std::string &field, const std::string &text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception &) {
        throw InvalidArgument("invalid value for " + field + ": '" + text + "' is not a number");
    }
}

int parse_int(const std::string &field, const std::string &text) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception &) {
        throw InvalidArgument("invalid value for " + field + ": '" + text + "' is not an integer");
    }
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

std::vector<double> parse_list(const std::string &field, const std::vector<std::string> &items) {
    std::vector<double> values;
    for (const std::string &item : items) {
        for (const std::string &part : split(item, ',')) values.push_back(parse_double(field, part));
    }
    return values;
}

// "k0:k1" -> t = 2^{-k} for k = k0..k1
std::vector<double> parse_pow2_grid(const std::string &text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 2) throw InvalidArgument("invalid value for --t-pow2: expected k0:k1");
    const int k0 = parse_int("--t-pow2", parts[0]);
    const int k1 = parse_int("--t-pow2", parts[1]);
    if (k1 < k0) throw InvalidArgument("invalid value for --t-pow2: k1 < k0");
    std::vector<double> grid;
    for (int k = k0; k <= k1; ++k) grid.push_back(std::ldexp(1.0, -k));
    return grid;
}

OutputFormat parse_format(const std::string &text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    throw InvalidArgument("invalid value for format: '" + text + "' (expected json or csv)");
}

Order parse_order(const std::string &text) {
    if (text == "inf" || text == "+inf") return Order::infinity();
    return Order::finite(parse_int("ordx", text));
}

// Applies one setting by its config-file/flag name.
void apply_setting(RunConfig &config, const std::string &key, const std::vector<std::string> &values) {
    const std::string field = "--" + key;
    auto single = [&]() -> const std::string & {
        if (values.size() != 1) throw InvalidArgument(field + " takes a single value");
        return values.front();
    };
    if (key == "p") config.p = parse_int(field, single());
    else if (key == "n") config.n = parse_int(field, single());
    else if (key == "symbol") config.symbol = single();
    else if (key == "beta") config.beta = parse_double(field, single());
    else if (key == "A") config.a = parse_double(field, single());
    else if (key == "B") config.b = parse_double(field, single());
    else if (key == "alpha") config.alpha = parse_double(field, single());
    else if (key == "kappa") config.kappa = parse_double(field, single());
    else if (key == "table") config.table = single();
    else if (key == "c0") config.c0 = parse_double(field, single());
    else if (key == "c1") config.c1 = parse_double(field, single());
    else if (key == "w-table") config.w_table = single();
    else if (key == "cw0") config.cw0 = parse_double(field, single());
    else if (key == "cw1") config.cw1 = parse_double(field, single());
    else if (key == "t") config.t = parse_list(field, values);
    else if (key == "t-pow2") config.t = parse_pow2_grid(single());
    else if (key == "s") {
        config.s.clear();
        for (const std::string &v : values) config.s.push_back(parse_complex(v));
    } else if (key == "T") config.T = parse_double(field, single());
    else if (key == "Tmax") config.t_max = parse_double(field, single());
    else if (key == "shells") config.shells = parse_int(field, single());
    else if (key == "K") config.K = parse_int(field, single());
    else if (key == "ordx") config.ordx = single();
    else if (key == "full") config.full_space = single() == "true" || single() == "1";
    else if (key == "tol") config.tol = parse_double(field, single());
    else if (key == "format") config.format = parse_format(single());
    else if (key == "output") config.output = single();
    else throw InvalidArgument("unknown configuration key '" + key + "'");
}

std::vector<std::string> json_values(const std::string &key, const nlohmann::json &value) {
    auto scalar = [&key](const nlohmann::json &v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_double(v.get<double>());
        throw InvalidArgument("config key '" + key + "' has an unsupported value");
    };
    std::vector<std::string> out;
    if (value.is_array()) {
        for (const auto &v : value) out.push_back(scalar(v));
    } else {
        out.push_back(scalar(value));
    }
    return out;
}

void apply_config_file(RunConfig &config, const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config file " + path + " must hold a JSON object");
    for (const auto &[key, value] : doc.items()) apply_setting(config, key, json_values(key, value));
}

nlohmann::json order_json(const Order &o) {
    if (o.is_infinite()) return "inf";
    return o.value();
}

std::string count_text(Count c) { return to_string(c); }

Report spectrum_report(const RunConfig &config, const RadialSymbol &symbol) {
    Report report;
    report.csv.header = {"m", "lambda", "multiplicity"};
    nlohmann::json lines = nlohmann::json::array();
    for (const SpectralLine &line : spectrum_iter(symbol) | std::views::take(config.shells)) {
        const Count mult = exact_multiplicity(symbol.params(), line.m);
        lines.push_back({{"m", line.m}, {"lambda", line.lambda}, {"multiplicity", count_json(mult)}});
        report.csv.rows.push_back({std::to_string(line.m), format_double(line.lambda), count_text(mult)});
    }
    report.json = {{"lines", lines}};
    return report;
}

Report count_report(const RunConfig &config, const RadialSymbol &symbol) {
    const Count count = counting_function(symbol, config.T);
    Report report;
    report.json = {{"T", config.T}, {"count", count_json(count)}};
    report.csv = {{"T", "count"}, {{format_double(config.T), count_text(count)}}};
    return report;
}

Report zeta_report(const RunConfig &config, const RadialSymbol &symbol) {
    Report report;
    report.csv.header = {"s_re", "s_im", "value", "value_im", "error_bound", "shells_used", "abscissa"};
    nlohmann::json results = nlohmann::json::array();
    for (const std::complex<double> s : config.s) {
        const ZetaSeriesResult z = zeta_series(symbol, s, config.tol);
        results.push_back({{"s_re", s.real()},
                           {"s_im", s.imag()},
                           {"value", z.value.value.real()},
                           {"value_im", z.value.value.imag()},
                           {"error_bound", z.value.bound},
                           {"shells_used", z.shells_used},
                           {"abscissa", z.abscissa}});
        report.csv.rows.push_back({format_double(s.real()), format_double(s.imag()),
                                   format_double(z.value.value.real()), format_double(z.value.value.imag()),
                                   format_double(z.value.bound), std::to_string(z.shells_used),
                                   format_double(z.abscissa)});
    }
    report.json = results.size() == 1 ? results.front() : results;
    return report;
}

Report poles_report(const RadialSymbol &symbol) {
    const PoleLattice lattice = pole_lattice(symbol);
    Report report;
    report.json = {{"abscissa", lattice.abscissa},
                   {"spacing", lattice.spacing},
                   {"kind", to_string(lattice.kind)},
                   {"declined", lattice.declined}};
    if (lattice.declined) {
        report.json["reason"] = lattice.reason;
    } else {
        report.json["power_from"] = lattice.power_from;
        report.json["scale"] = lattice.scale;
        report.json["correction_shells"] = lattice.correction.size();
    }
    report.csv = {{"abscissa", "spacing", "kind"},
                  {{format_double(lattice.abscissa), format_double(lattice.spacing), to_string(lattice.kind)}}};
    report.declined = lattice.declined;
    return report;
}

Report trace_report(const RunConfig &config, const RadialSymbol &symbol) {
    const TraceBracket bracket = trace_bracket(symbol, config.t, config.tol);
    Report report;
    report.csv.header = {"t", "value", "bound"};
    nlohmann::json rows = nlohmann::json::array();
    for (const BracketRow &row : bracket.rows) {
        rows.push_back({{"t", row.t},
                        {"value", row.trace.value},
                        {"bound", row.trace.bound},
                        {"scaled", row.scaled},
                        {"majorant", row.majorant.value},
                        {"majorant_bound", row.majorant.bound},
                        {"below_majorant", row.below_majorant}});
        report.csv.rows.push_back({format_double(row.t), format_double(row.trace.value), format_double(row.trace.bound)});
    }
    report.json = {{"rows", rows},
                   {"scaled_min", bracket.scaled_min},
                   {"scaled_max", bracket.scaled_max},
                   {"majorant_holds", bracket.majorant_holds}};
    return report;
}

Report kernel_report(const RunConfig &config, const RadialSymbol &symbol) {
    const Order ordx = parse_order(config.ordx);
    Report report;
    report.csv.header = {"ordx", "t", "value", "bound"};
    nlohmann::json results = nlohmann::json::array();
    for (double t : config.t) {
        const Enclosure k = config.full_space ? full_space_kernel(symbol, ordx, t, config.tol)
                                              : heat_kernel(symbol, {ordx, t, config.tol});
        results.push_back({{"ordx", order_json(ordx)},
                           {"t", t},
                           {"value", k.value},
                           {"bound", k.bound},
                           {"domain", config.full_space ? "full" : "ball"}});
        report.csv.rows.push_back({ordx.to_string(), format_double(t), format_double(k.value), format_double(k.bound)});
    }
    report.json = results.size() == 1 ? results.front() : results;
    return report;
}

Report mellin_report(const RunConfig &config, const RadialSymbol &symbol) {
    Report report;
    report.csv.header = {"s", "lhs", "rhs", "relerr"};
    nlohmann::json results = nlohmann::json::array();
    for (const std::complex<double> s : config.s) {
        if (s.imag() != 0.0) throw InvalidArgument("invalid value for --s: the Mellin check takes real s");
        const MellinReport m = mellin_check(symbol, s.real());
        results.push_back({{"s", m.s},
                           {"lhs", m.lhs},
                           {"lhs_bound", m.lhs_bound},
                           {"rhs", m.rhs},
                           {"relerr", m.relerr},
                           {"t_low", m.t_low},
                           {"t_high", m.t_high},
                           {"panels", m.panels}});
        report.csv.rows.push_back({format_double(m.s), format_double(m.lhs), format_double(m.rhs), format_double(m.relerr)});
    }
    report.json = results.size() == 1 ? results.front() : results;
    return report;
}

Report verify_report(const RunConfig &config, const RadialSymbol &symbol) {
    SuiteOptions options;
    options.K = config.K;
    options.t = config.t.front();
    options.tol = config.tol;
    const std::vector<VerificationRecord> records = run_lattice_suite(symbol, options);
    Report report;
    report.json = nlohmann::json::array();
    report.csv.header = {"check", "max_error", "certified_bound", "pass"};
    for (const VerificationRecord &rec : records) {
        report.json.push_back(to_json(rec));
        report.csv.rows.push_back({rec.check, format_double(rec.max_error), format_double(rec.certified_bound),
                                   rec.pass ? "true" : "false"});
        report.verification_failed = report.verification_failed || !rec.pass;
    }
    return report;
}

Report growth_report(const RunConfig &config, const RadialSymbol &symbol) {
    double t_max = config.t_max;
    if (t_max <= 0.0) t_max = symbol(30);
    const GrowthEstimate est = growth_exponent_estimate(symbol, t_max);
    Report report;
    report.json = {{"slope", est.slope},
                   {"intercept", est.intercept},
                   {"residual", est.residual},
                   {"shells", est.shells},
                   {"Tmax", t_max},
                   {"bound_exponent", symbol.params().n() / symbol.certificate().beta},
                   {"note", "empirical slope of log N(T); only N(T) = O(T^{n/beta}) is proven"}};
    report.csv = {{"slope", "intercept", "residual", "shells"},
                  {{format_double(est.slope), format_double(est.intercept), format_double(est.residual),
                    std::to_string(est.shells)}}};
    return report;
}

} // namespace

std::complex<double> parse_complex(const std::string &text) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() == 1) return {parse_double("--s", parts[0]), 0.0};
    if (parts.size() == 2) return {parse_double("--s", parts[0]), parse_double("--s", parts[1])};
    throw InvalidArgument("invalid value for --s: expected re,im");
}

void RunConfig::validate() const {
    if (std::find(subcommands.begin(), subcommands.end(), command) == subcommands.end())
        throw InvalidArgument("unknown subcommand '" + command + "'");
    if (!is_prime(p)) throw InvalidArgument("invalid value for --p: " + std::to_string(p) + " is not a prime");
    if (n < 1) throw InvalidArgument("invalid value for --n: must be >= 1");
    if (symbol != "taibleson" && symbol != "damped" && symbol != "walpha" && symbol != "table")
        throw InvalidArgument("invalid value for --symbol: '" + symbol + "'");
    if (symbol != "walpha" && !(beta > 0.0)) throw InvalidArgument("invalid value for --beta: must be positive");
    if (symbol == "damped" && !(a > 0.0 && b > a)) throw InvalidArgument("invalid value for --A/--B: need B > A > 0");
    if (symbol == "walpha" && !(alpha > n)) throw InvalidArgument("invalid value for --alpha: need alpha > n");
    if (symbol == "walpha" && !(kappa > 0.0)) throw InvalidArgument("invalid value for --kappa: must be positive");
    if (symbol == "table" && table.empty()) throw InvalidArgument("missing --table for the table symbol");
    if (!(tol > 0.0)) throw InvalidArgument("invalid value for --tol: must be positive");
    if (t.empty()) throw InvalidArgument("invalid value for --t: empty grid");
    if (s.empty()) throw InvalidArgument("invalid value for --s: empty list");
    if (K < 1) throw InvalidArgument("invalid value for --K: must be >= 1");
    if (shells < 1) throw InvalidArgument("invalid value for --shells: must be >= 1");
    if (!(T >= 0.0)) throw InvalidArgument("invalid value for --T: must be >= 0");
}

RadialSymbol make_symbol(const RunConfig &config) {
    const GlobalParams params(config.p, config.n);
    if (config.symbol == "taibleson") return taibleson_symbol(params, config.beta);
    if (config.symbol == "damped") return damped_symbol(params, config.beta, config.a, config.b);
    if (config.symbol == "table")
        return symbol_from_table(params, read_table_file(config.table), config.beta, config.c0, config.c1);
    WAlphaSpec spec;
    spec.alpha = config.alpha;
    spec.kappa = config.kappa;
    spec.w = config.w_table.empty() ? WeightFunction::pure_power(params, config.alpha)
                                    : WeightFunction::from_table(read_table_file(config.w_table), config.cw0, config.cw1);
    return walpha_symbol(params, spec, std::min(config.tol, 1e-13));
}

Report execute(const RunConfig &config) {
    config.validate();
    const RadialSymbol symbol = make_symbol(config);
    const std::string &cmd = config.command;
    if (cmd == "spectrum") return spectrum_report(config, symbol);
    if (cmd == "count") return count_report(config, symbol);
    if (cmd == "zeta") return zeta_report(config, symbol);
    if (cmd == "poles") return poles_report(symbol);
    if (cmd == "trace") return trace_report(config, symbol);
    if (cmd == "kernel") return kernel_report(config, symbol);
    if (cmd == "mellin") return mellin_report(config, symbol);
    if (cmd == "verify") return verify_report(config, symbol);
    return growth_report(config, symbol);
}

std::string emit(const Report &report, OutputFormat format) {
    if (format == OutputFormat::csv) return dump_csv(report.csv);
    return dump_json(report.json) + "\n";
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Spectral objects of p-adic Laplacians on the unit ball"};
    app.require_subcommand(1);
    for (const std::string &name : subcommands) app.add_subcommand(name)->fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its entries");

    const std::vector<std::string> single_keys = {"p",  "n",   "symbol", "beta", "A",     "B",      "alpha",
                                                  "kappa", "table", "c0", "c1", "w-table", "cw0", "cw1",
                                                  "t-pow2", "T", "Tmax", "shells", "K", "ordx", "tol",
                                                  "format", "output"};
    std::map<std::string, std::vector<std::string>> raw;
    std::map<std::string, CLI::Option *> options;
    for (const std::string &key : single_keys) options[key] = app.add_option("--" + key, raw[key]);
    options["t"] = app.add_option("--t", raw["t"], "time or comma-separated time grid")->allow_extra_args(false);
    options["s"] = app.add_option("--s", raw["s"], "complex argument re,im (repeatable)")->allow_extra_args(false);
    bool full_space = false;
    options["full"] = app.add_flag("--full", full_space, "kernel: full-space Z(x,t) instead of the ball kernel");

    std::vector<const char *> argv;
    for (const std::string &a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        RunConfig config;
        config.command = app.get_subcommands().front()->get_name();
        if (const char *env = std::getenv(tolerance_env)) config.tol = parse_double(tolerance_env, env);
        if (!config_path.empty()) apply_config_file(config, config_path);
        for (const auto &[key, opt] : options) {
            if (opt->count() == 0) continue;
            if (key == "full") {
                config.full_space = full_space;
            } else {
                apply_setting(config, key, raw[key]);
            }
        }
        const Report report = execute(config);
        const std::string text = emit(report, config.format);
        if (config.output.empty()) {
            out << text;
        } else {
            std::ofstream file(config.output, std::ios::binary);
            if (!file || !(file << text)) {
                err << "error: cannot write output file " << config.output << "\n";
                return exit_usage;
            }
        }
        if (report.declined) {
            err << "declined: " << report.json.value("reason", std::string()) << "\n";
            return exit_domain;
        }
        return report.verification_failed ? exit_verification : exit_ok;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const CertificateViolation &e) {
        err << "certificate violation at shell " << e.shell() << ": " << e.what() << "\n";
        return exit_usage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace padic::cli

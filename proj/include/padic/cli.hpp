#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic/report.hpp"
#include "padic/symbols.hpp"

namespace padic::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_verification = 3;

/// Environment variable that replaces the built-in default tolerance.
inline constexpr const char *tolerance_env = "PADIC_SPECTRAL_TOL";

enum class OutputFormat { json, csv };

struct RunConfig {
    std::string command;
    int p = 2;
    int n = 1;

    std::string symbol = "taibleson";
    double beta = 1.0;
    double a = 1.0;
    double b = 2.0;
    double alpha = 2.0;
    double kappa = 1.0;
    std::string table;
    double c0 = 1.0;
    double c1 = 1.0;
    std::string w_table;
    double cw0 = 1.0;
    double cw1 = 1.0;

    std::vector<double> t = {1.0};
    std::vector<std::complex<double>> s = {{2.0, 0.0}};
    double T = 0.0;
    double t_max = 0.0;
    int shells = 10;
    int K = 3;
    std::string ordx = "inf";
    bool full_space = false;
    double tol = 1e-12;

    OutputFormat format = OutputFormat::json;
    std::string output;

    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

/// Parses `re,im` or a plain real.
std::complex<double> parse_complex(const std::string &text);

/// Builds the configured symbol.
RadialSymbol make_symbol(const RunConfig &config);

/// A computed report: JSON always, CSV rows under the subcommand's fixed schema.
struct Report {
    nlohmann::json json;
    CsvTable csv;
    bool verification_failed = false;
    /// The computation was refused (e.g. no meromorphic continuation); exit code 2.
    bool declined = false;
};

Report execute(const RunConfig &config);

std::string emit(const Report &report, OutputFormat format);

/// Full command-line entry point; args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace padic::cli

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "padic/cli.hpp"
#include "padic/errors.hpp"
#include "padic/heat.hpp"

namespace cli = padic::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "padic-spectral");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse(const Outcome &o) { return nlohmann::json::parse(o.out); }

std::string first_line(const std::string &text) { return text.substr(0, text.find('\n')); }

fs::path scratch(const std::string &name) { return fs::temp_directory_path() / ("padic_cli_test_" + name); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("documented invocations") {
    const Outcome zeta = invoke({"zeta", "--p", "2", "--n", "1", "--symbol", "taibleson", "--beta", "1", "--s", "2,0"});
    REQUIRE(zeta.code == cli::exit_ok);
    const nlohmann::json z = parse(zeta);
    CHECK(std::abs(z["value"].get<double>() - 0.5) <= 1e-12);
    CHECK(z["error_bound"].get<double>() <= 1e-12);

    const Outcome count = invoke({"count", "--p", "2", "--n", "1", "--symbol", "taibleson", "--beta", "1", "--T", "8"});
    REQUIRE(count.code == cli::exit_ok);
    CHECK(parse(count)["count"] == 7);

    const Outcome kernel = invoke({"kernel", "--ordx", "-1", "--t", "1"});
    REQUIRE(kernel.code == cli::exit_ok);
    CHECK(parse(kernel)["value"].get<double>() == 0.0);
    CHECK(parse(kernel)["bound"].get<double>() == 0.0);
}

TEST_CASE("csv schemas") {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
            {{"spectrum", "--shells", "3"}, "m,lambda,multiplicity"},
            {{"count", "--T", "100"}, "T,count"},
            {{"zeta", "--s", "2,0", "--s", "3,1"}, "s_re,s_im,value,value_im,error_bound,shells_used,abscissa"},
            {{"poles"}, "abscissa,spacing,kind"},
            {{"trace", "--t", "0.5,1,2"}, "t,value,bound"},
            {{"kernel", "--ordx", "2", "--t", "1"}, "ordx,t,value,bound"},
            {{"mellin", "--s", "2"}, "s,lhs,rhs,relerr"},
            {{"verify", "--K", "2"}, "check,max_error,certified_bound,pass"},
            {{"estimate-growth"}, "slope,intercept,residual,shells"},
    };
    for (const auto &[args, header] : cases) {
        std::vector<std::string> full = args;
        full.insert(full.end(), {"--format", "csv"});
        const Outcome o = invoke(full);
        INFO(args.front());
        CHECK(o.code == cli::exit_ok);
        CHECK(first_line(o.out) == header);
    }
    const Outcome trace = invoke({"trace", "--t", "0.5,1,2", "--format", "csv"});
    CHECK(std::count(trace.out.begin(), trace.out.end(), '\n') == 4);
}

TEST_CASE("json shapes") {
    const nlohmann::json poles = parse(invoke({"poles"}));
    CHECK(poles.is_object());
    CHECK(poles["abscissa"] == 1.0);
    CHECK(poles["kind"] == "taibleson");
    CHECK(poles["spacing"].get<double>() == doctest::Approx(9.06472028365438762));

    const Outcome verify = invoke({"verify", "--K", "2"});
    CHECK(verify.code == cli::exit_ok);
    const nlohmann::json records = parse(verify);
    REQUIRE(records.is_array());
    for (const nlohmann::json &r : records) {
        CHECK(r.contains("check"));
        CHECK(r.contains("params"));
        CHECK(r.contains("max_error"));
        CHECK(r.contains("certified_bound"));
        CHECK(r["pass"] == true);
    }
    CHECK(parse(invoke({"kernel", "--t", "1,2"})).is_array());
    CHECK(parse(invoke({"kernel", "--t", "1"})).is_object());
    const nlohmann::json trace = parse(invoke({"trace", "--t", "1,2"}));
    CHECK(trace["rows"].size() == 2);
    CHECK(trace["majorant_holds"] == true);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == cli::exit_usage);
    CHECK(invoke({"frobnicate"}).code == cli::exit_usage);
    CHECK(invoke({"zeta", "--p", "4"}).code == cli::exit_usage);
    CHECK(invoke({"zeta", "--tol", "-1"}).code == cli::exit_usage);
    CHECK(invoke({"zeta", "--s", "1,0"}).code == cli::exit_domain);
    CHECK(invoke({"zeta", "--s", "0.5,2"}).code == cli::exit_domain);
    CHECK(invoke({"mellin", "--s", "1"}).code == cli::exit_domain);
    CHECK(invoke({"trace", "--t", "0"}).code == cli::exit_domain);

    const Outcome declined = invoke({"poles", "--symbol", "damped", "--A", "1", "--B", "2"});
    CHECK(declined.code == cli::exit_domain);
    CHECK(parse(declined)["declined"] == true);
    CHECK(declined.err.find("declined") != std::string::npos);

    const Outcome bad = invoke({"zeta", "--symbol", "damped", "--A", "3", "--B", "2"});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.err.find("--A/--B") != std::string::npos);
}

TEST_CASE("certificate violations name the shell") {
    const fs::path table = scratch("table.txt");
    {
        std::ofstream f(table);
        f << "# shell value\n1 2\n\n2 4\n3 100\n";
    }
    const Outcome o = invoke({"zeta", "--symbol", "table", "--table", table.string(), "--c0", "1", "--c1", "2"});
    CHECK(o.code == cli::exit_usage);
    CHECK(o.err.find("shell 3") != std::string::npos);
    fs::remove(table);
}

TEST_CASE("json output round-trips") {
    const Outcome o = invoke({"trace", "--t", "0.1,0.3,1.7", "--p", "3", "--n", "2", "--symbol", "damped", "--A", "0.3",
                              "--B", "1.1"});
    REQUIRE(o.code == cli::exit_ok);
    const nlohmann::json doc = parse(o);
    const double tr = doc["rows"][1]["value"].get<double>();
    const padic::Enclosure direct =
            padic::heat_trace(padic::damped_symbol(padic::GlobalParams(3, 2), 1.0, 0.3, 1.1), 0.3, 1e-12);
    CHECK(tr == direct.value);
    CHECK(padic::dump_json(doc) + "\n" == o.out);
}

TEST_CASE("output is deterministic") {
    for (const std::vector<std::string> &args : std::vector<std::vector<std::string>>{
                 {"verify", "--K", "2", "--p", "3"},
                 {"zeta", "--s", "1.5,4", "--symbol", "walpha", "--alpha", "2.5"},
                 {"mellin", "--s", "2.5", "--format", "csv"}}) {
        CHECK(invoke(args).out == invoke(args).out);
    }
}

TEST_CASE("config file and flag precedence") {
    const fs::path config = scratch("config.json");
    {
        std::ofstream f(config);
        f << R"({"p": 3, "n": 2, "beta": 2, "T": 100, "t": [0.5, 1.0]})";
    }
    const nlohmann::json from_file = parse(invoke({"count", "--config", config.string()}));
    // shells with 3^{2m} <= 100: 8 + 72
    CHECK(from_file["count"] == 80);
    const nlohmann::json overridden = parse(invoke({"count", "--config", config.string(), "--T", "8"}));
    CHECK(overridden["count"] == 0);
    const nlohmann::json grid = parse(invoke({"trace", "--config", config.string()}));
    CHECK(grid["rows"].size() == 2);

    {
        std::ofstream f(config);
        f << R"({"colour": "blue"})";
    }
    const Outcome unknown = invoke({"count", "--config", config.string()});
    CHECK(unknown.code == cli::exit_usage);
    CHECK(unknown.err.find("colour") != std::string::npos);
    fs::remove(config);
    CHECK(invoke({"count", "--config", config.string()}).code == cli::exit_usage);
}

TEST_CASE("tolerance from the environment") {
    ::setenv(cli::tolerance_env, "1e-6", 1);
    const nlohmann::json loose = parse(invoke({"zeta", "--s", "2,0"}));
    const nlohmann::json flagged = parse(invoke({"zeta", "--s", "2,0", "--tol", "1e-12"}));
    ::unsetenv(cli::tolerance_env);
    const nlohmann::json tight = parse(invoke({"zeta", "--s", "2,0"}));
    CHECK(loose["shells_used"].get<int>() < tight["shells_used"].get<int>());
    CHECK(loose["error_bound"].get<double>() <= 1e-6);
    CHECK(flagged["shells_used"] == tight["shells_used"]);

    ::setenv(cli::tolerance_env, "abc", 1);
    CHECK(invoke({"zeta"}).code == cli::exit_usage);
    ::unsetenv(cli::tolerance_env);
}

TEST_CASE("output files") {
    const fs::path target = scratch("out.csv");
    CHECK(invoke({"spectrum", "--shells", "4", "--format", "csv", "--output", target.string()}).code == cli::exit_ok);
    std::ifstream in(target);
    std::string header;
    std::getline(in, header);
    CHECK(header == "m,lambda,multiplicity");
    fs::remove(target);

    const Outcome o = invoke({"spectrum", "--output", "/nonexistent-dir/out.json"});
    CHECK(o.code == cli::exit_usage);
    CHECK(o.err.find("cannot write") != std::string::npos);
}

TEST_CASE("complex arguments") {
    CHECK(cli::parse_complex("2,0") == std::complex<double>(2.0, 0.0));
    CHECK(cli::parse_complex("1.5,-4") == std::complex<double>(1.5, -4.0));
    CHECK(cli::parse_complex("3") == std::complex<double>(3.0, 0.0));
    CHECK_THROWS_AS(cli::parse_complex("1,2,3"), padic::InvalidArgument);
    CHECK_THROWS_AS(cli::parse_complex("x"), padic::InvalidArgument);
}

} // TEST_SUITE

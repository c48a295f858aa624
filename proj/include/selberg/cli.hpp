#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "selberg/params.hpp"

namespace selberg::cli {

enum ExitCode : int {
    kOk = 0,
    kChecksFailed = 1,
    kValidation = 2,
    kNumerical = 3,
    kIo = 4,
};

struct Grid {
    double x_min = 0.0, x_max = 1.0;
    int points = 2;

    std::vector<double> values() const;
};

/// "a:b:n" with n >= 2.
Grid parse_grid(const std::string& text);

struct JobSpec {
    std::string command;
    Params params;
    std::string lambda_text;  // as given, e.g. "1/3"
    std::optional<Grid> grid;
    std::optional<double> x;
    std::optional<int> q, k, nu;
    std::optional<double> mu;
    int L = 20;
    std::string output;  // empty: stdout
    std::string format = "json";
    double tol = 1e-12;
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    std::string level = "quick";
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"selberg", "series", "eval", "dist",
                                               "moments", "asymptotics", "poly", "zeros",
                                               "monodromy", "oracle", "verify"};
    return c;
}

/// Parses flags (and an optional key = value config file) into a JobSpec.
/// Throws PreconditionError on invalid input.
JobSpec parse_args(const std::vector<std::string>& args);

/// Runs the job; the payload goes to spec.output or `out`, messages to `err`.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selberg::cli

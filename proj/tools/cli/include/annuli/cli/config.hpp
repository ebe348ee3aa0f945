#pragma once

#include "annuli/geometry.hpp"
#include "annuli/verify.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace annuli::cli {

enum class Command { Energy, Minimize, Nitsche, Verify, Sweep };
enum class Format { Csv, Json };

/// One swept parameter: PARAM:LO:HI:N with PARAM in {r, R, rstar, Rstar}.
struct SweepAxis {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;

    double at(std::size_t i) const;
};

struct RunConfig {
    Command command = Command::Energy;
    double r = 1.0;
    double R = 2.0;
    double r_star = 1.0;
    double R_star = 2.718281828459045;
    std::size_t grid_n = 1000;
    std::size_t sphere_order = 32;
    std::size_t radial_order = 64;
    std::uint64_t seed = 42;
    Format format = Format::Csv;
    std::string output_path;  // empty: standard output
    Spacing grid_mode = Spacing::UniformT;
    std::vector<SweepAxis> sweep;
    Tolerances tol;

    AnnulusPair pair() const { return {r, R, r_star, R_star}; }
};

/// Bad flags, bad values or a malformed config file. The message is meant
/// for the user as is.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown for --help; carries the rendered help text.
struct HelpRequested {
    std::string text;
};

/// Parses the command line. A --config file is applied first and explicit
/// flags override it. Throws ConfigError or HelpRequested.
RunConfig parse_config(int argc, const char* const* argv);

/// Applies a config file (flat key=value lines or a JSON object) on top of
/// `base`. Diagnostics name the file, the line and the field.
RunConfig apply_config_file(const std::string& path, RunConfig base);
RunConfig apply_config_text(const std::string& text, const std::string& origin, RunConfig base);

/// Parses PARAM:LO:HI:N.
SweepAxis parse_sweep(const std::string& spec);

/// Checks positivity and the pair; throws ConfigError.
void validate(const RunConfig& cfg);

SuiteConfig suite_config(const RunConfig& cfg);

std::string to_string(Command c);

}  // namespace annuli::cli

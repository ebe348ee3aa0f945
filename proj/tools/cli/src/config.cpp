#include "annuli/cli/config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace annuli::cli {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& field, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto [p, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || p != last || v.empty())
        throw ConfigError("field '" + field + "': expected a number, got '" + v + "'");
    return out;
}

std::uint64_t to_uint(const std::string& field, const std::string& v) {
    std::uint64_t out = 0;
    const char* last = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), last, out);
    if (ec != std::errc() || p != last || v.empty())
        throw ConfigError("field '" + field + "': expected a nonnegative integer, got '" + v + "'");
    return out;
}

Command to_command(const std::string& v) {
    static const std::map<std::string, Command> names{{"energy", Command::Energy},
                                                      {"minimize", Command::Minimize},
                                                      {"nitsche", Command::Nitsche},
                                                      {"verify", Command::Verify},
                                                      {"sweep", Command::Sweep}};
    const auto it = names.find(v);
    if (it == names.end()) throw ConfigError("field 'command': unknown command '" + v + "'");
    return it->second;
}

Format to_format(const std::string& v) {
    if (v == "csv") return Format::Csv;
    if (v == "json") return Format::Json;
    throw ConfigError("field 'format': expected csv or json, got '" + v + "'");
}

Spacing to_spacing(const std::string& v) {
    if (v == "t" || v == "uniform-t") return Spacing::UniformT;
    if (v == "inverse" || v == "uniform-inverse-t") return Spacing::UniformInverseT;
    throw ConfigError("field 'grid_mode': expected uniform-t or uniform-inverse-t, got '" + v + "'");
}

Tolerances uniform_tolerances(double t) {
    return {t, t, t, t, t, t};
}

// Keys accepted in config files. Dashes and underscores are interchangeable.
const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"command", [](RunConfig& c, const std::string& v) { c.command = to_command(v); }},
        {"r", [](RunConfig& c, const std::string& v) { c.r = to_double("r", v); }},
        {"R", [](RunConfig& c, const std::string& v) { c.R = to_double("R", v); }},
        {"rstar", [](RunConfig& c, const std::string& v) { c.r_star = to_double("rstar", v); }},
        {"Rstar", [](RunConfig& c, const std::string& v) { c.R_star = to_double("Rstar", v); }},
        {"grid_n", [](RunConfig& c, const std::string& v) { c.grid_n = to_uint("grid_n", v); }},
        {"sphere_order",
         [](RunConfig& c, const std::string& v) { c.sphere_order = to_uint("sphere_order", v); }},
        {"radial_order",
         [](RunConfig& c, const std::string& v) { c.radial_order = to_uint("radial_order", v); }},
        {"seed", [](RunConfig& c, const std::string& v) { c.seed = to_uint("seed", v); }},
        {"format", [](RunConfig& c, const std::string& v) { c.format = to_format(v); }},
        {"output", [](RunConfig& c, const std::string& v) { c.output_path = v; }},
        {"grid_mode", [](RunConfig& c, const std::string& v) { c.grid_mode = to_spacing(v); }},
        {"sweep", [](RunConfig& c, const std::string& v) { c.sweep.push_back(parse_sweep(v)); }},
        {"tolerance",
         [](RunConfig& c, const std::string& v) {
             const double t = to_double("tolerance", v);
             c.tol = uniform_tolerances(t);
         }},
        {"tol_closed_form",
         [](RunConfig& c, const std::string& v) { c.tol.closed_form = to_double("tol_closed_form", v); }},
        {"tol_energy",
         [](RunConfig& c, const std::string& v) { c.tol.energy_rel = to_double("tol_energy", v); }},
        {"tol_residual",
         [](RunConfig& c, const std::string& v) { c.tol.residual = to_double("tol_residual", v); }},
        {"tol_bound", [](RunConfig& c, const std::string& v) { c.tol.bound = to_double("tol_bound", v); }},
        {"tol_solver", [](RunConfig& c, const std::string& v) { c.tol.solver = to_double("tol_solver", v); }},
        {"tol_identity",
         [](RunConfig& c, const std::string& v) { c.tol.identity_rel = to_double("tol_identity", v); }},
    };
    return table;
}

std::string normalize_key(std::string k) {
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(normalize_key(key));
    if (it == table.end()) throw ConfigError("unknown field '" + key + "'");
    it->second(c, value);
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ConfigError("field '" + key + "': expected a string or number");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line of the first occurrence of "key" in a JSON text, for diagnostics.
std::size_t json_key_line(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 0 : line_of(text, pos);
}

RunConfig apply_json(const std::string& text, const std::string& origin, RunConfig c) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) throw ConfigError(origin + ":1: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        try {
            if (normalize_key(key) == "sweep" && value.is_array()) {
                for (const auto& s : value) apply_key(c, key, json_scalar(s, key));
            } else {
                apply_key(c, key, json_scalar(value, key));
            }
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(json_key_line(text, key)) + ": " + e.what());
        }
    }
    return c;
}

RunConfig apply_flat(const std::string& text, const std::string& origin, RunConfig c) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        const std::string where = origin + ":" + std::to_string(n) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected key=value, got '" + s + "'");
        try {
            apply_key(c, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return c;
}

}  // namespace

double SweepAxis::at(std::size_t i) const {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

SweepAxis parse_sweep(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw ConfigError("sweep '" + spec + "': expected PARAM:LO:HI:N");
    SweepAxis a;
    a.param = parts[0];
    if (a.param != "r" && a.param != "R" && a.param != "rstar" && a.param != "Rstar")
        throw ConfigError("sweep '" + spec + "': parameter must be one of r, R, rstar, Rstar");
    a.lo = to_double("sweep", parts[1]);
    a.hi = to_double("sweep", parts[2]);
    a.n = to_uint("sweep", parts[3]);
    if (a.n == 0 || a.hi < a.lo || (a.n > 1 && a.hi == a.lo))
        throw ConfigError("sweep '" + spec + "': empty range");
    return a;
}

RunConfig apply_config_text(const std::string& text, const std::string& origin, RunConfig base) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return apply_json(text, origin, base);
    return apply_flat(text, origin, base);
}

RunConfig apply_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return apply_config_text(buf.str(), path, std::move(base));
}

void validate(const RunConfig& c) {
    for (auto [name, v] : {std::pair{"r", c.r}, {"R", c.R}, {"rstar", c.r_star}, {"Rstar", c.R_star}})
        if (!(v > 0.0)) throw ConfigError(std::string("field '") + name + "': must be positive");
    if (c.grid_n < 2) throw ConfigError("field 'grid_n': must be at least 2");
    if (c.sphere_order < 4) throw ConfigError("field 'sphere_order': must be at least 4");
    if (c.radial_order < 4) throw ConfigError("field 'radial_order': must be at least 4");
    if (c.sweep.size() > 2) throw ConfigError("at most two --sweep axes");
    if (c.command == Command::Sweep && c.sweep.empty())
        throw ConfigError("sweep needs at least one --sweep PARAM:LO:HI:N");
    for (double t : {c.tol.closed_form, c.tol.energy_rel, c.tol.residual, c.tol.bound, c.tol.solver,
                     c.tol.identity_rel})
        if (!(t >= 0.0)) throw ConfigError("tolerances must be nonnegative");
    try {
        (void)c.pair();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Weighted Dirichlet energy of maps between spherical shells"};
    app.set_help_flag("-h,--help", "Show this help");
    app.get_formatter()->column_width(34);

    std::string command;
    std::optional<double> r, R, rs, Rs;
    std::optional<std::size_t> grid_n, sphere_order, radial_order;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format, output, config_path, grid_mode;
    std::optional<double> tolerance;
    std::vector<std::string> sweeps;

    app.add_option("command", command, "energy | minimize | nitsche | verify | sweep")
        ->required()
        ->check(CLI::IsMember({"energy", "minimize", "nitsche", "verify", "sweep"}));
    app.add_option("--r", r, "Inner radius of the domain");
    app.add_option("--R", R, "Outer radius of the domain");
    app.add_option("--rstar", rs, "Inner radius of the target");
    app.add_option("--Rstar", Rs, "Outer radius of the target");
    app.add_option("--grid-n", grid_n, "Radial grid intervals (default 1000)");
    app.add_option("--grid-mode", grid_mode, "uniform-t | uniform-inverse-t");
    app.add_option("--sphere-order", sphere_order, "Sphere quadrature order (default 32)");
    app.add_option("--radial-order", radial_order, "Radial Gauss-Legendre order (default 64)");
    app.add_option("--seed", seed, "Random seed (default 42)");
    app.add_option("--format", format, "csv | json (default csv)");
    app.add_option("--output,-o", output, "Output file (default standard output)");
    app.add_option("--config", config_path, "key=value or JSON config file");
    app.add_option("--sweep", sweeps, "PARAM:LO:HI:N, up to two")->take_all();
    app.add_option("--tolerance", tolerance, "Override every verify tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig c;
    if (config_path) c = apply_config_file(*config_path, c);
    c.command = to_command(command);
    if (r) c.r = *r;
    if (R) c.R = *R;
    if (rs) c.r_star = *rs;
    if (Rs) c.R_star = *Rs;
    if (grid_n) c.grid_n = *grid_n;
    if (sphere_order) c.sphere_order = *sphere_order;
    if (radial_order) c.radial_order = *radial_order;
    if (seed) c.seed = *seed;
    if (format) c.format = to_format(*format);
    if (output) c.output_path = *output;
    if (grid_mode) c.grid_mode = to_spacing(*grid_mode);
    if (!sweeps.empty()) {
        c.sweep.clear();
        for (const auto& s : sweeps) c.sweep.push_back(parse_sweep(s));
    }
    if (tolerance) c.tol = uniform_tolerances(*tolerance);
    validate(c);
    return c;
}

SuiteConfig suite_config(const RunConfig& c) {
    SuiteConfig s;
    s.seed = c.seed;
    s.pair = c.pair();
    s.orders = {c.radial_order, c.sphere_order};
    s.grid_n = c.grid_n;
    s.tol = c.tol;
    return s;
}

std::string to_string(Command c) {
    switch (c) {
        case Command::Energy: return "energy";
        case Command::Minimize: return "minimize";
        case Command::Nitsche: return "nitsche";
        case Command::Verify: return "verify";
        case Command::Sweep: return "sweep";
    }
    return "unknown";
}

}  // namespace annuli::cli

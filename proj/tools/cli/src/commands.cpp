#include "annuli/cli/commands.hpp"

#include "annuli/energy.hpp"
#include "annuli/maps.hpp"
#include "annuli/nitsche.hpp"
#include "annuli/variational.hpp"
#include "annuli/verify.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace annuli::cli {

namespace {

Table scalar_table(std::string name, std::vector<std::string> columns, std::vector<Cell> row) {
    Table t{std::move(name), std::move(columns), {}, true};
    t.add_row(std::move(row));
    return t;
}

Cell optional_cell(const std::optional<double>& v) {
    if (v) return *v;
    return std::monostate{};
}

AnnulusPair sweep_pair(const RunConfig& base, const std::vector<std::pair<std::string, double>>& vals) {
    RunConfig c = base;
    for (const auto& [p, v] : vals) {
        if (p == "r") c.r = v;
        else if (p == "R") c.R = v;
        else if (p == "rstar") c.r_star = v;
        else if (p == "Rstar") c.R_star = v;
    }
    try {
        validate(c);
    } catch (const ConfigError& e) {
        std::ostringstream os;
        os.precision(12);
        os << "sweep point";
        for (const auto& [p, v] : vals) os << " " << p << "=" << v;
        throw ConfigError(os.str() + ": " + e.what());
    }
    return c.pair();
}

}  // namespace

CommandResult cmd_energy(const RunConfig& cfg) {
    const AnnulusPair pair = cfg.pair();
    const QuadratureOrders orders{cfg.radial_order, cfg.sphere_order};
    const auto identity = MobiusTransform::identity();
    const GeneralizedRadialMap f1{exp_profile_from_boundary(pair, Orientation::Increasing), identity, pair.domain};
    const GeneralizedRadialMap f2{exp_profile_from_boundary(pair, Orientation::Decreasing), identity, pair.domain};
    const EnergyReport e1 = weighted_energy(f1, pair, orders, true);
    const EnergyReport e2 = weighted_energy(f2, pair, orders, true);
    const double d1 = e1.refinement_delta.value_or(0.0);
    const double d2 = e2.refinement_delta.value_or(0.0);
    const double analytic = analytic_min_weighted_energy(pair);

    CommandResult res;
    res.doc.tables.push_back(scalar_table("energy", {"analytic", "h1_numeric", "h2_numeric", "delta"},
                                          {analytic, e1.value, e2.value, std::abs(d1) >= std::abs(d2) ? d1 : d2}));
    res.summary = "energy: analytic minimum " + format_number(analytic);
    return res;
}

CommandResult cmd_minimize(const RunConfig& cfg) {
    const AnnulusPair pair = cfg.pair();
    const RadialGrid grid = make_radial_grid(pair.domain, cfg.grid_n, cfg.grid_mode);
    const DiscreteSolution sol = minimize_reduced_energy(pair, grid);
    const RadialProfile closed = exp_profile_from_boundary(pair, Orientation::Increasing);

    Table profile{"profile", {"t", "H_discrete", "H_closed_form", "abs_error", "el_residual"}, {}, false};
    const auto& values = std::get<SampledProfile>(sol.profile.variant()).values;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const double t = grid.nodes[i];
        const double hc = closed.value(t);
        const bool interior = i > 0 && i + 1 < grid.nodes.size();
        Cell residual = std::monostate{};
        if (interior) residual = el_residual(sol.profile, t);
        profile.add_row({t, values[i], hc, std::abs(values[i] - hc), residual});
    }
    const double analytic = analytic_min_weighted_energy(pair);

    CommandResult res;
    res.doc.tables.push_back(std::move(profile));
    res.doc.tables.push_back(
        scalar_table("summary", {"energy", "analytic", "gap"}, {sol.energy, analytic, sol.energy - analytic}));
    res.summary = "minimize: sup error " + format_number(sol.sup_error_vs_closed_form.value_or(0.0));
    return res;
}

CommandResult cmd_nitsche(const RunConfig& cfg) {
    const AnnulusPair pair = cfg.pair();
    const NitscheVerdict v = nitsche_condition(pair);
    std::optional<double> x;
    if (v.admissible) x = analytic_dirichlet_energy_radial(pair);

    CommandResult res;
    res.doc.tables.push_back(scalar_table(
        "nitsche", {"ratio", "threshold", "margin", "admissible", "dirichlet_energy", "lower_bound"},
        {v.ratio, v.threshold, v.margin, v.admissible, optional_cell(x), dirichlet_lower_bound(pair)}));
    res.summary = std::string("nitsche: ") + (v.admissible ? "admissible" : "not admissible");
    return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
    const SuiteReport report = run_suite(suite_config(cfg));

    std::size_t failed = 0;
    Table checks{"checks", {"name", "anchor", "kind", "passed", "observed", "expected", "tolerance", "detail"}, {}, false};
    for (const auto& c : report.results) {
        if (!c.passed) ++failed;
        checks.add_row({c.name, c.anchor, std::string(c.kind == CheckResult::Kind::Equality ? "equality" : "bound"),
                        c.passed, c.observed, c.expected, c.tolerance, c.detail});
    }
    Table coverage{"coverage", {"anchor"}, {}, false};
    for (const auto& a : report.coverage()) coverage.add_row({a});

    CommandResult res;
    res.doc.tables.push_back(scalar_table(
        "summary", {"seed", "passed", "checks", "failed"},
        {static_cast<std::int64_t>(report.seed), failed == 0,
         static_cast<std::int64_t>(report.results.size()), static_cast<std::int64_t>(failed)}));
    res.doc.tables.push_back(std::move(checks));
    res.doc.tables.push_back(std::move(coverage));
    res.exit_code = failed == 0 ? 0 : 1;

    std::ostringstream os;
    os.precision(3);
    os << "verify: " << report.results.size() - failed << "/" << report.results.size()
       << " checks passed in " << std::fixed << report.wall_time.count() << " s";
    res.summary = os.str();
    return res;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    if (cfg.sweep.empty() || cfg.sweep.size() > 2) throw ConfigError("sweep needs one or two axes");
    const SweepAxis& a = cfg.sweep[0];
    const SweepAxis inner = cfg.sweep.size() == 2 ? cfg.sweep[1] : SweepAxis{"", 0.0, 0.0, 1};

    Table points{"points",
                 {"r", "R", "rstar", "Rstar", "analytic", "ratio", "threshold", "margin", "admissible",
                  "dirichlet_energy", "lower_bound"},
                 {},
                 false};
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t j = 0; j < inner.n; ++j) {
            std::vector<std::pair<std::string, double>> vals{{a.param, a.at(i)}};
            if (!inner.param.empty()) vals.emplace_back(inner.param, inner.at(j));
            const AnnulusPair p = sweep_pair(cfg, vals);
            const NitscheVerdict v = nitsche_condition(p);
            std::optional<double> x;
            if (v.admissible) x = analytic_dirichlet_energy_radial(p);
            points.add_row({p.r(), p.R(), p.r_star(), p.R_star(), analytic_min_weighted_energy(p), v.ratio,
                            v.threshold, v.margin, v.admissible, optional_cell(x), dirichlet_lower_bound(p)});
        }
    }
    CommandResult res;
    res.summary = "sweep: " + std::to_string(points.rows.size()) + " points";
    res.doc.tables.push_back(std::move(points));
    return res;
}

CommandResult run_command(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Energy: return cmd_energy(cfg);
        case Command::Minimize: return cmd_minimize(cfg);
        case Command::Nitsche: return cmd_nitsche(cfg);
        case Command::Verify: return cmd_verify(cfg);
        case Command::Sweep: return cmd_sweep(cfg);
    }
    throw ConfigError("unknown command");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_config(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CommandResult res;
    try {
        res = run_command(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << to_string(cfg.command) << " failed: " << e.what() << "\n";
        return 1;
    }

    auto emit = [&](std::ostream& os) {
        if (cfg.format == Format::Json) write_json(os, res.doc);
        else write_csv(os, res.doc);
    };
    if (cfg.output_path.empty()) {
        emit(out);
    } else {
        std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write '" << cfg.output_path << "'\n";
            return 1;
        }
        emit(file);
        if (!file) {
            err << "error: write to '" << cfg.output_path << "' failed\n";
            return 1;
        }
    }
    err << res.summary << "\n";
    return res.exit_code;
}

}  // namespace annuli::cli

#include "annuli/verify.hpp"

#include "annuli/energy.hpp"
#include "annuli/maps.hpp"
#include "annuli/nitsche.hpp"
#include "annuli/quadrature.hpp"
#include "annuli/sphere_maps.hpp"
#include "annuli/variational.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace annuli {

namespace {

constexpr double kPi = std::numbers::pi;

namespace anchor {
constexpr const char* kMinimum = "minimal-energy-value";
constexpr const char* kLowerBound = "weighted-lower-bound";
constexpr const char* kMinimizerPair = "minimizer-pair-equal-energy";
constexpr const char* kDiscrete = "discrete-minimizer-convergence";
constexpr const char* kInversion = "inversion-invariance";
constexpr const char* kGram = "gram-determinant-equality";
constexpr const char* kSphere = "sharp-sphere-inequality";
constexpr const char* kResiduals = "euler-lagrange-residuals";
constexpr const char* kNitsche = "nitsche-equivalence";
constexpr const char* kRadialDirichlet = "radial-dirichlet-energy";
constexpr const char* kDirichletBound = "dirichlet-lower-bound";
constexpr const char* kSolvers = "solver-agreement";
}  // namespace anchor

// One stream per check family.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string describe(const AnnulusPair& p) {
    std::ostringstream os;
    os.precision(12);
    os << "(" << p.r() << ", " << p.R() << ", " << p.r_star() << ", " << p.R_star() << ")";
    return os.str();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double sup_diff(const RadialProfile& a, const RadialProfile& b, const std::vector<double>& nodes) {
    double worst = 0.0;
    for (double t : nodes) worst = std::max(worst, std::abs(a.value(t) - b.value(t)));
    return worst;
}

GeneralizedRadialMap radial_map(const AnnulusPair& pair, Orientation o, MobiusTransform t) {
    return {exp_profile_from_boundary(pair, o), t, pair.domain};
}

}  // namespace

CheckResult make_equality(std::string name, std::string anchor, double observed, double expected,
                          double tolerance, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = CheckResult::Kind::Equality;
    c.observed = observed;
    c.expected = expected;
    c.tolerance = tolerance;
    c.passed = std::abs(observed - expected) <= tolerance;
    c.detail = std::move(detail);
    return c;
}

CheckResult make_lower_bound(std::string name, std::string anchor, double observed, double bound,
                             double tolerance, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = CheckResult::Kind::LowerBound;
    c.observed = observed;
    c.expected = bound;
    c.tolerance = tolerance;
    c.passed = observed >= bound - tolerance;
    c.detail = std::move(detail);
    return c;
}

bool SuiteReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> SuiteReport::coverage() const {
    std::vector<std::string> out;
    for (const auto& c : results)
        if (std::find(out.begin(), out.end(), c.anchor) == out.end()) out.push_back(c.anchor);
    return out;
}

AnnulusPair random_pair(Rng& rng, double lo, double hi) {
    auto ordered = [&] {
        for (;;) {
            const double a = rng.log_uniform(lo, hi);
            const double b = rng.log_uniform(lo, hi);
            if (a < b) return std::pair{a, b};
        }
    };
    const auto [r, R] = ordered();
    const auto [rs, Rs] = ordered();
    return {r, R, rs, Rs};
}

AnnulusPair random_admissible_pair(Rng& rng, double lo, double hi) {
    for (;;) {
        AnnulusPair p = random_pair(rng, lo, hi);
        if (nitsche_condition(p).admissible) return p;
    }
}

AnnulusPair random_moderate_pair(Rng& rng) {
    const double r = rng.uniform(0.5, 2.0);
    const double R = r * rng.uniform(1.2, 3.0);
    const double rs = rng.uniform(0.5, 2.0);
    const double Rs = rs * rng.uniform(1.2, 3.0);
    return {r, R, rs, Rs};
}

std::vector<CheckResult> check_minimum(const AnnulusPair& pair, std::size_t n_competitors,
                                        std::uint64_t seed, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const double fmin = analytic_min_weighted_energy(pair);
    const double tol_e = cfg.tol.energy_rel * fmin;
    const std::string where = " for pair " + describe(pair);
    Rng rng(derive_seed(seed, 1));

    // (a) both stationary profiles, identity and random rotations
    std::vector<MobiusTransform> rotations{MobiusTransform::identity()};
    for (int i = 0; i < 3; ++i) rotations.push_back(random_mobius(rng));
    double worst_h1 = fmin, worst_h2 = fmin, worst_pair = 0.0;
    for (const auto& T : rotations) {
        const double e1 = weighted_energy(radial_map(pair, Orientation::Increasing, T), pair, cfg.orders).value;
        const double e2 = weighted_energy(radial_map(pair, Orientation::Decreasing, T), pair, cfg.orders).value;
        if (std::abs(e1 - fmin) >= std::abs(worst_h1 - fmin)) worst_h1 = e1;
        if (std::abs(e2 - fmin) >= std::abs(worst_h2 - fmin)) worst_h2 = e2;
        worst_pair = std::max(worst_pair, std::abs(e1 - e2));
    }
    out.push_back(make_equality("minimum.h1_energy", anchor::kMinimum, worst_h1, fmin, tol_e,
                                "worst of 4 rotations" + where));
    out.push_back(make_equality("minimum.h2_energy", anchor::kMinimum, worst_h2, fmin, tol_e,
                                "worst of 4 rotations" + where));
    out.push_back(make_equality("minimum.h1_h2_equal", anchor::kMinimizerPair, worst_pair, 0.0,
                                tol_e, "max |F[f1] - F[f2]| over rotations"));

    // (b) admissible competitors, including the minimizer itself
    if (!pair.target.flat()) {
        const SampledMap self = make_competitor(pair, CompetitorSpec{});
        const double e_self = weighted_energy(self, pair, cfg.competitor_orders).value;
        out.push_back(make_equality("minimum.self_competitor", anchor::kMinimum, e_self, fmin, tol_e,
                                    "unperturbed competitor, finite differences"));

        double lowest = std::numeric_limits<double>::infinity();
        double smallest_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_competitors; ++i) {
            CompetitorSpec spec = random_competitor_spec(rng);
            const double e = weighted_energy(make_competitor(pair, spec), pair, cfg.competitor_orders).value;
            lowest = std::min(lowest, e);
            smallest_gap = std::min(smallest_gap, e - e_self);
        }
        std::ostringstream d;
        d.precision(6);
        d << n_competitors << " competitors; smallest gap over the unperturbed map " << smallest_gap;
        out.push_back(make_lower_bound("minimum.competitor_bound", anchor::kLowerBound, lowest, fmin,
                                       cfg.tol.bound, d.str()));

        const RadialGrid g = make_radial_grid(pair.domain, 400, Spacing::UniformT);
        const RadialProfile h1 = exp_profile_from_boundary(pair, Orientation::Increasing);
        double lowest_1d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_competitors; ++i) {
            const double amp = rng.uniform(-0.3, 0.3);
            const int mode = 1 + static_cast<int>(rng.uniform() * 4.0);
            const RadialProfile p = perturbed_profile(h1, g, amp, mode, rng.next());
            lowest_1d = std::min(lowest_1d, reduced_energy(p, pair.domain, cfg.orders.radial));
        }
        out.push_back(make_lower_bound("minimum.radial_bound", anchor::kLowerBound, lowest_1d, fmin,
                                       cfg.tol.bound, "perturbed radial profiles, reduced functional"));
    }

    // (c) discrete minimizer under refinement
    const std::size_t n = std::max<std::size_t>(cfg.grid_n, 8);
    double prev_gap = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double final_energy = 0.0;
    for (std::size_t m : {n / 4, n / 2, n}) {
        const auto sol = minimize_reduced_energy(pair, make_radial_grid(pair.domain, m, Spacing::UniformT));
        const double gap = sol.energy - fmin;
        if (gap > prev_gap) monotone = false;
        prev_gap = gap;
        final_energy = sol.energy;
    }
    out.push_back(make_equality("minimum.discrete_energy", anchor::kDiscrete, final_energy, fmin,
                                cfg.tol.solver * fmin, "n = " + std::to_string(n) + ", relative"));
    out.push_back(make_lower_bound("minimum.discrete_above_min", anchor::kDiscrete, final_energy,
                                   fmin, cfg.tol.closed_form * fmin, "discrete energy is an upper bound"));
    out.push_back(make_equality("minimum.discrete_monotone", anchor::kDiscrete, monotone ? 0.0 : 1.0,
                                0.0, 0.0, "gap decreases for n/4, n/2, n"));
    return out;
}

std::vector<CheckResult> check_inversion_invariance(const AnnulusPair& pair, std::size_t n_maps,
                                                    std::uint64_t seed, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Rng rng(derive_seed(seed, 2));
    const std::vector<double> scales{0.5, 1.0, pair.r_star() * pair.R_star()};

    std::vector<double> worst(scales.size(), 0.0);
    for (std::size_t i = 0; i < n_maps; ++i) {
        CompetitorSpec spec = random_competitor_spec(rng);
        spec.rotation = random_mobius(rng);
        const SampledMap f = make_competitor(pair, spec);
        const double ef = weighted_energy(f, pair, cfg.competitor_orders).value;
        for (std::size_t k = 0; k < scales.size(); ++k) {
            const double a = scales[k];
            const AnnulusPair inv(pair.domain, Annulus(a / pair.R_star(), a / pair.r_star()));
            const double eg = weighted_energy(inversion_transform(f, a), inv, cfg.competitor_orders).value;
            worst[k] = std::max(worst[k], rel_diff(eg, ef));
        }
    }
    const char* labels[] = {"a_half", "a_one", "a_rR"};
    for (std::size_t k = 0; k < scales.size(); ++k)
        out.push_back(make_equality(std::string("inversion.") + labels[k], anchor::kInversion, worst[k],
                                    0.0, 2.0 * cfg.tol.energy_rel,
                                    "max relative change over " + std::to_string(n_maps) + " maps"));

    // H1 inverted with a = r* R* is the H2 map
    const auto f1 = radial_map(pair, Orientation::Increasing, MobiusTransform::identity());
    const auto f2 = radial_map(pair, Orientation::Decreasing, MobiusTransform::identity());
    const double a = pair.r_star() * pair.R_star();
    const double e_inv = weighted_energy(inversion_transform(f1, a), pair, cfg.orders).value;
    const double e2 = weighted_energy(f2, pair, cfg.orders).value;
    out.push_back(make_equality("inversion.h1_to_h2", anchor::kInversion, rel_diff(e_inv, e2), 0.0,
                                cfg.tol.identity_rel, "relative"));
    return out;
}

std::vector<CheckResult> check_sphere_inequality(std::size_t n_transforms,
                                                 std::size_t n_perturbations,
                                                 const std::vector<double>& t_values,
                                                 std::uint64_t seed, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Rng rng(derive_seed(seed, 3));
    const SphericalQuadrature quad = make_sphere_quadrature(cfg.orders.sphere);
    const double eight_pi = 8.0 * kPi;

    out.push_back(make_equality("sphere.identity", anchor::kSphere,
                                sphere_inequality_integral(MobiusTransform::identity(), 1.0, quad),
                                eight_pi, cfg.tol.closed_form, "t = 1"));

    double worst = eight_pi, worst_gram = 4.0 * kPi;
    for (std::size_t i = 0; i < n_transforms; ++i) {
        const MobiusTransform T = random_mobius(rng);
        for (double t : t_values) {
            const double v = sphere_inequality_integral(T, t, quad);
            if (std::abs(v - eight_pi) > std::abs(worst - eight_pi)) worst = v;
            const double g = gram_integral(T, t, quad);
            if (std::abs(g - 4.0 * kPi) > std::abs(worst_gram - 4.0 * kPi)) worst_gram = g;
        }
    }
    out.push_back(make_equality("sphere.mobius", anchor::kSphere, worst, eight_pi, cfg.tol.closed_form,
                                "worst of " + std::to_string(n_transforms) + " transforms"));
    out.push_back(make_equality("sphere.gram", anchor::kGram, worst_gram, 4.0 * kPi,
                                cfg.tol.closed_form, "Gram-determinant integral"));

    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_perturbations; ++i) {
        const Vec3 axis = rng.unit_vector().vec();
        const double eps = rng.uniform(0.1, 0.5);
        const MobiusTransform T = random_mobius(rng);
        const double t = t_values.empty() ? 1.0 : t_values[i % t_values.size()];
        const VectorField s = [axis, eps, T](const Vec3& x) {
            const Vec3 eta = x.normalized();
            const Vec3 bent = (eta + eps * eta.dot(axis) * axis).normalized();
            return mobius_apply(T, SpherePoint::normalized(bent)).vec();
        };
        lowest = std::min(lowest, sphere_inequality_integral(s, t, quad));
    }
    // Strict inequality: the smallest value must clear 8 pi by more than the slack.
    out.push_back(make_lower_bound("sphere.perturbed_strict", anchor::kSphere, lowest,
                                   eight_pi + cfg.tol.bound, 0.0,
                                   "smallest of " + std::to_string(n_perturbations) +
                                       " non-conformal maps"));
    return out;
}

std::vector<CheckResult> check_residuals(std::uint64_t seed, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Rng rng(derive_seed(seed, 4));
    const double tol = cfg.tol.residual;

    double el = 0.0, wh = 0.0, mom = 0.0;
    auto scan = [&](const RadialProfile& h, double lo, double hi) {
        for (int i = 0; i < 100; ++i) {
            const double t = lo + (hi - lo) * (i + 0.5) / 100.0;
            el = std::max(el, std::abs(el_residual(h, t)));
            wh = std::max(wh, std::abs(weighted_harmonic_residual(h, t)));
            mom = std::max(mom, std::abs(momentum_residual(h, t)));
        }
    };
    scan(RadialProfile::exponential(1.0, 0.0), 0.5, 3.0);
    for (int k = 0; k < 20; ++k) {
        const double a = rng.uniform(0.5, 3.0);
        const double b = rng.uniform(-2.0, 2.0);
        scan(RadialProfile::exponential(a, b), 1.0, 2.0);
    }
    out.push_back(make_equality("residual.euler_lagrange", anchor::kResiduals, el, 0.0, tol,
                                "exponential family and H = 1"));
    out.push_back(make_equality("residual.weighted_harmonic", anchor::kResiduals, wh, 0.0, tol,
                                "exponential family and H = 1"));
    out.push_back(make_equality("residual.momentum", anchor::kResiduals, mom, 0.0, tol,
                                "exponential family and H = 1"));

    double lap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const AnnulusPair p = random_admissible_pair(rng, 0.5, 2.0);
        const RadialProfile h = harmonic_radial_bvp(p);
        for (int i = 0; i < 100; ++i) {
            const double t = p.r() + p.domain.width() * (i + 0.5) / 100.0;
            lap = std::max(lap, std::abs(laplacian_coefficient(h, t)));
        }
    }
    out.push_back(make_equality("residual.laplacian", anchor::kResiduals, lap, 0.0, tol,
                                "radial harmonic boundary value profiles"));
    return out;
}

std::vector<CheckResult> check_harmonic(std::uint64_t pairs_seed, std::size_t n_pairs,
                                        const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Rng rng(derive_seed(pairs_seed, 5));

    std::size_t mismatches = 0, admissible = 0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const AnnulusPair p = random_pair(rng);
        const bool a = nitsche_condition(p).admissible;
        admissible += a ? 1 : 0;
        if (a != harmonic_profile_monotone(p)) ++mismatches;
    }
    out.push_back(make_equality("harmonic.nitsche_equivalence", anchor::kNitsche,
                                static_cast<double>(mismatches), 0.0, 0.0,
                                std::to_string(n_pairs) + " pairs, " + std::to_string(admissible) +
                                    " admissible"));

    double worst_rel = 0.0, smallest_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cfg.n_energy_pairs; ++i) {
        const AnnulusPair p = random_admissible_pair(rng);
        const GeneralizedRadialMap h{harmonic_radial_bvp(p), MobiusTransform::identity(), p.domain};
        const double x = analytic_dirichlet_energy_radial(p);
        const double numeric = dirichlet_energy(h, p.domain, cfg.orders).value;
        worst_rel = std::max(worst_rel, rel_diff(numeric, x));
        smallest_gap = std::min(smallest_gap, (x - dirichlet_lower_bound(p)) / x);
    }
    out.push_back(make_equality("harmonic.dirichlet_energy", anchor::kRadialDirichlet, worst_rel, 0.0,
                                cfg.tol.energy_rel,
                                "relative, " + std::to_string(cfg.n_energy_pairs) + " admissible pairs"));
    out.push_back(make_lower_bound("harmonic.bound_below_radial", anchor::kDirichletBound,
                                   smallest_gap, cfg.tol.bound, 0.0,
                                   "smallest relative gap (X - Y) / X"));

    const AnnulusPair spot(1.0, 2.0, 1.0, 1.2);
    out.push_back(make_equality("harmonic.spot_value", anchor::kRadialDirichlet,
                                analytic_dirichlet_energy_radial(spot), 4.0 * kPi * 17.0 / 7.0,
                                cfg.tol.closed_form, "pair (1, 2, 1, 1.2)"));

    // Dirichlet energy of admissible competitors stays above the lower bound.
    const AnnulusPair& base = cfg.pair;
    if (!base.target.flat()) {
        const double y = dirichlet_lower_bound(base);
        double lowest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 10; ++i) {
            const SampledMap f = make_competitor(base, random_competitor_spec(rng));
            lowest = std::min(lowest, dirichlet_energy(f, base.domain, cfg.competitor_orders).value);
        }
        out.push_back(make_lower_bound("harmonic.competitor_dirichlet", anchor::kDirichletBound, lowest,
                                       y, cfg.tol.bound, "10 competitors on " + describe(base)));
    }
    return out;
}

std::vector<CheckResult> check_solvers(std::uint64_t seed, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Rng rng(derive_seed(seed, 6));

    double closed_vs_shoot = 0.0, closed_vs_discrete = 0.0, shoot_vs_discrete = 0.0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cfg.n_oracle_pairs; ++i) {
        const AnnulusPair p = random_moderate_pair(rng);
        const RadialProfile h1 = exp_profile_from_boundary(p, Orientation::Increasing);
        const RadialGrid g = make_radial_grid(p.domain, cfg.grid_n, Spacing::UniformT);
        const DiscreteSolution d = minimize_reduced_energy(p, g);
        const ShootingResult s = shoot_el(p);
        if (!s.success) {
            ++failures;
            continue;
        }
        closed_vs_discrete = std::max(closed_vs_discrete, sup_diff(d.profile, h1, g.nodes));
        closed_vs_shoot = std::max(closed_vs_shoot, sup_diff(*s.profile, h1, g.nodes));
        shoot_vs_discrete = std::max(shoot_vs_discrete, sup_diff(*s.profile, d.profile, g.nodes));
    }
    const std::string over = std::to_string(cfg.n_oracle_pairs) + " random pairs";
    out.push_back(make_equality("solvers.shooting_converged", anchor::kSolvers,
                                static_cast<double>(failures), 0.0, 0.0, over));
    out.push_back(make_equality("solvers.closed_vs_shooting", anchor::kSolvers, closed_vs_shoot, 0.0,
                                cfg.tol.solver, "sup norm, " + over));
    out.push_back(make_equality("solvers.closed_vs_discrete", anchor::kSolvers, closed_vs_discrete, 0.0,
                                cfg.tol.solver, "sup norm, " + over));
    out.push_back(make_equality("solvers.shooting_vs_discrete", anchor::kSolvers, shoot_vs_discrete,
                                0.0, cfg.tol.solver, "sup norm, " + over));

    // Analytic gradient of the discrete functional against central differences.
    double worst = 0.0;
    for (std::size_t s = 0; s < cfg.n_gradient_states; ++s) {
        const AnnulusPair p = random_moderate_pair(rng);
        const RadialGrid g = make_radial_grid(p.domain, 40, s % 2 ? Spacing::UniformInverseT : Spacing::UniformT);
        std::vector<double> k(g.nodes.size());
        const double k0 = std::log(p.r_star()), k1 = std::log(p.R_star());
        for (std::size_t j = 0; j < k.size(); ++j) {
            const double u = static_cast<double>(j) / static_cast<double>(k.size() - 1);
            k[j] = k0 + (k1 - k0) * u + (j == 0 || j + 1 == k.size() ? 0.0 : rng.uniform(-0.5, 0.5));
        }
        const std::vector<double> grad = reduced_energy_gradient(k, g);
        double scale = 0.0, err = 0.0;
        for (std::size_t j = 1; j + 1 < k.size(); ++j) {
            const double h = 1e-6;
            auto kp = k, km = k;
            kp[j] += h;
            km[j] -= h;
            const double fd = (discrete_reduced_energy(kp, g) - discrete_reduced_energy(km, g)) / (2.0 * h);
            scale = std::max(scale, std::abs(grad[j - 1]));
            err = std::max(err, std::abs(grad[j - 1] - fd));
        }
        worst = std::max(worst, err / scale);
    }
    out.push_back(make_equality("solvers.gradient", anchor::kSolvers, worst, 0.0, cfg.tol.identity_rel,
                                "relative, " + std::to_string(cfg.n_gradient_states) + " states"));
    return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.seed = cfg.seed;

    auto run = [&](const char* family, const std::function<std::vector<CheckResult>()>& body) {
        try {
            auto rs = body();
            report.results.insert(report.results.end(), rs.begin(), rs.end());
        } catch (const std::exception& e) {
            CheckResult c;
            c.name = std::string(family) + ".error";
            c.anchor = family;
            c.passed = false;
            c.detail = e.what();
            report.results.push_back(std::move(c));
        }
    };
    const std::uint64_t s = cfg.seed;
    run("minimum", [&] { return check_minimum(cfg.pair, cfg.n_competitors, s, cfg); });
    run("inversion", [&] { return check_inversion_invariance(cfg.pair, cfg.n_inversion_maps, s, cfg); });
    run("sphere", [&] {
        return check_sphere_inequality(cfg.n_transforms, cfg.n_perturbations, cfg.t_values, s, cfg);
    });
    run("residual", [&] { return check_residuals(s, cfg); });
    run("harmonic", [&] { return check_harmonic(s, cfg.n_pairs, cfg); });
    run("solvers", [&] { return check_solvers(s, cfg); });

    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

}  // namespace annuli

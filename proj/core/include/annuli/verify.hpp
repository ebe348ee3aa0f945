#pragma once

#include "annuli/energy.hpp"
#include "annuli/geometry.hpp"
#include "annuli/random.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace annuli {

/// One verified identity or inequality.
///   Equality:   passed <=> |observed - expected| <= tolerance
///   LowerBound: passed <=> observed >= expected - tolerance
struct CheckResult {
    enum class Kind { Equality, LowerBound };

    std::string name;
    std::string anchor;  // which result of the theory this check covers
    Kind kind = Kind::Equality;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

CheckResult make_equality(std::string name, std::string anchor, double observed, double expected,
                          double tolerance, std::string detail = {});
CheckResult make_lower_bound(std::string name, std::string anchor, double observed,
                             double bound, double tolerance, std::string detail = {});

struct Tolerances {
    double closed_form = 1e-8;  // 1-D closed-form quadrature and sphere integrals
    double energy_rel = 1e-4;   // relative, 3-D energies
    double residual = 1e-9;     // analytic residuals
    double bound = 1e-6;        // slack on lower bounds
    double solver = 1e-5;       // discrete and shooting profiles, discrete energy (relative)
    double identity_rel = 1e-6; // exact identities evaluated by quadrature, gradients
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    AnnulusPair pair{1.0, 2.0, 1.0, 2.718281828459045};
    QuadratureOrders orders{64, 32};
    QuadratureOrders competitor_orders{32, 16};
    std::size_t grid_n = 1000;
    std::size_t n_competitors = 100;
    std::size_t n_inversion_maps = 50;
    std::size_t n_transforms = 20;
    std::size_t n_perturbations = 20;
    std::vector<double> t_values{1.0, 2.0, 5.0};
    std::size_t n_pairs = 1000;
    std::size_t n_energy_pairs = 20;
    std::size_t n_oracle_pairs = 10;
    std::size_t n_gradient_states = 50;
    Tolerances tol;
};

struct SuiteReport {
    std::vector<CheckResult> results;
    std::uint64_t seed = 0;
    std::chrono::duration<double> wall_time{0.0};

    bool all_passed() const;
    /// Distinct anchors covered, in first-appearance order.
    std::vector<std::string> coverage() const;
};

/// Radii log-uniform in [lo, hi], redrawn until r < R and r* < R*.
AnnulusPair random_pair(Rng& rng, double lo = 0.1, double hi = 10.0);
/// random_pair restricted to pairs passing the Nitsche condition.
AnnulusPair random_admissible_pair(Rng& rng, double lo = 0.1, double hi = 10.0);
/// Moderate shells (R/r and R*/r* in [1.2, 3]) used by the solver oracles.
AnnulusPair random_moderate_pair(Rng& rng);

/// Minimal value, H1/H2 energies under random rotations, competitor lower
/// bound, and convergence of the discrete minimizer.
std::vector<CheckResult> check_minimum(const AnnulusPair& pair, std::size_t n_competitors,
                                        std::uint64_t seed, const SuiteConfig& cfg = {});

/// F[a f / |f|^2] = F[f] for a in {0.5, 1, r* R*}; one result per a plus the
/// H1 -> H2 identity.
std::vector<CheckResult> check_inversion_invariance(const AnnulusPair& pair, std::size_t n_maps,
                                                    std::uint64_t seed,
                                                    const SuiteConfig& cfg = {});

/// Möbius maps give exactly 8 pi; non-conformal perturbations exceed it.
/// Also checks the Gram-determinant integral equals 4 pi.
std::vector<CheckResult> check_sphere_inequality(std::size_t n_transforms,
                                                 std::size_t n_perturbations,
                                                 const std::vector<double>& t_values,
                                                 std::uint64_t seed, const SuiteConfig& cfg = {});

/// Euler-Lagrange, weighted-harmonic, Laplacian and equilibrium residuals.
std::vector<CheckResult> check_residuals(std::uint64_t seed, const SuiteConfig& cfg = {});

/// Nitsche condition vs monotonicity, radial Dirichlet energy vs quadrature,
/// and the ordering lower bound < radial harmonic energy.
std::vector<CheckResult> check_harmonic(std::uint64_t pairs_seed, std::size_t n_pairs,
                                        const SuiteConfig& cfg = {});

/// Closed form, shooting and discrete minimizer agree; analytic vs
/// finite-difference gradient of the discrete functional.
std::vector<CheckResult> check_solvers(std::uint64_t seed, const SuiteConfig& cfg = {});

/// Runs every check family in a fixed order. Never throws for a failing
/// check; exceptions inside a family are recorded as failed results.
SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace annuli

#pragma once

#include "annuli/geometry.hpp"
#include "annuli/maps.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace annuli {

/// 2 H H' - t H'^2 + t H H'', the Euler-Lagrange operator of the reduced
/// functional. Vanishes exactly on H = a exp(b/t). Sampled profiles throw
/// std::domain_error at the grid endpoints.
double el_residual(const RadialProfile& h, double t);

/// Radial coefficient of the Euclidean Laplacian of h(x) = H(t) x/t:
/// (-2H + 2tH' + t^2 H'') / t^3.
double laplacian_coefficient(const RadialProfile& h, double t);

/// Radial coefficient of Delta h - RHS of the weighted harmonic system for
/// h = H(t) x/t, i.e. laplacian_coefficient - (2H'^2 - (2H^2/t^2 + H'^2)) / (tH).
/// Algebraically equal to el_residual / (t^2 H). Throws std::domain_error if H(t) = 0.
double weighted_harmonic_residual(const RadialProfile& h, double t);

/// 2M/t + M'/2 with M = H'^2/H^2, the radial form of the equilibrium equation.
double momentum_residual(const RadialProfile& h, double t);

/// Minimizer of the discretized reduced functional.
struct DiscreteSolution {
    RadialProfile profile;            // sampled, H_i = exp(K_i)
    std::vector<double> log_values;   // K_i
    /// Reduced energy of the competitor exp(K) with K piecewise linear in the
    /// grid coordinate (t, or 1/t for inverse spacing), integrated exactly.
    double energy = 0.0;
    std::optional<double> sup_error_vs_closed_form;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Per-panel coefficients c_i of the discrete quadratic form
///   D(K) = 4 pi (sum_i c_i (K_{i+1} - K_i)^2 + 2 (R - r)).
/// Uniform-in-t grids use c_i = tbar_i^2 / dt_i (midpoint weight); uniform-in-1/t
/// grids use the exact form c_i = 1 / |du_i|, u = 1/t, where t^2 K'^2 dt = K_u^2 du.
std::vector<double> discrete_coefficients(const RadialGrid& grid);

double discrete_reduced_energy(std::span<const double> log_values, const RadialGrid& grid);

/// Gradient of discrete_reduced_energy with respect to the interior values
/// K_1..K_{n-1} (boundary values are fixed).
std::vector<double> reduced_energy_gradient(std::span<const double> log_values,
                                            const RadialGrid& grid);

/// Exact reduced energy of exp(K) with K piecewise linear in the grid coordinate.
double piecewise_linear_energy(std::span<const double> log_values, const RadialGrid& grid);

/// Solves the SPD tridiagonal system for the minimizer of D(K) with
/// K(r) = log r*, K(R) = log R*. Flat targets return the constant r* directly.
DiscreteSolution minimize_reduced_energy(const AnnulusPair& pair, const RadialGrid& grid);

struct StepRule {
    enum class Kind { ExactLineSearch, Armijo, Fixed };
    Kind kind = Kind::ExactLineSearch;
    /// Fixed step length; nonpositive selects 1/L from a Gershgorin bound.
    double fixed_step = 0.0;
};

/// Steepest descent on D(K) from the affine-in-t interpolant of the boundary
/// logs. Stops when max |grad| <= tol; reports converged = false when
/// max_iter is exhausted first.
DiscreteSolution gradient_descent_minimize(const AnnulusPair& pair, const RadialGrid& grid,
                                           StepRule step_rule = {},
                                           std::size_t max_iter = 2'000'000, double tol = 1e-9);

struct ShootingResult {
    bool success = false;
    double initial_slope = 0.0;
    std::optional<RadialProfile> profile;  // sampled on the integration grid
    double boundary_miss = 0.0;            // H(R) - R*
    std::size_t bisections = 0;
    std::string message;
};

/// Integrates H'' = (t H'^2 - 2 H H') / (t H) from (r, r*) with classical RK4
/// and bisects the initial slope in [-10, 10] (R* - r*)/(R - r) until
/// |H(R) - R*| <= bisect_tol (at most 200 halvings).
ShootingResult shoot_el(const AnnulusPair& pair, std::size_t ode_steps = 2000,
                        double bisect_tol = 1e-12);

}  // namespace annuli

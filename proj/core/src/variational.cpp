#include "annuli/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace annuli {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_interior(const RadialProfile& h, double t) {
    if (const auto* s = std::get_if<SampledProfile>(&h.variant())) {
        if (t <= s->grid.nodes.front() || t >= s->grid.nodes.back())
            throw std::domain_error("residual of a sampled profile needs an interior point");
    }
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Thomas algorithm for a tridiagonal system; lower[0] and upper[n-1] unused.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

DiscreteSolution finish(const AnnulusPair& pair, const RadialGrid& grid, std::vector<double> k,
                        std::size_t iterations, bool converged) {
    std::vector<double> values(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) values[i] = std::exp(k[i]);
    values.front() = pair.r_star();
    values.back() = pair.R_star();
    const double energy = piecewise_linear_energy(k, grid);
    const RadialProfile closed = exp_profile_from_boundary(pair, Orientation::Increasing);
    double sup = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sup = std::max(sup, std::abs(values[i] - closed.value(grid.nodes[i])));
    return DiscreteSolution{RadialProfile::sampled(grid, std::move(values)), std::move(k), energy,
                            sup, iterations, converged};
}

DiscreteSolution flat_solution(const AnnulusPair& pair, const RadialGrid& grid) {
    std::vector<double> k(grid.nodes.size(), std::log(pair.r_star()));
    std::vector<double> values(grid.nodes.size(), pair.r_star());
    return DiscreteSolution{RadialProfile::sampled(grid, std::move(values)), std::move(k),
                            kFourPi * 2.0 * grid.annulus.width(), 0.0, 0, true};
}

std::vector<double> affine_interpolant(const RadialGrid& grid, double k0, double k1) {
    const auto& t = grid.nodes;
    const bool inverse = grid.mode == Spacing::UniformInverseT;
    auto coord = [&](double x) { return inverse ? 1.0 / x : x; };
    const double u0 = coord(t.front()), u1 = coord(t.back());
    std::vector<double> k(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) k[i] = k0 + (k1 - k0) * (coord(t[i]) - u0) / (u1 - u0);
    k.front() = k0;
    k.back() = k1;
    return k;
}

void check_inputs(const AnnulusPair& pair, const RadialGrid& grid) {
    pair.require_weighted();
    if (!(grid.annulus == pair.domain))
        throw std::invalid_argument("grid annulus does not match the domain annulus");
}

}  // namespace

double el_residual(const RadialProfile& h, double t) {
    require_interior(h, t);
    const double v = h.value(t);
    const double d1 = h.derivative(t, 1);
    const double d2 = h.derivative(t, 2);
    return 2.0 * v * d1 - t * d1 * d1 + t * v * d2;
}

double laplacian_coefficient(const RadialProfile& h, double t) {
    require_interior(h, t);
    const double v = h.value(t);
    const double d1 = h.derivative(t, 1);
    const double d2 = h.derivative(t, 2);
    return (-2.0 * v + 2.0 * t * d1 + t * t * d2) / (t * t * t);
}

double weighted_harmonic_residual(const RadialProfile& h, double t) {
    require_interior(h, t);
    const double v = h.value(t);
    if (v == 0.0) throw std::domain_error("weighted harmonic residual is singular where H = 0");
    const double d1 = h.derivative(t, 1);
    const double lap = laplacian_coefficient(h, t);
    // Right-hand side of the weighted system along x:
    // (2/|h|^2) sum_jk D_k h_j <h, D_k h> e_j  ->  2 H'^2 / (t H)
    // -(||Dh||^2/|h|^2) h                      ->  -(2H^2/t^2 + H'^2) / (t H)
    const double rhs = 2.0 * d1 * d1 / (t * v) - (2.0 * v * v / (t * t) + d1 * d1) / (t * v);
    return lap - rhs;
}

double momentum_residual(const RadialProfile& h, double t) {
    require_interior(h, t);
    const double v = h.value(t);
    const double q = h.derivative(t, 1) / v;
    const double m = q * q;
    const double dm = 2.0 * q * (h.derivative(t, 2) / v - q * q);
    return 2.0 * m / t + 0.5 * dm;
}

std::vector<double> discrete_coefficients(const RadialGrid& grid) {
    const auto& t = grid.nodes;
    std::vector<double> c(grid.intervals());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (grid.mode == Spacing::UniformT) {
            const double mid = 0.5 * (t[i] + t[i + 1]);
            c[i] = mid * mid / (t[i + 1] - t[i]);
        } else {
            c[i] = 1.0 / (1.0 / t[i] - 1.0 / t[i + 1]);
        }
    }
    return c;
}

double discrete_reduced_energy(std::span<const double> k, const RadialGrid& grid) {
    if (k.size() != grid.nodes.size()) throw std::invalid_argument("log profile size mismatch");
    const std::vector<double> c = discrete_coefficients(grid);
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double dk = k[i + 1] - k[i];
        sum += c[i] * dk * dk;
    }
    return kFourPi * (sum + 2.0 * grid.annulus.width());
}

std::vector<double> reduced_energy_gradient(std::span<const double> k, const RadialGrid& grid) {
    if (k.size() != grid.nodes.size()) throw std::invalid_argument("log profile size mismatch");
    const std::vector<double> c = discrete_coefficients(grid);
    std::vector<double> g(k.size() - 2);
    for (std::size_t j = 1; j + 1 < k.size(); ++j)
        g[j - 1] = 2.0 * kFourPi * (c[j - 1] * (k[j] - k[j - 1]) - c[j] * (k[j + 1] - k[j]));
    return g;
}

double piecewise_linear_energy(std::span<const double> k, const RadialGrid& grid) {
    if (k.size() != grid.nodes.size()) throw std::invalid_argument("log profile size mismatch");
    const auto& t = grid.nodes;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double dk = k[i + 1] - k[i];
        if (grid.mode == Spacing::UniformT) {
            const double h = t[i + 1] - t[i];
            // int t^2 dt over the panel = h (t_i^2 + t_i t_{i+1} + t_{i+1}^2) / 3
            const double m = (t[i] * t[i] + t[i] * t[i + 1] + t[i + 1] * t[i + 1]) / 3.0;
            sum += m * dk * dk / h;
        } else {
            sum += dk * dk / (1.0 / t[i] - 1.0 / t[i + 1]);
        }
    }
    return kFourPi * (sum + 2.0 * grid.annulus.width());
}

DiscreteSolution minimize_reduced_energy(const AnnulusPair& pair, const RadialGrid& grid) {
    check_inputs(pair, grid);
    if (pair.target.flat()) return flat_solution(pair, grid);

    const std::size_t n = grid.intervals();
    const std::vector<double> c = discrete_coefficients(grid);
    const double k0 = std::log(pair.r_star());
    const double k1 = std::log(pair.R_star());
    const std::size_t m = n - 1;  // interior unknowns
    // Solve for the correction to the interpolant that is affine in the grid
    // coordinate; on inverse grids it is already the solution and the
    // right-hand side is pure roundoff.
    std::vector<double> k = affine_interpolant(grid, k0, k1);
    std::vector<double> lower(m), diag(m), upper(m), rhs(m);
    for (std::size_t j = 0; j < m; ++j) {
        diag[j] = c[j] + c[j + 1];
        lower[j] = -c[j];
        upper[j] = -c[j + 1];
        rhs[j] = c[j + 1] * (k[j + 2] - k[j + 1]) - c[j] * (k[j + 1] - k[j]);
    }
    const std::vector<double> delta = solve_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t j = 0; j < m; ++j) k[j + 1] += delta[j];
    return finish(pair, grid, std::move(k), 1, true);
}

DiscreteSolution gradient_descent_minimize(const AnnulusPair& pair, const RadialGrid& grid,
                                           StepRule step_rule, std::size_t max_iter, double tol) {
    check_inputs(pair, grid);
    if (pair.target.flat()) return flat_solution(pair, grid);

    const auto& t = grid.nodes;
    const std::size_t n = grid.intervals();
    const std::vector<double> c = discrete_coefficients(grid);
    const double k0 = std::log(pair.r_star());
    const double k1 = std::log(pair.R_star());
    std::vector<double> k(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        k[i] = k0 + (k1 - k0) * (t[i] - t.front()) / (t.back() - t.front());
    k.front() = k0;
    k.back() = k1;

    // D is quadratic with Hessian 8 pi L, L the weighted path Laplacian.
    auto curvature = [&](const std::vector<double>& d) {  // d^T (Hess) d, d zero at the ends
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = i == 0 ? 0.0 : d[i - 1];
            const double b = i + 1 == n ? 0.0 : d[i];
            s += c[i] * (b - a) * (b - a);
        }
        return 2.0 * kFourPi * s;
    };
    double lipschitz = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) lipschitz = std::max(lipschitz, 2.0 * (c[j] + c[j + 1]));
    lipschitz *= 2.0 * kFourPi;

    std::size_t iter = 0;
    bool converged = false;
    while (true) {
        const std::vector<double> g = reduced_energy_gradient(k, grid);
        if (max_abs(g) <= tol) {
            converged = true;
            break;
        }
        if (iter >= max_iter) break;
        ++iter;

        double g2 = 0.0;
        for (double x : g) g2 += x * x;
        double alpha = 0.0;
        switch (step_rule.kind) {
            case StepRule::Kind::ExactLineSearch:
                alpha = g2 / curvature(g);
                break;
            case StepRule::Kind::Fixed:
                alpha = step_rule.fixed_step > 0.0 ? step_rule.fixed_step : 1.0 / lipschitz;
                break;
            case StepRule::Kind::Armijo: {
                // exact change of the quadratic along -g
                const double q = curvature(g);
                alpha = 4.0 / lipschitz;
                for (int back = 0; back < 60; ++back) {
                    const double change = -alpha * g2 + 0.5 * alpha * alpha * q;
                    if (change <= -1e-4 * alpha * g2) break;
                    alpha *= 0.5;
                }
                break;
            }
        }
        for (std::size_t j = 1; j < n; ++j) k[j] -= alpha * g[j - 1];
    }
    return finish(pair, grid, std::move(k), iter, converged);
}

ShootingResult shoot_el(const AnnulusPair& pair, std::size_t ode_steps, double bisect_tol) {
    pair.require_weighted();
    if (ode_steps < 2) throw std::invalid_argument("shooting needs at least 2 ODE steps");
    const double r = pair.r();
    const double R = pair.R();
    const double lo_radius = pair.r_star();
    const double target = pair.R_star();
    const RadialGrid grid = make_radial_grid(pair.domain, ode_steps, Spacing::UniformT);
    const auto& nodes = grid.nodes;

    using State = std::array<double, 2>;  // (H, H')
    auto rhs = [](double t, const State& y) -> State {
        return {y[1], (t * y[1] * y[1] - 2.0 * y[0] * y[1]) / (t * y[0])};
    };
    // Returns the trajectory, or nullopt if H leaves (0, inf).
    auto integrate = [&](double slope) -> std::optional<std::vector<double>> {
        std::vector<double> values(nodes.size());
        State y{lo_radius, slope};
        values[0] = y[0];
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double t = nodes[i];
            const double h = nodes[i + 1] - t;
            const State k1 = rhs(t, y);
            const State k2 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
            const State k3 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
            const State k4 = rhs(t + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
            y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
            if (!(y[0] > 0.0) || !std::isfinite(y[0]) || !std::isfinite(y[1])) return std::nullopt;
            values[i + 1] = y[0];
        }
        return values;
    };
    // Miss at R; a trajectory that collapses to zero counts as undershooting.
    auto miss = [&](double slope, std::vector<double>* out) {
        auto v = integrate(slope);
        if (!v) return -std::numeric_limits<double>::infinity();
        const double m = v->back() - target;
        if (out) *out = std::move(*v);
        return m;
    };

    ShootingResult result;
    std::vector<double> values;
    auto accept = [&](double slope, double m) {
        result.success = true;
        result.initial_slope = slope;
        result.boundary_miss = m;
        result.profile = RadialProfile::sampled(grid, values);
    };

    if (pair.target.flat()) {
        const double m = miss(0.0, &values);
        accept(0.0, m);
        result.message = "flat target: constant solution";
        return result;
    }

    const double scale = (target - lo_radius) / (R - r);
    double a = -10.0 * scale;
    double b = 10.0 * scale;
    double ma = miss(a, nullptr);
    double mb = miss(b, nullptr);
    if (!(ma <= 0.0 && mb >= 0.0)) {
        result.message = "slope bracket does not enclose the boundary value";
        result.boundary_miss = std::isfinite(mb) ? mb : ma;
        return result;
    }
    for (std::size_t it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double mm = miss(mid, &values);
        result.bisections = it + 1;
        if (std::abs(mm) <= bisect_tol) {
            accept(mid, mm);
            result.message = "converged";
            return result;
        }
        if (mm < 0.0) a = mid; else b = mid;
    }
    const double mid = 0.5 * (a + b);
    const double mm = miss(mid, &values);
    if (std::isfinite(mm) && !values.empty()) {
        result.profile = RadialProfile::sampled(grid, values);
    }
    result.initial_slope = mid;
    result.boundary_miss = mm;
    result.message = "bisection limit reached before tolerance";
    return result;
}

}  // namespace annuli

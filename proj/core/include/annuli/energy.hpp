#pragma once

#include "annuli/geometry.hpp"
#include "annuli/maps.hpp"
#include "annuli/quadrature.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>

namespace annuli {

struct QuadratureOrders {
    std::size_t radial = 64;
    std::size_t sphere = 32;

    QuadratureOrders doubled() const { return {2 * radial, 2 * sphere}; }
};

/// Energy value with its split into the radial term |grad rho|^2 (/rho^2) and
/// the spherical term rho^2 ||DS||^2 (/rho^2), where f = rho S and |S| = 1.
struct EnergyReport {
    double value = 0.0;
    double radial_part = 0.0;
    double spherical_part = 0.0;
    QuadratureOrders orders;
    /// value(doubled orders) - value(orders), when requested.
    std::optional<double> refinement_delta;
};

/// Raised when the integrand cannot be evaluated at a quadrature node.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Radial quadrature used by every energy: Gauss-Legendre with `order`
/// points on [r, R] for closed-form profiles; for sampled profiles a 2-point
/// rule on each grid panel so no node straddles a kink.
GaussRule radial_rule(const RadialProfile& profile, const Annulus& domain, std::size_t order);

/// Weighted energy F[f] = int ||Df||^2 / |f|^2 dx over the domain annulus.
/// Generalized radial maps use analytic differentials; sampled maps use
/// central differences. Throws EvaluationError where f vanishes.
EnergyReport weighted_energy(const GeneralizedRadialMap& f, const AnnulusPair& pair,
                             QuadratureOrders orders = {}, bool check_convergence = false);
EnergyReport weighted_energy(const SampledMap& f, const AnnulusPair& pair,
                             QuadratureOrders orders = {}, bool check_convergence = false);

/// Unweighted Dirichlet energy E[f] = int ||Df||^2 dx.
EnergyReport dirichlet_energy(const GeneralizedRadialMap& f, const Annulus& domain,
                              QuadratureOrders orders = {}, bool check_convergence = false);
EnergyReport dirichlet_energy(const SampledMap& f, const Annulus& domain,
                              QuadratureOrders orders = {}, bool check_convergence = false);

/// 4 pi int_r^R (t^2 H'^2 / H^2 + 2) dt. Throws EvaluationError if H <= 0 at a node.
double reduced_energy(const RadialProfile& h, const Annulus& domain, std::size_t radial_order = 64);

/// 4 pi (2 (R - r) + r R log(R*/r*)^2 / (R - r)), the minimum of F over
/// homeomorphisms between the annuli.
double analytic_min_weighted_energy(const AnnulusPair& pair);

/// r*^2 analytic_min_weighted_energy(pair), a lower bound for E[f] since
/// ||Df||^2 >= r*^2 ||Df||^2 / |f|^2 on the target annulus.
///
/// The variant min / R*^2 is not a bound in general: scaling the target by
/// lambda scales E by lambda^2 but that quantity by 1 / lambda^2.
double dirichlet_lower_bound(const AnnulusPair& pair);

/// analytic_min_weighted_energy(pair) / R*^2. Below dirichlet_lower_bound
/// exactly when r* R* >= 1.
double min_energy_over_outer_squared(const AnnulusPair& pair);

}  // namespace annuli

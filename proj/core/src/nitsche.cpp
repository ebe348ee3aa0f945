#include "annuli/nitsche.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace annuli {

namespace {

double cube(double x) { return x * x * x; }

}  // namespace

NitscheVerdict nitsche_condition(const AnnulusPair& pair) {
    const double r = pair.r();
    const double R = pair.R();
    const double lhs = pair.r_star() * (cube(r) + 2.0 * cube(R));
    const double rhs = 3.0 * r * R * R * pair.R_star();
    NitscheVerdict v;
    v.ratio = pair.r_star() / pair.R_star();
    v.threshold = 3.0 * r * R * R / (cube(r) + 2.0 * cube(R));
    const double diff = rhs - lhs;
    if (std::abs(diff) <= 1e-12 * (std::abs(lhs) + std::abs(rhs))) {
        v.margin = 0.0;
        v.admissible = true;
    } else {
        v.margin = diff / (pair.R_star() * (cube(r) + 2.0 * cube(R)));
        v.admissible = diff > 0.0;
    }
    return v;
}

RadialProfile harmonic_radial_bvp(const AnnulusPair& pair) {
    const double r = pair.r();
    const double R = pair.R();
    if (!(r > 0.0)) throw std::invalid_argument("harmonic BVP needs r > 0");
    const double rs = pair.r_star();
    const double Rs = pair.R_star();
    const double den = cube(r) - cube(R);
    const double a = (r * r * rs - R * R * Rs) / den;
    const double b = r * r * R * R * (r * Rs - R * rs) / den;
    return RadialProfile::restricted(HarmonicProfile{a, b, ProfileAnchors{r, rs, R, Rs}},
                                     pair.domain);
}

bool harmonic_profile_monotone(const AnnulusPair& pair, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const RadialProfile h = harmonic_radial_bvp(pair);
    const RadialGrid grid = make_radial_grid(pair.domain, samples - 1, Spacing::UniformT);
    double min_slope = std::numeric_limits<double>::infinity();
    for (double t : grid.nodes) min_slope = std::min(min_slope, h.derivative(t, 1));
    return min_slope > 0.0;
}

double analytic_dirichlet_energy_radial(const AnnulusPair& pair) {
    const double r = pair.r();
    const double R = pair.R();
    const double rs = pair.r_star();
    const double Rs = pair.R_star();
    const double num = r * (cube(r) + 2.0 * cube(R)) * rs * rs - 6.0 * r * r * R * R * rs * Rs +
                       R * (2.0 * cube(r) + cube(R)) * Rs * Rs;
    return 4.0 * std::numbers::pi * num / (cube(R) - cube(r));
}

}  // namespace annuli

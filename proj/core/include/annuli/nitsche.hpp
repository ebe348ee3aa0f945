#pragma once

#include "annuli/geometry.hpp"
#include "annuli/maps.hpp"

#include <cstddef>

namespace annuli {

/// Existence test for a radial Euclidean-harmonic homeomorphism.
struct NitscheVerdict {
    bool admissible = false;
    double ratio = 0.0;      // r* / R*
    double threshold = 0.0;  // 3 r R^2 / (r^3 + 2 R^3)
    double margin = 0.0;     // threshold - ratio; admissible <=> margin >= 0
};

/// Admissible iff r*/R* <= 3 r R^2 / (r^3 + 2 R^3). The comparison is made on
/// the cross-multiplied form r*(r^3 + 2R^3) <= 3 r R^2 R*, with a relative
/// slack of 1e-12 that snaps near-ties to margin = 0.
NitscheVerdict nitsche_condition(const AnnulusPair& pair);

/// Radial solution H(t) = a t + b / t^2 of Delta h = 0 with H(r) = r*, H(R) = R*:
///   a = (r^2 r* - R^2 R*) / (r^3 - R^3),  b = r^2 R^2 (r R* - R r*) / (r^3 - R^3).
RadialProfile harmonic_radial_bvp(const AnnulusPair& pair);

/// True iff H' > 0 at every point of a uniform grid of `samples` points on
/// [r, R] (endpoints included) for the BVP profile.
bool harmonic_profile_monotone(const AnnulusPair& pair, std::size_t samples = 2001);

/// Dirichlet energy of h(x) = H(|x|) x/|x| for the BVP profile:
///   4 pi (r (r^3 + 2R^3) r*^2 - 6 r^2 R^2 r* R* + R (2r^3 + R^3) R*^2) / (R^3 - r^3).
double analytic_dirichlet_energy_radial(const AnnulusPair& pair);

}  // namespace annuli

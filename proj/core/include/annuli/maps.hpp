#pragma once

#include "annuli/finite_difference.hpp"
#include "annuli/geometry.hpp"
#include "annuli/random.hpp"
#include "annuli/sphere_maps.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace annuli {

/// Two interpolation points a closed-form profile reproduces bit-exactly.
struct ProfileAnchors {
    double t0, h0;
    double t1, h1;
};

/// H(t) = a exp(b / t).
struct ExponentialProfile {
    double a;
    double b;
    std::optional<ProfileAnchors> anchors;
};

/// H(t) = a t + b / t^2, the radial solutions of the Euclidean Laplace equation.
struct HarmonicProfile {
    double a;
    double b;
    std::optional<ProfileAnchors> anchors;
};

/// Grid values, linearly interpolated. Nodal derivatives come from three-point
/// finite differences (one-sided at the ends) and are interpolated the same way.
struct SampledProfile {
    RadialGrid grid;
    std::vector<double> values;
    std::vector<double> d1;
    std::vector<double> d2;
};

/// Radial profile t -> H(t).
class RadialProfile {
public:
    using Variant = std::variant<ExponentialProfile, HarmonicProfile, SampledProfile>;

    static RadialProfile exponential(double a, double b);
    static RadialProfile harmonic(double a, double b);
    /// Throws std::invalid_argument on size mismatch or nonpositive values.
    static RadialProfile sampled(RadialGrid grid, std::vector<double> values);

    /// Closed-form profile restricted to `support`; evaluation outside throws.
    static RadialProfile restricted(Variant v, Annulus support);

    const Variant& variant() const noexcept { return v_; }
    const std::optional<Annulus>& support() const noexcept { return support_; }
    bool is_sampled() const noexcept { return std::holds_alternative<SampledProfile>(v_); }

    /// Throws std::domain_error outside the support (or for t <= 0).
    double value(double t) const;
    /// order 1 or 2; throws std::invalid_argument for other orders.
    double derivative(double t, int order) const;

    /// Copy with the support restriction dropped (sampled profiles extrapolate
    /// linearly from the end panels).
    RadialProfile unrestricted() const { return RadialProfile(v_); }

    /// Evaluates on every node of `grid`.
    std::vector<double> sample(const RadialGrid& grid) const;

private:
    explicit RadialProfile(Variant v, std::optional<Annulus> support = std::nullopt)
        : v_(std::move(v)), support_(support) {}
    void check_domain(double t) const;

    Variant v_;
    std::optional<Annulus> support_;
};

double profile_eval(const RadialProfile& h, double t);
double profile_derivative(const RadialProfile& h, double t, int order);

enum class Orientation { Increasing, Decreasing };

/// The stationary profiles of the weighted problem fitted to the boundary:
///   increasing  H1(t) = r* (R*/r*)^{R (t - r) / ((R - r) t)}
///   decreasing  H2(t) = r* R* / H1(t)
/// Both are exponential profiles a exp(b/t) and hit the boundary radii exactly.
RadialProfile exp_profile_from_boundary(const AnnulusPair& pair, Orientation orientation);

/// f(x) = H(|x|) T(x / |x|) on a domain annulus.
struct GeneralizedRadialMap {
    RadialProfile profile;
    MobiusTransform rotation;
    Annulus domain;
};

/// Arbitrary test map, differentiated numerically.
struct SampledMap {
    VectorField eval;
    double fd_step = 1e-5;  // relative to |x|
    Annulus domain;
    std::optional<Annulus> target;
};

/// Throws std::domain_error when |x| lies outside the closed domain annulus.
Vec3 map_eval(const GeneralizedRadialMap& f, const Vec3& x);
Vec3 map_eval(const SampledMap& f, const Vec3& x);

/// Df = H'(t) S (x/t)^T + (H/t) DT(x/t) (I - x x^T / t^2).
Mat3 map_differential(const GeneralizedRadialMap& f, const Vec3& x);

/// Central differences with step fd_step * |x|. Throws std::domain_error if
/// the stencil leaves the domain annulus.
Mat3 map_differential_fd(const SampledMap& f, const Vec3& x);
Mat3 map_differential_fd(const GeneralizedRadialMap& f, const Vec3& x, double fd_step = 1e-5);

/// Wraps a generalized radial map as a black-box sampled map.
SampledMap as_sampled(const GeneralizedRadialMap& f, double fd_step = 1e-5);

/// g(x) = a f(x) / |f(x)|^2. The evaluator throws InvalidInput where f vanishes.
SampledMap inversion_transform(const SampledMap& f, double a);
SampledMap inversion_transform(const GeneralizedRadialMap& f, double a, double fd_step = 1e-5);

/// Sine-bump perturbation of `base` on `grid`:
///   H_i = base(t_i) (1 + amplitude * bump(s_i)),  s = (t - r)/(R - r),
/// bump = sin(m pi s) + c sin((m+1) pi s) / normalizer with c drawn from `seed`.
/// The bump is zero at both ends so boundary values are unchanged.
RadialProfile perturbed_profile(const RadialProfile& base, const RadialGrid& grid,
                                double amplitude, int mode, std::uint64_t seed);

/// Parameters of an admissible non-radial competitor
///   f(x) = exp(K(t) + phi(t) P(t, eta)) T(normalize(A eta)),  eta = x/|x|,
/// where K = log H1, phi(t) = (K - k0)(k1 - K)/(k1 - k0) vanishes at both
/// boundary spheres, and |P| <= 1 keeps |f| inside the target annulus.
struct CompetitorSpec {
    double radial_amplitude = 0.0;
    int radial_mode = 1;
    double angular_amplitude = 0.0;
    int harmonic_degree = 1;  // 1 or 2
    Vec3 angular_axis = Vec3::UnitZ();
    Mat3 distortion = Mat3::Identity();
    MobiusTransform rotation = MobiusTransform::identity();
};

SampledMap make_competitor(const AnnulusPair& pair, const CompetitorSpec& spec,
                           double fd_step = 1e-5);

/// Random admissible competitor with |radial| + |angular| amplitude <= 1 and
/// a distortion within `distortion_scale` of the identity.
CompetitorSpec random_competitor_spec(Rng& rng, double distortion_scale = 0.2);

/// Thrown when a map evaluates to zero where its inverse norm is needed.
class InvalidInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace annuli

#include "annuli/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace annuli {

namespace {

double cube(double t) { return t * t * t; }

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// Fraction of the way from t0 to t1 measured in 1/t; exactly 0 at t0 and
// exactly 1 at t1 because both products are formed from the same factors.
double inverse_fraction(const ProfileAnchors& an, double t) {
    return (an.t1 * (t - an.t0)) / ((an.t1 - an.t0) * t);
}

double exponential_value(const ExponentialProfile& p, double t) {
    if (p.anchors) {
        const double s = inverse_fraction(*p.anchors, t);
        return std::pow(p.anchors->h0, 1.0 - s) * std::pow(p.anchors->h1, s);
    }
    return p.a * std::exp(p.b / t);
}

double harmonic_value(const HarmonicProfile& p, double t) {
    if (p.anchors) {
        const ProfileAnchors& an = *p.anchors;
        const double c0 = cube(an.t0);
        const double c1 = cube(an.t1);
        const double ct = cube(t);
        const double span = c1 - c0;
        const double phi0 = (an.t0 * an.t0) / (t * t) * ((c1 - ct) / span);
        const double phi1 = (an.t1 * an.t1) / (t * t) * ((ct - c0) / span);
        return an.h0 * phi0 + an.h1 * phi1;
    }
    return p.a * t + p.b / (t * t);
}

// Index i of the panel [t_i, t_{i+1}] containing t.
std::size_t panel_of(const std::vector<double>& nodes, double t) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
    return std::min(i, nodes.size() - 2);
}

double interpolate(const std::vector<double>& nodes, const std::vector<double>& vals, double t) {
    const std::size_t i = panel_of(nodes, t);
    if (t == nodes[i]) return vals[i];
    if (t == nodes[i + 1]) return vals[i + 1];
    const double w = (t - nodes[i]) / (nodes[i + 1] - nodes[i]);
    return (1.0 - w) * vals[i] + w * vals[i + 1];
}

void nodal_derivatives(const std::vector<double>& t, const std::vector<double>& f,
                       std::vector<double>& d1, std::vector<double>& d2) {
    const std::size_t n = t.size();
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    auto second = [&](std::size_t i) {  // second derivative of the quadratic through i-1, i, i+1
        const double hm = t[i] - t[i - 1];
        const double hp = t[i + 1] - t[i];
        return 2.0 * (f[i - 1] / (hm * (hm + hp)) - f[i] / (hm * hp) + f[i + 1] / (hp * (hm + hp)));
    };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = t[i] - t[i - 1];
        const double hp = t[i + 1] - t[i];
        d1[i] = -hp / (hm * (hm + hp)) * f[i - 1] + (hp - hm) / (hm * hp) * f[i] +
                hm / (hp * (hm + hp)) * f[i + 1];
        d2[i] = second(i);
    }
    {
        const double h1 = t[1] - t[0];
        const double h2 = t[2] - t[1];
        d1[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
                h1 / (h2 * (h1 + h2)) * f[2];
        d2[0] = second(1);
    }
    {
        const double h1 = t[n - 1] - t[n - 2];
        const double h2 = t[n - 2] - t[n - 3];
        d1[n - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[n - 1] -
                    (h1 + h2) / (h1 * h2) * f[n - 2] + h1 / (h2 * (h1 + h2)) * f[n - 3];
        d2[n - 1] = second(n - 2);
    }
}

}  // namespace

RadialProfile RadialProfile::exponential(double a, double b) {
    if (!(a > 0.0)) throw std::invalid_argument("exponential profile needs a > 0");
    return RadialProfile(ExponentialProfile{a, b, std::nullopt});
}

RadialProfile RadialProfile::harmonic(double a, double b) {
    return RadialProfile(HarmonicProfile{a, b, std::nullopt});
}

RadialProfile RadialProfile::sampled(RadialGrid grid, std::vector<double> values) {
    if (values.size() != grid.nodes.size())
        throw std::invalid_argument("sampled profile: value count does not match grid");
    for (double v : values)
        if (!(v > 0.0)) throw std::invalid_argument("sampled profile values must be positive");
    SampledProfile s{std::move(grid), std::move(values), {}, {}};
    nodal_derivatives(s.grid.nodes, s.values, s.d1, s.d2);
    Annulus support = s.grid.annulus;
    return RadialProfile(std::move(s), support);
}

RadialProfile RadialProfile::restricted(Variant v, Annulus support) {
    return RadialProfile(std::move(v), support);
}

void RadialProfile::check_domain(double t) const {
    if (support_ && !support_->contains(t))
        throw std::domain_error("profile evaluated at t = " + std::to_string(t) +
                                " outside [" + std::to_string(support_->inner()) + ", " +
                                std::to_string(support_->outer()) + "]");
    if (!(t > 0.0)) throw std::domain_error("profile evaluated at nonpositive t");
}

double RadialProfile::value(double t) const {
    check_domain(t);
    return std::visit(Overloaded{
                          [&](const ExponentialProfile& p) { return exponential_value(p, t); },
                          [&](const HarmonicProfile& p) { return harmonic_value(p, t); },
                          [&](const SampledProfile& p) { return interpolate(p.grid.nodes, p.values, t); },
                      },
                      v_);
}

double RadialProfile::derivative(double t, int order) const {
    if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
    check_domain(t);
    return std::visit(
        Overloaded{
            [&](const ExponentialProfile& p) {
                const double h = exponential_value(p, t);
                const double t2 = t * t;
                if (order == 1) return -p.b * h / t2;
                return h * (p.b * p.b / (t2 * t2) + 2.0 * p.b / (t2 * t));
            },
            [&](const HarmonicProfile& p) {
                if (order == 1) return p.a - 2.0 * p.b / cube(t);
                return 6.0 * p.b / (cube(t) * t);
            },
            [&](const SampledProfile& p) {
                return interpolate(p.grid.nodes, order == 1 ? p.d1 : p.d2, t);
            },
        },
        v_);
}

std::vector<double> RadialProfile::sample(const RadialGrid& grid) const {
    std::vector<double> out(grid.nodes.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(grid.nodes[i]);
    return out;
}

double profile_eval(const RadialProfile& h, double t) { return h.value(t); }

double profile_derivative(const RadialProfile& h, double t, int order) {
    return h.derivative(t, order);
}

RadialProfile exp_profile_from_boundary(const AnnulusPair& pair, Orientation orientation) {
    pair.require_weighted();
    const double r = pair.r();
    const double R = pair.R();
    const double lo = pair.r_star();
    const double hi = pair.R_star();
    // log H1 = log r* + L R/(R - r) - L r R / ((R - r) t),  L = log(R*/r*).
    const double L = std::log(hi / lo);
    const double b1 = -L * r * R / (R - r);
    const double a1 = lo * std::exp(L * R / (R - r));
    ExponentialProfile p = orientation == Orientation::Increasing
                               ? ExponentialProfile{a1, b1, ProfileAnchors{r, lo, R, hi}}
                               : ExponentialProfile{lo * hi / a1, -b1, ProfileAnchors{r, hi, R, lo}};
    return RadialProfile::restricted(std::move(p), pair.domain);
}

Vec3 map_eval(const GeneralizedRadialMap& f, const Vec3& x) {
    const double t = x.norm();
    if (!f.domain.contains(t))
        throw std::domain_error("map evaluated at |x| = " + std::to_string(t) +
                                " outside the domain annulus");
    return f.profile.value(t) * f.rotation.apply(SpherePoint::normalized(x)).vec();
}

Vec3 map_eval(const SampledMap& f, const Vec3& x) {
    const double t = x.norm();
    if (!f.domain.contains(t))
        throw std::domain_error("map evaluated at |x| = " + std::to_string(t) +
                                " outside the domain annulus");
    return f.eval(x);
}

Mat3 map_differential(const GeneralizedRadialMap& f, const Vec3& x) {
    const double t = x.norm();
    if (!f.domain.contains(t))
        throw std::domain_error("map differentiated at |x| = " + std::to_string(t) +
                                " outside the domain annulus");
    const SpherePoint eta = SpherePoint::normalized(x);
    const Vec3 s = f.rotation.apply(eta).vec();
    const double h = f.profile.value(t);
    const double dh = f.profile.derivative(t, 1);
    return dh * s * eta.vec().transpose() + h * sphere_map_jacobian(f.rotation, x);
}

namespace {

void check_margin(const Annulus& domain, double t, double h) {
    if (t - h < domain.inner() || t + h > domain.outer())
        throw std::domain_error("finite-difference stencil at |x| = " + std::to_string(t) +
                                " leaves the domain annulus");
}

}  // namespace

Mat3 map_differential_fd(const SampledMap& f, const Vec3& x) {
    const double t = x.norm();
    const double h = f.fd_step * t;
    check_margin(f.domain, t, h);
    return central_jacobian(f.eval, x, h);
}

Mat3 map_differential_fd(const GeneralizedRadialMap& f, const Vec3& x, double fd_step) {
    return map_differential_fd(as_sampled(f, fd_step), x);
}

SampledMap as_sampled(const GeneralizedRadialMap& f, double fd_step) {
    // Stencil points can land a rounding error past the boundary sphere;
    // check_margin alone decides admissibility.
    const RadialProfile profile = f.profile.unrestricted();
    const MobiusTransform rotation = f.rotation;
    VectorField eval = [profile, rotation](const Vec3& x) {
        return Vec3(profile.value(x.norm()) * rotation.apply(SpherePoint::normalized(x)).vec());
    };
    return SampledMap{std::move(eval), fd_step, f.domain, std::nullopt};
}

SampledMap inversion_transform(const SampledMap& f, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("inversion constant must be positive");
    VectorField inner = f.eval;
    VectorField eval = [inner, a](const Vec3& x) {
        const Vec3 y = inner(x);
        const double n2 = y.squaredNorm();
        if (!(n2 > 0.0))
            throw InvalidInput("inversion undefined: map vanishes at x = (" +
                               std::to_string(x.x()) + ", " + std::to_string(x.y()) + ", " +
                               std::to_string(x.z()) + ")");
        return Vec3(a * y / n2);
    };
    std::optional<Annulus> target;
    if (f.target) {
        target = f.target->flat() ? Annulus::sphere(a / f.target->outer())
                                  : Annulus(a / f.target->outer(), a / f.target->inner());
    }
    return SampledMap{std::move(eval), f.fd_step, f.domain, target};
}

SampledMap inversion_transform(const GeneralizedRadialMap& f, double a, double fd_step) {
    return inversion_transform(as_sampled(f, fd_step), a);
}

RadialProfile perturbed_profile(const RadialProfile& base, const RadialGrid& grid,
                                double amplitude, int mode, std::uint64_t seed) {
    if (mode < 1) throw std::invalid_argument("perturbation mode must be at least 1");
    Rng rng(seed);
    const double c = rng.uniform(-0.5, 0.5);
    const double norm = 1.0 + std::abs(c);
    const double r = grid.annulus.inner();
    const double width = grid.annulus.width();
    const std::size_t n = grid.nodes.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.nodes[i];
        double bump = 0.0;
        if (i != 0 && i + 1 != n) {
            const double s = (t - r) / width;
            bump = (std::sin(mode * std::numbers::pi * s) +
                    c * std::sin((mode + 1) * std::numbers::pi * s)) /
                   norm;
        }
        values[i] = base.value(t) * (1.0 + amplitude * bump);
        if (!(values[i] > 0.0))
            throw std::invalid_argument("perturbation amplitude makes the profile nonpositive");
    }
    return RadialProfile::sampled(grid, std::move(values));
}

SampledMap make_competitor(const AnnulusPair& pair, const CompetitorSpec& spec, double fd_step) {
    pair.require_weighted();
    if (std::abs(spec.radial_amplitude) + std::abs(spec.angular_amplitude) > 1.0)
        throw std::invalid_argument("competitor amplitudes must satisfy |radial| + |angular| <= 1");
    if (spec.harmonic_degree != 1 && spec.harmonic_degree != 2)
        throw std::invalid_argument("angular modulation degree must be 1 or 2");
    if (spec.distortion.determinant() <= 0.0)
        throw std::invalid_argument("competitor distortion must preserve orientation");

    const RadialProfile h1 = exp_profile_from_boundary(pair, Orientation::Increasing);
    const auto& ep = std::get<ExponentialProfile>(h1.variant());
    const double r = pair.r();
    const double width = pair.R() - pair.r();
    const double k0 = std::log(pair.r_star());
    const double k1 = std::log(pair.R_star());
    const Vec3 axis = spec.angular_axis.normalized();
    const CompetitorSpec s = spec;

    VectorField eval = [=](const Vec3& x) {
        const double t = x.norm();
        const Vec3 eta = x / t;
        const double k = std::log(ep.a) + ep.b / t;
        const double phi = k1 > k0 ? (k - k0) * (k1 - k) / (k1 - k0) : 0.0;
        const double sigma = (t - r) / width;
        const double c = eta.dot(axis);
        const double y = s.harmonic_degree == 1 ? c : 0.5 * (3.0 * c * c - 1.0);
        const double p = s.radial_amplitude * std::sin(s.radial_mode * std::numbers::pi * sigma) +
                         s.angular_amplitude * y;
        const double rho = std::exp(k + phi * p);
        const Vec3 dir = s.rotation.apply(SpherePoint::normalized(s.distortion * eta)).vec();
        return Vec3(rho * dir);
    };
    return SampledMap{std::move(eval), fd_step, pair.domain, pair.target};
}

CompetitorSpec random_competitor_spec(Rng& rng, double distortion_scale) {
    CompetitorSpec spec;
    const double total = rng.uniform(0.2, 1.0);
    const double split = rng.uniform();
    spec.radial_amplitude = (rng.uniform() < 0.5 ? -1.0 : 1.0) * total * split;
    spec.angular_amplitude = (rng.uniform() < 0.5 ? -1.0 : 1.0) * total * (1.0 - split);
    spec.radial_mode = 1 + static_cast<int>(rng.next() % 3);
    spec.harmonic_degree = 1 + static_cast<int>(rng.next() % 2);
    spec.angular_axis = rng.unit_vector().vec();
    Mat3 a = Mat3::Identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) += distortion_scale * rng.uniform(-1.0, 1.0);
    spec.distortion = a.determinant() > 0.0 ? a : Mat3::Identity();
    spec.rotation = random_mobius(rng);
    return spec;
}

}  // namespace annuli

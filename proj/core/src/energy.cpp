#include "annuli/energy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace annuli {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

std::string describe(const Vec3& x) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x.x() << ", " << x.y() << ", " << x.z() << ")";
    return os.str();
}

struct Pieces {
    double radial = 0.0;
    double spherical = 0.0;
};

// Integrates a pointwise (radial, spherical) split over domain x S^2 with a
// fixed summation order.
template <class Integrand>
EnergyReport integrate_shells(const GaussRule& radial, const SphericalQuadrature& sphere,
                              QuadratureOrders orders, Integrand&& integrand) {
    EnergyReport rep;
    rep.orders = orders;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double t = radial.nodes[i];
        Pieces shell;
        for (std::size_t j = 0; j < sphere.size(); ++j) {
            const Pieces p = integrand(t, sphere.nodes[j]);
            shell.radial += sphere.weights[j] * p.radial;
            shell.spherical += sphere.weights[j] * p.spherical;
        }
        const double w = radial.weights[i] * t * t;
        rep.radial_part += w * shell.radial;
        rep.spherical_part += w * shell.spherical;
    }
    rep.value = rep.radial_part + rep.spherical_part;
    return rep;
}

template <class Eval>
EnergyReport with_refinement(QuadratureOrders orders, bool check, Eval&& eval) {
    EnergyReport rep = eval(orders);
    if (check) rep.refinement_delta = eval(orders.doubled()).value - rep.value;
    return rep;
}

// Pointwise split of ||Df||^2 for f = rho S from a full Jacobian:
// grad rho = Df^T f / |f| and rho^2 ||DS||^2 = ||Df||^2 - |grad rho|^2.
Pieces split_jacobian(const Mat3& df, const Vec3& f, double weight_power, const Vec3& x) {
    const double n2 = f.squaredNorm();
    const double total = df.squaredNorm();
    if (!(n2 > 0.0)) {
        if (weight_power != 0.0)
            throw EvaluationError("zero image norm at quadrature node x = " + describe(x));
        return {total, 0.0};
    }
    const double grad_rho2 = (df.transpose() * f).squaredNorm() / n2;
    const double scale = weight_power == 0.0 ? 1.0 : 1.0 / n2;
    return {grad_rho2 * scale, (total - grad_rho2) * scale};
}

EnergyReport sampled_energy(const SampledMap& f, const Annulus& domain, QuadratureOrders orders,
                            bool weighted) {
    const GaussRule radial = gauss_legendre(orders.radial, domain.inner(), domain.outer());
    const SphericalQuadrature sphere = make_sphere_quadrature(orders.sphere);
    return integrate_shells(radial, sphere, orders, [&](double t, const SpherePoint& eta) {
        const Vec3 x = t * eta.vec();
        const Vec3 y = f.eval(x);
        const Mat3 df = map_differential_fd(f, x);
        return split_jacobian(df, y, weighted ? 1.0 : 0.0, x);
    });
}

}  // namespace

GaussRule radial_rule(const RadialProfile& profile, const Annulus& domain, std::size_t order) {
    if (const auto* s = std::get_if<SampledProfile>(&profile.variant())) {
        const GaussRule ref = gauss_legendre(2);
        GaussRule out;
        const auto& nodes = s->grid.nodes;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double a = std::max(nodes[i], domain.inner());
            const double b = std::min(nodes[i + 1], domain.outer());
            if (!(b > a)) continue;
            for (std::size_t k = 0; k < ref.nodes.size(); ++k) {
                out.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * ref.nodes[k]);
                out.weights.push_back(0.5 * (b - a) * ref.weights[k]);
            }
        }
        return out;
    }
    return gauss_legendre(order, domain.inner(), domain.outer());
}

EnergyReport weighted_energy(const GeneralizedRadialMap& f, const AnnulusPair& pair,
                             QuadratureOrders orders, bool check_convergence) {
    pair.require_weighted();
    if (orders.radial < 4 || orders.sphere < 4)
        throw std::invalid_argument("quadrature orders must be at least 4");
    return with_refinement(orders, check_convergence, [&](QuadratureOrders o) {
        const GaussRule radial = radial_rule(f.profile, f.domain, o.radial);
        const SphericalQuadrature sphere = make_sphere_quadrature(o.sphere);
        return integrate_shells(radial, sphere, o, [&](double t, const SpherePoint& eta) {
            const double h = f.profile.value(t);
            if (!(h > 0.0))
                throw EvaluationError("zero image norm at quadrature node x = " +
                                      describe(t * eta.vec()));
            const double dh = f.profile.derivative(t, 1);
            const Mat3 ds = sphere_map_jacobian(f.rotation, t * eta.vec());
            // ||Df||^2 / |f|^2 = H'^2 / H^2 + ||DS||^2
            return Pieces{dh * dh / (h * h), ds.squaredNorm()};
        });
    });
}

EnergyReport weighted_energy(const SampledMap& f, const AnnulusPair& pair, QuadratureOrders orders,
                             bool check_convergence) {
    pair.require_weighted();
    if (orders.radial < 4 || orders.sphere < 4)
        throw std::invalid_argument("quadrature orders must be at least 4");
    return with_refinement(orders, check_convergence, [&](QuadratureOrders o) {
        return sampled_energy(f, pair.domain, o, true);
    });
}

EnergyReport dirichlet_energy(const GeneralizedRadialMap& f, const Annulus& domain,
                              QuadratureOrders orders, bool check_convergence) {
    if (orders.radial < 4 || orders.sphere < 4)
        throw std::invalid_argument("quadrature orders must be at least 4");
    return with_refinement(orders, check_convergence, [&](QuadratureOrders o) {
        const GaussRule radial = radial_rule(f.profile, domain, o.radial);
        const SphericalQuadrature sphere = make_sphere_quadrature(o.sphere);
        return integrate_shells(radial, sphere, o, [&](double t, const SpherePoint& eta) {
            const double h = f.profile.value(t);
            const double dh = f.profile.derivative(t, 1);
            const Mat3 ds = sphere_map_jacobian(f.rotation, t * eta.vec());
            return Pieces{dh * dh, h * h * ds.squaredNorm()};
        });
    });
}

EnergyReport dirichlet_energy(const SampledMap& f, const Annulus& domain, QuadratureOrders orders,
                              bool check_convergence) {
    if (orders.radial < 4 || orders.sphere < 4)
        throw std::invalid_argument("quadrature orders must be at least 4");
    return with_refinement(orders, check_convergence, [&](QuadratureOrders o) {
        return sampled_energy(f, domain, o, false);
    });
}

double reduced_energy(const RadialProfile& h, const Annulus& domain, std::size_t radial_order) {
    const GaussRule rule = radial_rule(h, domain, radial_order);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double v = h.value(t);
        if (!(v > 0.0))
            throw EvaluationError("nonpositive profile value at t = " + std::to_string(t));
        const double q = t * h.derivative(t, 1) / v;
        sum += rule.weights[i] * (q * q + 2.0);
    }
    return kFourPi * sum;
}

double analytic_min_weighted_energy(const AnnulusPair& pair) {
    pair.require_weighted();
    const double r = pair.r();
    const double R = pair.R();
    const double L = std::log(pair.R_star() / pair.r_star());
    return kFourPi * (2.0 * (R - r) + r * R * L * L / (R - r));
}

double dirichlet_lower_bound(const AnnulusPair& pair) {
    const double rs = pair.r_star();
    return rs * rs * analytic_min_weighted_energy(pair);
}

double min_energy_over_outer_squared(const AnnulusPair& pair) {
    const double Rs = pair.R_star();
    return analytic_min_weighted_energy(pair) / (Rs * Rs);
}

}  // namespace annuli

#pragma once

#include "annuli/finite_difference.hpp"
#include "annuli/geometry.hpp"
#include "annuli/quadrature.hpp"
#include "annuli/random.hpp"

#include <complex>

namespace annuli {

using Complex = std::complex<double>;

/// A point of the Riemann sphere C u {inf}.
struct ExtendedComplex {
    Complex value{0.0, 0.0};
    bool infinite = false;

    static ExtendedComplex infinity() { return {Complex{}, true}; }
};

/// Projection from the north pole: (x, y, z) -> (x + iy) / (1 - z).
/// The south pole maps to 0 and the north pole to infinity.
ExtendedComplex stereographic(const SpherePoint& p);
SpherePoint inverse_stereographic(const ExtendedComplex& w);

/// Orientation-preserving conformal automorphism of S^2, w -> (aw + b)/(cw + d),
/// stored with ad - bc = 1.
///
/// Points are pushed through homogeneous coordinates (z1 : z2), so neither the
/// pole nor the image of infinity needs special casing.
class MobiusTransform {
public:
    /// Scales the matrix to unit determinant. Throws std::invalid_argument when
    /// the determinant vanishes.
    MobiusTransform(Complex a, Complex b, Complex c, Complex d);

    static MobiusTransform identity();

    const Complex& a() const noexcept { return a_; }
    const Complex& b() const noexcept { return b_; }
    const Complex& c() const noexcept { return c_; }
    const Complex& d() const noexcept { return d_; }
    Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

    SpherePoint apply(const SpherePoint& p) const;

    /// Conformal stretch factor at p: |dT(v)| = lambda(p) |v| for tangent v.
    double stretch(const SpherePoint& p) const;

    /// Differential of T at p, extended linearly to R^3. Only its action on
    /// vectors tangent at p is meaningful.
    Mat3 differential(const SpherePoint& p) const;

private:
    Complex a_, b_, c_, d_;
};

SpherePoint mobius_apply(const MobiusTransform& t, const SpherePoint& p);
/// apply(compose(t1, t2), p) == apply(t1, apply(t2, p)).
MobiusTransform mobius_compose(const MobiusTransform& t1, const MobiusTransform& t2);
MobiusTransform mobius_inverse(const MobiusTransform& t);
double conformal_stretch(const MobiusTransform& t, const SpherePoint& p);

/// Entries uniform in [-1, 1]^2, redrawn while |det| < 1e-6 or the stretch
/// exceeds `max_stretch` anywhere on the sphere, then normalized.
MobiusTransform random_mobius(Rng& rng, double max_stretch = 4.0);

/// Largest value of the conformal stretch over S^2 (the squared top singular
/// value of the normalized matrix).
double max_stretch(const MobiusTransform& t);

/// Directional derivatives of S(x) = T(x/|x|) along a frame built at x/|x|.
struct SphereDifferential {
    Vec3 du;
    Vec3 dv;
    Vec3 dn;
    double scale = 0.0;  // 1/|x|
};

/// Throws std::invalid_argument for x = 0.
SphereDifferential sphere_map_differential(const MobiusTransform& t, const Vec3& x,
                                           const TangentFrame& frame);

/// Full Jacobian of S(x) = T(x/|x|) at x != 0.
Mat3 sphere_map_jacobian(const MobiusTransform& t, const Vec3& x);

/// |D_U S x D_V S| at x for S(x) = T(x/|x|).
double gram_determinant(const MobiusTransform& t, const Vec3& x);

/// Integral over the sphere of radius t of ||DS||^2 - |DS x/|x||^2 for
/// S = T(x/|x|), with analytic differentials. Equals 8 pi for every T.
double sphere_inequality_integral(const MobiusTransform& t, double radius,
                                  const SphericalQuadrature& quad);

/// Same integral for an arbitrary sphere-valued map S : R^3 \ {0} -> S^2,
/// differentiated by central differences with step fd_step * radius.
double sphere_inequality_integral(const VectorField& s, double radius,
                                  const SphericalQuadrature& quad, double fd_step = 1e-5);

/// Integral of the Gram determinant over the sphere of radius t.
double gram_integral(const MobiusTransform& t, double radius, const SphericalQuadrature& quad);

}  // namespace annuli

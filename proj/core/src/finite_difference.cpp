#include "annuli/finite_difference.hpp"

namespace annuli {

Mat3 central_jacobian(const VectorField& f, const Vec3& x, double h) {
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
        Vec3 xp = x;
        Vec3 xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return jac;
}

}  // namespace annuli

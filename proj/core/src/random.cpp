#include "annuli/random.hpp"

#include <cmath>
#include <stdexcept>

namespace annuli {

double Rng::log_uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_uniform needs 0 < lo <= hi");
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

SpherePoint Rng::unit_vector() {
    for (;;) {
        const Vec3 v(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        const double n2 = v.squaredNorm();
        if (n2 > 1e-4 && n2 <= 1.0) return SpherePoint::normalized(v);
    }
}

}  // namespace annuli

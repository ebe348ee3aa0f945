#pragma once

#include "annuli/geometry.hpp"

#include <functional>

namespace annuli {

using VectorField = std::function<Vec3(const Vec3&)>;

/// Central-difference Jacobian, column j = (f(x + h e_j) - f(x - h e_j)) / 2h.
Mat3 central_jacobian(const VectorField& f, const Vec3& x, double h);

}  // namespace annuli

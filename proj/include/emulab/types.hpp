#pragma once

#include <Eigen/Dense>

namespace emulab {

// Project-wide scalar. Every model quantity is a deviation from a
// reference path, so plain double precision is plenty.
using Scalar = double;

using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

}  // namespace emulab

#pragma once

#include "raman/core.hpp"

namespace raman {

// Below this |delta t| the Taylor branch is used.
inline constexpr double kSeriesThreshold = 1e-4;

// (exp(i s delta t) - 1) / delta, s = +1 or -1.
cplx phase_integral(double delta, double t, int sign);

// First divided difference of x -> exp(i s x t) on the nodes (x0, x1).
cplx phase_dd1(int sign, double x0, double x1, double t);

// Second divided difference of x -> exp(i s x t) on (x0, x1, x2).
// Coinciding nodes give the confluent limit, so no raw 1/(x_i - x_j) is formed.
cplx phase_dd2(int sign, double x0, double x1, double x2, double t);

}  // namespace raman

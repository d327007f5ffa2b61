#pragma once

#include <functional>

#include "isonet/grid.hpp"

namespace isonet {

// m + i n
AffineNet planar_grid(const GridWindow& w);
// exp(sign 2 pi (m + i n) / N) as a complex net in H.
AffineNet exponential_net(int N, const GridWindow& w, double sign = 1.0);
// Closed form of the constant cross ratio of the exponential net.
double exponential_cross_ratio(int N);

// Net with prescribed axes f(m,0), f(0,n) and quad cross ratios q(m,n), filled
// quad by quad outward from the origin. Real q give principal nets.
ProjectiveNet net_from_cauchy_data(const GridWindow& w, const std::function<Quaternion(int)>& axis_m,
                                   const std::function<Quaternion(int)>& axis_n,
                                   const std::function<double(int, int)>& q);
// A smooth-looking spatial isothermic net with q = a_m / b_n.
AffineNet sample_isothermic_net(const GridWindow& w);
// Stereographic image i (i + g j)(i - g j)^{-1} of a complex net on the unit S^2 in Im H.
AffineNet sphere_projection(const AffineNet& g);

struct NonIsothermicControl {
  AffineNet f;
  CrossRatioFactorization fit;  // best separable fit, residual well above tolerance
  Grid<Quaternion> u;           // a_m (d1 f)^{-1}
  Grid<Quaternion> v;           // b_n (d2 f)^{-1}
};

// Planar principal net with q = -(1 + 0.1 m n): real but not separable.
NonIsothermicControl non_isothermic_control(const GridWindow& w = GridWindow::symmetric(2, 2));

}  // namespace isonet

#include "isonet/generators.hpp"

#include <cmath>
#include <numbers>

namespace isonet {

AffineNet planar_grid(const GridWindow& w) {
  AffineNet out{Grid<Quaternion>(w), AffineChart::standard()};
  out.values.for_each([&](int m, int n, const Quaternion&) { out.values(m, n) = Quaternion{double(m), double(n), 0, 0}; });
  return out;
}

AffineNet exponential_net(int N, const GridWindow& w, double sign) {
  if (N < 4) throw Error(ErrorKind::InvalidArgument, "exponential net needs N >= 4");
  AffineNet out{Grid<Quaternion>(w), AffineChart::standard()};
  const double s = sign * 2.0 * std::numbers::pi / N;
  out.values.for_each([&](int m, int n, const Quaternion&) {
    out.values(m, n) = to_quaternion(std::exp(Complex(s * m, s * n)));
  });
  return out;
}

double exponential_cross_ratio(int N) {
  const double t = std::numbers::pi / N;
  return -std::pow(std::sinh(t), 2) / std::pow(std::sin(t), 2);
}

ProjectiveNet net_from_cauchy_data(const GridWindow& w, const std::function<Quaternion(int)>& axis_m,
                                   const std::function<Quaternion(int)>& axis_n,
                                   const std::function<double(int, int)>& q) {
  w.validate();
  Grid<HPoint> p(w);
  for (int m = w.m_min; m <= w.m_max; ++m) p(m, 0) = HPoint::from_affine(axis_m(m));
  for (int n = w.n_min; n <= w.n_max; ++n) p(0, n) = HPoint::from_affine(axis_n(n));
  // Quad (m,n) has corners A = (m,n), B = (m+1,n), C = (m+1,n+1), D = (m,n+1) and
  // [A,B,C,D] = q; the double transpositions move the unknown to the third slot.
  auto solve = [&](int m, int n, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateConfiguration, e.what(), GridIndex{m, n});
    }
  };
  for (int m = 0; m < w.m_max; ++m)
    for (int n = 0; n < w.n_max; ++n)
      solve(m, n, [&] { p(m + 1, n + 1) = solve_fourth_point(p(m, n), p(m + 1, n), p(m, n + 1), q(m, n)); });
  for (int m = -1; m >= w.m_min; --m)
    for (int n = 0; n < w.n_max; ++n)
      solve(m, n, [&] { p(m, n + 1) = solve_fourth_point(p(m + 1, n), p(m, n), p(m + 1, n + 1), q(m, n)); });
  for (int n = -1; n >= w.n_min; --n)
    for (int m = 0; m < w.m_max; ++m)
      solve(m, n, [&] { p(m + 1, n) = solve_fourth_point(p(m, n + 1), p(m + 1, n + 1), p(m, n), q(m, n)); });
  for (int m = -1; m >= w.m_min; --m)
    for (int n = -1; n >= w.n_min; --n)
      solve(m, n, [&] { p(m, n) = solve_fourth_point(p(m + 1, n + 1), p(m, n + 1), p(m + 1, n), q(m, n)); });
  return ProjectiveNet{std::move(p)};
}

AffineNet sample_isothermic_net(const GridWindow& w) {
  const double h = 0.15;
  auto axis_m = [h](int m) {
    const double t = h * m;
    return Quaternion{0.0, t, 0.3 * std::sin(t), 0.2 * t * t};
  };
  auto axis_n = [h](int n) {
    const double t = h * n;
    return Quaternion{0.0, 0.1 * t * t, 0.25 * std::sin(t), t};
  };
  auto a = [](int m) { return 1.0 + 0.2 * std::sin(0.7 * m); };
  auto b = [](int n) { return -(1.0 + 0.15 * std::cos(0.5 * n)); };
  const ProjectiveNet p = net_from_cauchy_data(w, axis_m, axis_n, [&](int m, int n) { return a(m) / b(n); });
  return project(p, AffineChart::standard());
}

AffineNet sphere_projection(const AffineNet& g) {
  const Quaternion i = Quaternion::i();
  const Quaternion j = Quaternion::j();
  AffineNet out{Grid<Quaternion>(g.window()), AffineChart::standard()};
  g.values.for_each([&](int m, int n, const Quaternion& x) {
    try {
      out.values(m, n) = i * (i + x * j) * inverse(i - x * j);
    } catch (const Error&) {
      throw Error(ErrorKind::PointAtInfinity, "net passes through the pole", GridIndex{m, n});
    }
  });
  return out;
}

NonIsothermicControl non_isothermic_control(const GridWindow& w) {
  auto axis_m = [](int m) { return Quaternion{double(m), 0.0, 0.0, 0.0}; };
  auto axis_n = [](int n) { return Quaternion{0.0, double(n), 0.0, 0.0}; };
  const ProjectiveNet p =
      net_from_cauchy_data(w, axis_m, axis_n, [](int m, int n) { return -(1.0 + 0.1 * m * n); });
  NonIsothermicControl c;
  c.f = project(p, AffineChart::standard());
  c.fit = fit_factorization(quad_cross_ratios(c.f));
  const EdgeDifferences d = edge_differences(c.f);
  c.u = Grid<Quaternion>(w.edges1());
  c.v = Grid<Quaternion>(w.edges2());
  c.u.for_each([&](int m, int n, const Quaternion&) { c.u(m, n) = c.fit.a_at(m) * inverse(d.d1(m, n)); });
  c.v.for_each([&](int m, int n, const Quaternion&) { c.v(m, n) = c.fit.b_at(n) * inverse(d.d2(m, n)); });
  return c;
}

}  // namespace isonet

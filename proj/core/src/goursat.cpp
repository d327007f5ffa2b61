#include <algorithm>
#include <cmath>

#include "isonet/integrate.hpp"
#include "isonet/transforms.hpp"

namespace isonet {

AffineNet goursat(const AffineNet& f_star, const AffineChart& new_chart, const ProjectiveNet& base,
                  const Quaternion& seed) {
  const AffineChart& old = f_star.chart;
  const AffineNet f = project(base, old);
  project(base, new_chart);  // admissibility: throws PointAtInfinity naming the vertex
  const GridWindow& w = f.window();
  const EdgeDifferences s = edge_differences(f_star);
  auto factor_left = [&](int m, int n) { return new_chart.nuinf(lift_vector(old, f(m, n))); };
  auto factor_right = [&](int m, int n) { return (old.nu0 - f(m, n) * old.nuinf)(new_chart.vinf); };

  Grid<Quaternion> u(w.edges1());
  Grid<Quaternion> v(w.edges2());
  double scale = 0.0;
  u.for_each([&](int m, int n, const Quaternion&) {
    u(m, n) = factor_left(m, n) * s.d1(m, n) * factor_right(m + 1, n);
    scale = std::max(scale, u(m, n).norm());
  });
  v.for_each([&](int m, int n, const Quaternion&) {
    v(m, n) = factor_left(m, n) * s.d2(m, n) * factor_right(m, n + 1);
    scale = std::max(scale, v(m, n).norm());
  });
  auto step_m = [&](int m, int n, const Quaternion& x, int dir) { return dir > 0 ? x + u(m, n) : x - u(m - 1, n); };
  auto step_n = [&](int m, int n, const Quaternion& x, int dir) { return dir > 0 ? x + v(m, n) : x - v(m, n - 1); };
  AffineNet out{integrate_center_out(w, seed, step_m, step_n), new_chart};
  const double r = face_residual(out.values, step_m, step_n, [&](const Quaternion& a, const Quaternion& b) {
    return (a - b).norm() / std::max(scale, 1e-300);
  });
  if (!(r <= kClosureTol)) {
    throw Error(ErrorKind::ClosureFailure, "Goursat transform does not close (residual " + format_residual(r) + ")");
  }
  return out;
}

ChristoffelPair goursat(const ChristoffelPair& pair, const AffineChart& new_chart) {
  const ProjectiveNet base = lift(pair.f);
  ChristoffelPair out{project(base, new_chart), goursat(pair.f_star, new_chart, base), pair.factorization, 0.0};
  return out;
}

namespace {

std::vector<double> edge_lengths(const AffineNet& a) {
  const EdgeDifferences d = edge_differences(a);
  std::vector<double> out;
  for (const auto& x : d.d1.data()) out.push_back(x.norm());
  for (const auto& x : d.d2.data()) out.push_back(x.norm());
  std::sort(out.begin(), out.end());
  const double big = out.empty() ? 1.0 : out.back();
  for (double& x : out) x /= big;
  return out;
}

}  // namespace

double edge_spectrum_distance(const AffineNet& a, const AffineNet& b) {
  const auto la = edge_lengths(a);
  const auto lb = edge_lengths(b);
  if (la.size() != lb.size()) return INFINITY;
  double r = 0.0;
  for (std::size_t k = 0; k < la.size(); ++k) r = std::max(r, std::abs(la[k] - lb[k]));
  return r;
}

double edge_difference_distance(const AffineNet& a, const AffineNet& b) {
  const EdgeDifferences da = edge_differences(a);
  const EdgeDifferences db = edge_differences(b);
  double big = 0.0;
  double r = 0.0;
  for (std::size_t k = 0; k < da.d1.size(); ++k) {
    big = std::max(big, da.d1.data()[k].norm());
    r = std::max(r, (da.d1.data()[k] - db.d1.data()[k]).norm());
  }
  for (std::size_t k = 0; k < da.d2.size(); ++k) {
    big = std::max(big, da.d2.data()[k].norm());
    r = std::max(r, (da.d2.data()[k] - db.d2.data()[k]).norm());
  }
  return r / std::max(big, 1e-300);
}

}  // namespace isonet

#include <algorithm>
#include <cmath>

#include "isonet/integrate.hpp"
#include "isonet/transforms.hpp"

namespace isonet {

namespace {

void check_factorization_shape(const GridWindow& w, const CrossRatioFactorization& fact) {
  if (fact.m_min != w.m_min || fact.n_min != w.n_min || fact.m_max() != w.m_max - 1 ||
      fact.n_max() != w.n_max - 1) {
    throw Error(ErrorKind::InvalidArgument, "factorization does not match the net window");
  }
}

double rel(const Quaternion& d, double scale) { return scale > 0.0 ? d.norm() / scale : d.norm(); }

}  // namespace

ChristoffelPair christoffel(const AffineNet& f, const CrossRatioFactorization& fact, const Quaternion& seed,
                            double tol) {
  const GridWindow& w = f.window();
  w.validate();
  check_factorization_shape(w, fact);
  if (auto bad = first_irregular_vertex(f)) {
    throw Error(ErrorKind::NotIsothermic, "net is not regular", *bad);
  }
  const Grid<NormalizedCrossRatio> q = quad_cross_ratios(f);
  q.for_each([&](int m, int n, const NormalizedCrossRatio& c) {
    const double model = fact.a_at(m) / fact.b_at(n);
    const double r = std::hypot(c.re - model, c.im) / std::max(std::abs(model), 1e-300);
    if (!(r <= tol)) {
      throw Error(ErrorKind::NotIsothermic,
                  "cross ratio differs from a_m/b_n by " + format_residual(r), GridIndex{m, n});
    }
  });

  const EdgeDifferences d = edge_differences(f);
  Grid<Quaternion> u(w.edges1());
  Grid<Quaternion> v(w.edges2());
  double scale = 0.0;
  u.for_each([&](int m, int n, const Quaternion&) {
    u(m, n) = fact.a_at(m) * inverse(d.d1(m, n), 0.0);
    scale = std::max(scale, u(m, n).norm());
  });
  v.for_each([&](int m, int n, const Quaternion&) {
    v(m, n) = fact.b_at(n) * inverse(d.d2(m, n), 0.0);
    scale = std::max(scale, v(m, n).norm());
  });

  auto step_m = [&](int m, int n, const Quaternion& x, int dir) {
    return dir > 0 ? x + u(m, n) : x - u(m - 1, n);
  };
  auto step_n = [&](int m, int n, const Quaternion& x, int dir) {
    return dir > 0 ? x + v(m, n) : x - v(m, n - 1);
  };
  ChristoffelPair pair{f, AffineNet{integrate_center_out(w, seed, step_m, step_n), f.chart}, fact, 0.0};
  pair.closure_residual = face_residual(pair.f_star.values, step_m, step_n,
                                        [&](const Quaternion& a, const Quaternion& b) { return rel(a - b, scale); });
  if (!(pair.closure_residual <= std::max(kClosureTol, tol))) {
    throw Error(ErrorKind::ClosureFailure,
                "dual net does not close (residual " + format_residual(pair.closure_residual) + ")");
  }
  return pair;
}

ChristoffelPair christoffel(const AffineNet& f, const Quaternion& seed) {
  const Classification c = classify(f);
  if (!c.isothermic) {
    throw Error(ErrorKind::NotIsothermic, c.reasons.empty() ? std::string() : c.reasons.front());
  }
  return christoffel(f, *c.factorization, seed);
}

ChristoffelPair make_christoffel_pair(const AffineNet& f, const AffineNet& f_star, double tol) {
  const GridWindow& w = f.window();
  if (!(f_star.window() == w)) throw Error(ErrorKind::NotChristoffelPair, "windows differ");
  w.validate();
  const EdgeDifferences d = edge_differences(f);
  const EdgeDifferences ds = edge_differences(f_star);
  const int m0 = 0;
  const int n0 = 0;
  CrossRatioFactorization fact;
  fact.m_min = w.m_min;
  fact.n_min = w.n_min;
  for (int m = w.m_min; m < w.m_max; ++m) fact.a.push_back((ds.d1(m, n0) * d.d1(m, n0)).w);
  for (int n = w.n_min; n < w.n_max; ++n) fact.b.push_back((ds.d2(m0, n) * d.d2(m0, n)).w);
  double res = 0.0;
  auto check = [&](const Quaternion& prod, double expect, int m, int n) {
    const double r = (prod - expect).norm() / std::max(std::abs(expect), 1e-300);
    res = std::max(res, r);
    if (!(r <= tol)) {
      throw Error(ErrorKind::NotChristoffelPair,
                  "edge products are not a_m / b_n (relative deviation " + format_residual(r) + ")",
                  GridIndex{m, n});
    }
  };
  d.d1.for_each([&](int m, int n, const Quaternion& e) { check(ds.d1(m, n) * e, fact.a_at(m), m, n); });
  d.d2.for_each([&](int m, int n, const Quaternion& e) { check(ds.d2(m, n) * e, fact.b_at(n), m, n); });
  fact.residual = res;
  AffineNet star = f_star;
  star.chart = f.chart;
  return ChristoffelPair{f, star, fact, 0.0};
}

ResidualStats dual_relations_residual(const AffineNet& f, const AffineNet& f_star) {
  const EdgeDifferences d = edge_differences(f);
  const EdgeDifferences s = edge_differences(f_star);
  const GridWindow q = f.window().quads();
  ResidualStats r;
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      const Quaternion l1 = s.d1(m, n) * d.d2(m + 1, n);
      const Quaternion r1 = s.d2(m, n) * d.d1(m, n + 1);
      const Quaternion l2 = d.d1(m, n) * s.d2(m + 1, n);
      const Quaternion r2 = d.d2(m, n) * s.d1(m, n + 1);
      r.add(rel(l1 - r1, std::max(l1.norm(), r1.norm())));
      r.add(rel(l2 - r2, std::max(l2.norm(), r2.norm())));
    }
  }
  return r;
}

ResidualStats dual_consequences_residual(const AffineNet& f, const AffineNet& f_star) {
  const EdgeDifferences d = edge_differences(f);
  const EdgeDifferences s = edge_differences(f_star);
  const GridWindow q = f.window().quads();
  ResidualStats r;
  auto acc = [&](const Quaternion& l, const Quaternion& rr) {
    r.add(rel(l - rr, std::max(l.norm(), rr.norm())));
  };
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      const Quaternion dd = f(m + 1, n) - f(m, n + 1);
      acc(dd * s.d1(m, n + 1) * d.d1(m, n + 1), d.d1(m, n) * s.d1(m, n) * dd);
      acc(dd * s.d2(m + 1, n) * d.d2(m + 1, n), d.d2(m, n) * s.d2(m, n) * dd);
      acc(dd * s.d2(m + 1, n) * d.d1(m, n + 1), d.d2(m, n) * s.d1(m, n) * dd);
      acc(dd * s.d1(m, n + 1) * d.d2(m + 1, n), d.d1(m, n) * s.d2(m, n) * dd);
    }
  }
  return r;
}

namespace {

template <class F>
ResidualStats cross_relation_impl(const AffineNet& f, const AffineNet& f_star, F&& measure) {
  const EdgeDifferences d = edge_differences(f);
  const EdgeDifferences s = edge_differences(f_star);
  const Grid<NormalizedCrossRatio> q = quad_cross_ratios(f);
  ResidualStats r;
  q.for_each([&](int m, int n, const NormalizedCrossRatio& c) {
    const Quaternion x = (s.d1(m, n) * d.d1(m, n)) * inverse(s.d2(m, n) * d.d2(m, n), 0.0);
    const NormalizedCrossRatio y = normalize_cross_ratio(x);
    r.add(measure(c, y));
  });
  return r;
}

}  // namespace

ResidualStats cross_relation_residual(const AffineNet& f, const AffineNet& f_star) {
  return cross_relation_impl(f, f_star, [](const NormalizedCrossRatio& a, const NormalizedCrossRatio& b) {
    return std::hypot(a.re - b.re, a.im - b.im) / std::max(std::hypot(a.re, a.im), 1e-300);
  });
}

ResidualStats christoffel_identity_residual(const AffineNet& f, const AffineNet& f_star) {
  return cross_relation_impl(f, f_star, [](const NormalizedCrossRatio& a, const NormalizedCrossRatio& b) {
    return std::hypot(a.re - b.re, a.im - b.im);
  });
}

}  // namespace isonet

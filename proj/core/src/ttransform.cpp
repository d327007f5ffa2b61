#include <algorithm>
#include <cmath>

#include "isonet/integrate.hpp"
#include "isonet/transforms.hpp"

namespace isonet {

namespace {

constexpr double kFrameClosureTol = 1e-6;

QuatMatrix2 step(const QuatMatrix2& x, double lambda) { return QuatMatrix2::identity() + lambda * x; }

}  // namespace

void check_lambda(const Connection& c, double lambda) {
  auto test = [&](const Grid<double>& g, const char* dir) {
    g.for_each([&](int m, int n, const double& a) {
      if (std::abs(1.0 - lambda * a) < kLambdaMargin) {
        throw Error(ErrorKind::SingularLambda,
                    std::string("lambda times the edge factor equals 1 on a direction-") + dir + " edge",
                    GridIndex{m, n});
      }
    });
  };
  test(c.a, "1");
  test(c.b, "2");
}

TTransformFrame integrate_T(const Connection& c, double lambda) {
  check_lambda(c, lambda);
  const GridWindow& w = c.f.window();
  auto step_m = [&](int m, int n, const QuatMatrix2& t, int dir) {
    return renormalized(dir > 0 ? t * step(c.U(m, n), lambda) : t * inverse(step(c.U(m - 1, n), lambda)));
  };
  auto step_n = [&](int m, int n, const QuatMatrix2& t, int dir) {
    return renormalized(dir > 0 ? t * step(c.V(m, n), lambda) : t * inverse(step(c.V(m, n - 1), lambda)));
  };
  TTransformFrame frame{lambda, integrate_center_out(w, QuatMatrix2::identity(), step_m, step_n), 0.0};
  frame.residual = face_residual(frame.values, step_m, step_n, projective_matrix_distance);
  if (!(frame.residual <= kFrameClosureTol)) {
    throw Error(ErrorKind::ClosureFailure,
                "T system does not close (residual " + format_residual(frame.residual) + ")");
  }
  return frame;
}

ProjectiveNet apply_frame(const TTransformFrame& frame, const ProjectiveNet& g) {
  ProjectiveNet out{Grid<HPoint>(g.window())};
  g.values.for_each([&](int m, int n, const HPoint& p) {
    try {
      out.values(m, n) = mobius_apply(frame.values(m, n), p);
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateImage, e.what(), GridIndex{m, n});
    }
  });
  return out;
}

ProjectiveNet t_transform(const ProjectiveNet& f, const TTransformFrame& frame) {
  ProjectiveNet out = apply_frame(frame, f);
  const GridWindow& w = out.window();
  out.values.for_each([&](int m, int n, const HPoint& p) {
    if ((m < w.m_max && projective_distance(p, out(m + 1, n)) < 1e-12) ||
        (n < w.n_max && projective_distance(p, out(m, n + 1)) < 1e-12)) {
      throw Error(ErrorKind::DegenerateImage, "consecutive image points coincide", GridIndex{m, n});
    }
  });
  return out;
}

ResidualStats t_cross_ratio_law_residual(const Connection& c, const ProjectiveNet& f_lambda, double lambda) {
  const Grid<NormalizedCrossRatio> q = quad_cross_ratios(c.base);
  const Grid<NormalizedCrossRatio> ql = quad_cross_ratios(f_lambda);
  ResidualStats r;
  q.for_each([&](int m, int n, const NormalizedCrossRatio& x) {
    const double predicted = x.re * (1.0 - lambda * c.b(m, n)) / (1.0 - lambda * c.a(m, n));
    r.add(std::hypot(ql(m, n).re - predicted, ql(m, n).im));
  });
  return r;
}

ResidualStats vertex_star_residual(const ProjectiveNet& f, const TTransformFrame& frame) {
  const GridWindow& w = f.window();
  ResidualStats r;
  f.values.for_each([&](int m, int n, const HPoint&) {
    const QuatMatrix2& t = frame.values(m, n);
    const int nb[4][2] = {{m + 1, n}, {m - 1, n}, {m, n + 1}, {m, n - 1}};
    for (const auto& k : nb) {
      if (!w.contains(k[0], k[1])) continue;
      const HPoint a = mobius_apply(frame.values(k[0], k[1]), f(k[0], k[1]));
      const HPoint b = mobius_apply(t, f(k[0], k[1]));
      r.add(projective_distance(a, b));
    }
  });
  return r;
}

TTransformFrame integrate_euclidean_frame(const ChristoffelPair& pair, double lambda) {
  const AffineChart& ch = pair.f.chart;
  const EdgeDifferences d = edge_differences(pair.f);
  const EdgeDifferences s = edge_differences(pair.f_star);
  const QuatMatrix2 id = QuatMatrix2::identity();
  auto make = [&](const Quaternion& df, const Quaternion& dstar) {
    return id + QuatMatrix2::outer(ch.vinf * df, ch.nuinf) + lambda * QuatMatrix2::outer(ch.v0 * dstar, ch.nu0);
  };
  auto step_m = [&](int m, int n, const QuatMatrix2& t, int dir) {
    return renormalized(dir > 0 ? t * make(d.d1(m, n), s.d1(m, n))
                                : t * inverse(make(d.d1(m - 1, n), s.d1(m - 1, n))));
  };
  auto step_n = [&](int m, int n, const QuatMatrix2& t, int dir) {
    return renormalized(dir > 0 ? t * make(d.d2(m, n), s.d2(m, n))
                                : t * inverse(make(d.d2(m, n - 1), s.d2(m, n - 1))));
  };
  const QuatMatrix2 seed = id + QuatMatrix2::outer(ch.vinf * pair.f(0, 0), ch.nuinf);
  TTransformFrame frame{lambda, integrate_center_out(pair.f.window(), seed, step_m, step_n), 0.0};
  frame.residual = face_residual(frame.values, step_m, step_n, projective_matrix_distance);
  return frame;
}

ResidualStats gauge_equivalence_residual(const ChristoffelPair& pair, double lambda) {
  const Connection c = build_connection(pair);
  const TTransformFrame t = integrate_T(c, lambda);
  const TTransformFrame e = integrate_euclidean_frame(pair, lambda);
  const AffineChart& ch = pair.f.chart;
  ResidualStats r;
  t.values.for_each([&](int m, int n, const QuatMatrix2& x) {
    const QuatMatrix2 f0 = QuatMatrix2::identity() + QuatMatrix2::outer(ch.vinf * pair.f(m, n), ch.nuinf);
    r.add(projective_matrix_distance(e.values(m, n) * inverse(f0), x));
  });
  return r;
}

GroupCheck t_group_check(const Connection& c, double lambda1, double lambda2) {
  if (!c.factorization) throw Error(ErrorKind::NotIsothermic, "group check needs a Christoffel pair connection");
  const TTransformFrame t1 = integrate_T(c, lambda1);
  const ProjectiveNet f1 = t_transform(c.base, t1);
  const AffineChart chart1 = safe_chart(f1.values.data());
  const ChristoffelPair pair1 =
      christoffel(project(f1, chart1), c.factorization->transported(lambda1), 0.0, kTransformedGate);
  const Connection c1 = build_connection(pair1);

  GroupCheck g;
  const ProjectiveNet lhs = apply_frame(integrate_T(c1, lambda2), f1);
  const ProjectiveNet rhs = t_transform(c.base, integrate_T(c, lambda1 + lambda2));
  const ProjectiveNet back = apply_frame(integrate_T(c1, -lambda1), f1);
  lhs.values.for_each([&](int m, int n, const HPoint& p) {
    g.composition = std::max(g.composition, projective_distance(p, rhs(m, n)));
    g.inverse = std::max(g.inverse, projective_distance(back(m, n), c.base(m, n)));
  });
  return g;
}

}  // namespace isonet

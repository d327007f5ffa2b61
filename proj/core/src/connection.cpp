#include <algorithm>
#include <cmath>

#include "isonet/integrate.hpp"
#include "isonet/transforms.hpp"

namespace isonet {

namespace {

HCovector phi_of(const AffineChart& chart, const Quaternion& p) { return chart.nu0 - p * chart.nuinf; }

}  // namespace

Connection build_connection_from_forms(const AffineNet& f, const Grid<Quaternion>& u, const Grid<Quaternion>& v) {
  const GridWindow& w = f.window();
  if (!(u.window() == w.edges1()) || !(v.window() == w.edges2())) {
    throw Error(ErrorKind::InvalidArgument, "forms must live on the edges of the net");
  }
  const AffineChart& ch = f.chart;
  Connection c{f, lift(f), ch, Grid<QuatMatrix2>(w.edges1()), Grid<QuatMatrix2>(w.edges2()),
               Grid<double>(w.edges1()), Grid<double>(w.edges2()), std::nullopt};
  u.for_each([&](int m, int n, const Quaternion& x) {
    c.U(m, n) = QuatMatrix2::outer(lift_vector(ch, f(m, n)) * x, phi_of(ch, f(m + 1, n)));
    c.a(m, n) = (x * (f(m + 1, n) - f(m, n))).w;
  });
  v.for_each([&](int m, int n, const Quaternion& x) {
    c.V(m, n) = QuatMatrix2::outer(lift_vector(ch, f(m, n)) * x, phi_of(ch, f(m, n + 1)));
    c.b(m, n) = (x * (f(m, n + 1) - f(m, n))).w;
  });
  return c;
}

Connection build_connection(const ChristoffelPair& pair) {
  const EdgeDifferences d = edge_differences(pair.f_star);
  Connection c = build_connection_from_forms(pair.f, d.d1, d.d2);
  c.factorization = pair.factorization;
  return c;
}

ResidualStats fixed_point_residual(const Connection& c, double lambda) {
  const AffineNet& f = c.f;
  ResidualStats r;
  auto check = [&](const QuatMatrix2& x, double a, const Quaternion& p, const Quaternion& p1) {
    const QuatMatrix2 m = QuatMatrix2::identity() + lambda * x;
    const HVector v = lift_vector(c.chart, p);
    const HVector v1 = lift_vector(c.chart, p1);
    const double scale = std::max(1.0, m.max_abs());
    r.add((m * v - v * (1.0 - lambda * a)).max_abs() / (scale * v.max_abs()));
    r.add((m * v1 - v1).max_abs() / (scale * v1.max_abs()));
  };
  c.U.for_each([&](int m, int n, const QuatMatrix2& x) { check(x, c.a(m, n), f(m, n), f(m + 1, n)); });
  c.V.for_each([&](int m, int n, const QuatMatrix2& x) { check(x, c.b(m, n), f(m, n), f(m, n + 1)); });
  return r;
}

ResidualStats maurer_cartan_residual(const Connection& c, double lambda) {
  const GridWindow q = c.f.window().quads();
  const QuatMatrix2 id = QuatMatrix2::identity();
  ResidualStats r;
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      const QuatMatrix2 l = (id + lambda * c.U(m, n)) * (id + lambda * c.V(m + 1, n));
      const QuatMatrix2 rr = (id + lambda * c.V(m, n)) * (id + lambda * c.U(m, n + 1));
      r.add((l - rr).max_abs() / std::max({l.max_abs(), rr.max_abs(), 1e-300}));
    }
  }
  return r;
}

ResidualStats connection_structure_residual(const Connection& c) {
  const AffineNet& f = c.f;
  ResidualStats r;
  auto check = [&](const QuatMatrix2& x, const Quaternion& p, const Quaternion& p1) {
    const HVector v1 = lift_vector(c.chart, p1);
    const HCovector phi = phi_of(c.chart, p);
    const double s = std::max(x.max_abs(), 1e-300);
    r.add((x * v1).max_abs() / (s * v1.max_abs()));
    const HCovector z = phi * x;
    r.add(std::max(z.left.norm(), z.right.norm()) / (s * phi.norm()));
  };
  c.U.for_each([&](int m, int n, const QuatMatrix2& x) { check(x, f(m, n), f(m + 1, n)); });
  c.V.for_each([&](int m, int n, const QuatMatrix2& x) { check(x, f(m, n), f(m, n + 1)); });
  return r;
}

ResidualStats mobius_group_residual(const Connection& c, const HermitianForm& s, double lambda) {
  const GridWindow& w = c.f.window();
  const ProjectiveNet& base = c.base;
  ResidualStats r;
  auto test = [&](const QuatMatrix2& x, int m0, int n0, int m1, int n1) {
    const QuatMatrix2 t = QuatMatrix2::identity() + lambda * x;
    for (int m = std::min(m0, m1) - 1; m <= std::max(m0, m1) + 1; ++m) {
      for (int n = std::min(n0, n1) - 1; n <= std::max(n0, n1) + 1; ++n) {
        if (!w.contains(m, n)) continue;
        r.add(form_value(s, mobius_apply(t, base(m, n))));
      }
    }
  };
  c.U.for_each([&](int m, int n, const QuatMatrix2& x) { test(x, m, n, m + 1, n); });
  c.V.for_each([&](int m, int n, const QuatMatrix2& x) { test(x, m, n, m, n + 1); });
  return r;
}

GeneralChristoffelField general_christoffel(const Connection& c) {
  const GridWindow& w = c.f.window();
  double scale = 0.0;
  for (const auto& x : c.U.data()) scale = std::max(scale, x.max_abs());
  for (const auto& x : c.V.data()) scale = std::max(scale, x.max_abs());
  auto step_m = [&](int m, int n, const QuatMatrix2& x, int dir) {
    return dir > 0 ? x + c.U(m, n) : x - c.U(m - 1, n);
  };
  auto step_n = [&](int m, int n, const QuatMatrix2& x, int dir) {
    return dir > 0 ? x + c.V(m, n) : x - c.V(m, n - 1);
  };
  GeneralChristoffelField field{integrate_center_out(w, QuatMatrix2::zero(), step_m, step_n), c.base, 0.0};
  field.residual = face_residual(field.values, step_m, step_n, [&](const QuatMatrix2& a, const QuatMatrix2& b) {
    return (a - b).max_abs() / std::max(scale, 1e-300);
  });
  if (!(field.residual <= kClosureTol)) {
    throw Error(ErrorKind::ClosureFailure,
                "connection forms do not close (residual " + format_residual(field.residual) + ")");
  }
  return field;
}

AffineNet off_diagonal(const GeneralChristoffelField& field, const AffineChart& chart) {
  AffineNet out{Grid<Quaternion>(field.values.window()), chart};
  field.values.for_each([&](int m, int n, const QuatMatrix2& x) {
    out.values(m, n) = (chart.nuinf * x)(chart.vinf);
  });
  return out;
}

}  // namespace isonet

#include "isonet/grid.hpp"

#include <algorithm>
#include <cmath>

namespace isonet {

void GridWindow::validate() const {
  if (!(m_min <= 0 && 0 <= m_max && n_min <= 0 && 0 <= n_max)) {
    throw Error(ErrorKind::InvalidArgument, "window must contain the origin");
  }
  if (m_count() < 2 || n_count() < 2) throw Error(ErrorKind::InvalidArgument, "window must be at least 2x2");
}

ProjectiveNet lift(const AffineNet& net) {
  ProjectiveNet out{Grid<HPoint>(net.window())};
  net.values.for_each([&](int m, int n, const Quaternion& q) { out.values(m, n) = lift(net.chart, q); });
  return out;
}

AffineNet project(const ProjectiveNet& net, const AffineChart& chart) {
  AffineNet out{Grid<Quaternion>(net.window()), chart};
  net.values.for_each([&](int m, int n, const HPoint& p) {
    try {
      out.values(m, n) = stereo_project(chart, p);
    } catch (const Error& e) {
      throw Error(e.kind(), "cannot project net vertex", GridIndex{m, n});
    }
  });
  return out;
}

EdgeDifferences edge_differences(const AffineNet& net) {
  const GridWindow& w = net.window();
  EdgeDifferences d{Grid<Quaternion>(w.edges1()), Grid<Quaternion>(w.edges2())};
  for (int m = w.m_min; m <= w.m_max; ++m) {
    for (int n = w.n_min; n <= w.n_max; ++n) {
      if (m < w.m_max) d.d1(m, n) = net(m + 1, n) - net(m, n);
      if (n < w.n_max) d.d2(m, n) = net(m, n + 1) - net(m, n);
    }
  }
  return d;
}

Grid<NormalizedCrossRatio> quad_cross_ratios(const AffineNet& net) {
  return quad_cross_ratios(lift(net));
}

Grid<NormalizedCrossRatio> quad_cross_ratios(const ProjectiveNet& net) {
  const GridWindow q = net.window().quads();
  Grid<NormalizedCrossRatio> out(q);
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      try {
        out(m, n) = cross_ratio(net(m, n), net(m + 1, n), net(m + 1, n + 1), net(m, n + 1));
      } catch (const Error&) {
        throw Error(ErrorKind::DegenerateQuad, "quad has coincident consecutive vertices", GridIndex{m, n});
      }
    }
  }
  return out;
}

CrossRatioFactorization CrossRatioFactorization::scaled(double c) const {
  CrossRatioFactorization r = *this;
  for (double& x : r.a) x *= c;
  for (double& x : r.b) x *= c;
  return r;
}

CrossRatioFactorization CrossRatioFactorization::transported(double lambda) const {
  CrossRatioFactorization r = *this;
  for (double& x : r.a) x = x / (1.0 - lambda * x);
  for (double& x : r.b) x = x / (1.0 - lambda * x);
  return r;
}

CrossRatioFactorization fit_factorization(const Grid<NormalizedCrossRatio>& q) {
  const GridWindow& w = q.window();
  const int m0 = std::clamp(0, w.m_min, w.m_max);
  const int n0 = std::clamp(0, w.n_min, w.n_max);
  CrossRatioFactorization f;
  f.m_min = w.m_min;
  f.n_min = w.n_min;
  f.a.resize(w.m_count());
  f.b.resize(w.n_count());
  for (int m = w.m_min; m <= w.m_max; ++m) f.a[m - w.m_min] = -q(m, n0).re;
  const double am0 = f.a[m0 - w.m_min];
  for (int n = w.n_min; n <= w.n_max; ++n) f.b[n - w.n_min] = am0 / q(m0, n).re;
  f.b[n0 - w.n_min] = -1.0;
  double res = 0.0;
  q.for_each([&](int m, int n, const NormalizedCrossRatio& c) {
    const double model = f.a_at(m) / f.b_at(n);
    const double r = std::hypot(c.re - model, c.im) / std::max(std::hypot(c.re, c.im), 1e-300);
    res = std::max(res, std::isfinite(r) ? r : INFINITY);
  });
  f.residual = res;
  return f;
}

CrossRatioFactorization factorize_cross_ratios(const Grid<NormalizedCrossRatio>& q, double tol) {
  CrossRatioFactorization f = fit_factorization(q);
  if (!(f.residual <= tol)) {
    throw Error(ErrorKind::NotFactorizable,
                "cross ratios do not split as a_m/b_n (relative residual " + format_residual(f.residual) + ")");
  }
  return f;
}

Grid<double> rebuild_cross_ratios(const CrossRatioFactorization& f, const GridWindow& quads) {
  Grid<double> out(quads);
  for (int m = quads.m_min; m <= quads.m_max; ++m)
    for (int n = quads.n_min; n <= quads.n_max; ++n) out(m, n) = f.a_at(m) / f.b_at(n);
  return out;
}

std::optional<GridIndex> first_irregular_vertex(const AffineNet& net) {
  const GridWindow& w = net.window();
  for (int m = w.m_min; m < w.m_max; ++m) {
    for (int n = w.n_min; n < w.n_max; ++n) {
      const Quaternion d1 = net(m + 1, n) - net(m, n);
      const Quaternion d2 = net(m, n + 1) - net(m, n);
      const double scale = std::max({net(m, n).norm(), d1.norm(), d2.norm(), 1e-300});
      if (!(d1.norm() > kEpsZero * scale) || !(d2.norm() > kEpsZero * scale)) return GridIndex{m, n};
      const Quaternion r = d2 * inverse(d1, 0.0);
      if (!(r.imag_norm() > kTolPrincipal * r.norm())) return GridIndex{m, n};
    }
  }
  return std::nullopt;
}

namespace {

Classification classify_impl(const ProjectiveNet& net, const AffineNet& chart_net) {
  Classification c;
  if (auto bad = first_irregular_vertex(chart_net)) {
    c.reasons.push_back("irregular at (" + std::to_string(bad->m) + "," + std::to_string(bad->n) + ")");
    return c;
  }
  c.regular = true;
  Grid<NormalizedCrossRatio> q;
  try {
    q = quad_cross_ratios(net);
  } catch (const Error& e) {
    c.regular = false;
    c.reasons.push_back(e.what());
    return c;
  }
  for (const auto& x : q.data()) c.max_im = std::max(c.max_im, x.im);
  c.principal = c.max_im < kTolPrincipal;
  if (!c.principal) {
    c.reasons.push_back("not principal: max |Im q| = " + format_residual(c.max_im));
    return c;
  }
  CrossRatioFactorization f = fit_factorization(q);
  c.factor_residual = f.residual;
  c.isothermic = f.residual < kTolFactor;
  if (c.isothermic) {
    c.factorization = std::move(f);
  } else {
    c.reasons.push_back("cross ratios not factorizable: relative residual " + format_residual(c.factor_residual));
  }
  return c;
}

}  // namespace

Classification classify(const AffineNet& net) { return classify_impl(lift(net), net); }

Classification classify(const ProjectiveNet& net) {
  const AffineChart chart = safe_chart(net.values.data());
  AffineNet affine;
  try {
    affine = project(net, chart);
  } catch (const Error& e) {
    Classification c;
    c.reasons.push_back(e.what());
    return c;
  }
  return classify_impl(net, affine);
}

}  // namespace isonet

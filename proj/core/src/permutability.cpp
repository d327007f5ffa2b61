#include <algorithm>
#include <cmath>

#include "isonet/transforms.hpp"

namespace isonet {

namespace {

ResidualStats pointwise(const ProjectiveNet& a, const ProjectiveNet& b) {
  ResidualStats r;
  a.values.for_each([&](int m, int n, const HPoint& p) { r.add(projective_distance(p, b(m, n))); });
  return r;
}

// Dual of the projection of g to the chart with infinity at c, with factorization fact.
AffineNet dual_at(const ProjectiveNet& g, const HPoint& c, const CrossRatioFactorization& fact) {
  return christoffel(project(g, AffineChart::with_infinity_at(c)), fact, 0.0, kTransformedGate).f_star;
}

ProjectiveNet constant_net(const GridWindow& w, const HPoint& p) { return ProjectiveNet{Grid<HPoint>(w, p)}; }

}  // namespace

TTransformFrame dual_frame(const ChristoffelPair& pair, const TTransformFrame& frame) {
  const AffineChart& ch = pair.f.chart;
  TTransformFrame out{frame.lambda, Grid<QuatMatrix2>(frame.values.window()), frame.residual};
  frame.values.for_each([&](int m, int n, const QuatMatrix2& t) {
    const QuatMatrix2 g = QuatMatrix2::outer(ch.vinf, ch.nuinf) +
                          frame.lambda * QuatMatrix2::outer(lift_vector(ch, pair.f(m, n)),
                                                            ch.nu0 - pair.f_star(m, n) * ch.nuinf);
    out.values(m, n) = renormalized(t * g);
  });
  return out;
}

ResidualStats frame_step_residual(const TTransformFrame& frame, const Connection& c, double lambda) {
  const QuatMatrix2 id = QuatMatrix2::identity();
  ResidualStats r;
  c.U.for_each([&](int m, int n, const QuatMatrix2& x) {
    r.add(projective_matrix_distance(inverse(frame.values(m, n)) * frame.values(m + 1, n), id + lambda * x));
  });
  c.V.for_each([&](int m, int n, const QuatMatrix2& x) {
    r.add(projective_matrix_distance(inverse(frame.values(m, n)) * frame.values(m, n + 1), id + lambda * x));
  });
  return r;
}

ResidualStats mobius_equivalence_residual(const ProjectiveNet& a, const ProjectiveNet& b) {
  if (!(a.window() == b.window())) throw Error(ErrorKind::InvalidArgument, "nets live on different windows");
  const MobiusFit fit = fit_mobius(a.values.data(), b.values.data());
  ResidualStats r;
  a.values.for_each([&](int m, int n, const HPoint& p) {
    r.add(projective_distance(mobius_apply(fit.map, p), b(m, n)));
  });
  return r;
}

double PermutabilityReport::worst() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, std::isnan(e.max) ? INFINITY : e.max);
  return r;
}

PermutabilityReport permutability_suite(const ChristoffelPair& pair, const PermutabilityOptions& opt) {
  const double l = opt.lambda;
  const double mu = opt.mu;
  const AffineChart& ch = pair.f.chart;
  const GridWindow& w = pair.f.window();
  const CrossRatioFactorization& fact = pair.factorization;
  const CrossRatioFactorization fact_l = fact.transported(l);
  PermutabilityReport rep;
  auto put = [&](const char* name, const ResidualStats& s) { rep.entries.push_back(s.named(name)); };

  const Connection c = build_connection(pair);
  const TTransformFrame t = integrate_T(c, l);
  const ProjectiveNet f_l = t_transform(c.base, t);
  const ProjectiveNet star = lift(pair.f_star);

  // T^l C f = D_{-l} T^l f
  const TTransformFrame t_star = dual_frame(pair, t);
  const ProjectiveNet star_l = apply_frame(t_star, star);
  {
    ProjectiveNet t_vinf{Grid<HPoint>(w)};
    t.values.for_each([&](int m, int n, const QuatMatrix2& x) { t_vinf.values(m, n) = HPoint(x * ch.vinf); });
    put("tc.positioning", pointwise(star_l, t_vinf));
    const ChristoffelPair swapped{pair.f_star, pair.f, fact, 0.0};
    put("tc.dual_frame", frame_step_residual(t_star, build_connection(swapped), l));
    put("tc.darboux", darboux_cross_ratio_residual(f_l, star_l, fact_l, -l));
  }

  // C T^l f = T^l D_l f, seen from the point T^l hat
  const DarbouxNet hat1 = darboux_fixed_point(c.base, t, lift(ch, opt.init));
  const ChristoffelPair hat_pair1 = cd_permute(pair, hat1);
  const Connection hat_c1 = build_connection(hat_pair1);
  const TTransformFrame hat_t1 = integrate_T(hat_c1, l);
  const ProjectiveNet x1 = apply_frame(hat_t1, hat1.hat);
  const HPoint c1 = mobius_apply(t.values(0, 0), lift(ch, opt.init));
  put("ct.constant", pointwise(apply_frame(t, hat1.hat), constant_net(w, c1)));
  const AffineNet g1_star = dual_at(f_l, c1, fact_l);
  put("ct.dual", mobius_equivalence_residual(lift(g1_star), x1));

  // Goursat transform relates the duals seen from two different points
  {
    const DarbouxNet hat2 = darboux_fixed_point(c.base, t, lift(ch, opt.second_init));
    const ChristoffelPair hat_pair2 = cd_permute(pair, hat2);
    const ProjectiveNet x2 = apply_frame(integrate_T(build_connection(hat_pair2), l), hat2.hat);
    const HPoint c2 = mobius_apply(t.values(0, 0), lift(ch, opt.second_init));
    const AffineNet moved = goursat(g1_star, AffineChart::with_infinity_at(c2), f_l);
    put("goursat.difference", mobius_equivalence_residual(lift(moved), x2));
  }

  // T^mu D_l f = D_{l-mu} T^mu f through the gauged frame of hat
  {
    const TTransformFrame t_mu = integrate_T(c, mu);
    const ProjectiveNet f_mu = t_transform(c.base, t_mu);
    TTransformFrame hat_mu{mu, Grid<QuatMatrix2>(w), 0.0};
    t_mu.values.for_each([&](int m, int n, const QuatMatrix2& x) {
      const HVector v = c.base(m, n).rep();
      const HCovector phi = annihilator(hat1.hat(m, n));
      const QuatMatrix2 g =
          QuatMatrix2::identity() - (mu / l) * QuatMatrix2::outer(v * inverse(phi(v), 0.0), phi);
      hat_mu.values(m, n) = renormalized(x * g);
    });
    const ProjectiveNet hat_image = apply_frame(hat_mu, hat1.hat);
    put("tmu.positioning", pointwise(hat_image, apply_frame(t_mu, hat1.hat)));
    put("tmu.darboux", darboux_cross_ratio_residual(f_mu, hat_image, fact.transported(mu), l - mu));
    put("tmu.frame", frame_step_residual(hat_mu, hat_c1, mu));
  }

  // The cube of Christoffel, Darboux and T-transforms
  {
    const ProjectiveNet hat_star = lift(hat_pair1.f_star);
    put("cube.vertex", pointwise(apply_frame(t, hat1.hat), apply_frame(t_star, hat_star)));
    const TTransformFrame hat_t_star = dual_frame(hat_pair1, hat_t1);
    const ProjectiveNet hat_star_l = apply_frame(hat_t_star, hat_star);
    put("cube.darboux", darboux_cross_ratio_residual(x1, hat_star_l, fact_l, -l));
    const AffineNet g_star = dual_at(star_l, c1, fact_l);
    put("cube.dual", mobius_equivalence_residual(lift(g_star), hat_star_l));
  }
  return rep;
}

}  // namespace isonet

#include "isonet/suites.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "isonet/generators.hpp"

namespace isonet {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kLawTol = 1e-8;
constexpr double kPermutabilityTol = 1e-7;

ResidualStats flag(bool ok) {
  ResidualStats r;
  r.add(ok ? 0.0 : 1.0);
  return r;
}

void add_residual(InvariantReport& rep, const std::string& name, const Residual& e, double tol) {
  rep.entries.push_back({name, e.max, e.mean, tol, e.max <= tol, false});
}

ResidualStats pointwise(const ProjectiveNet& a, const ProjectiveNet& b) {
  ResidualStats r;
  a.values.for_each([&](int m, int n, const HPoint& p) { r.add(projective_distance(p, b(m, n))); });
  return r;
}

}  // namespace

InvariantReport isothermic_suite(const ProjectiveNet& f) {
  InvariantReport rep;
  rep.suite = "isothermic";
  const Classification c = classify(f);
  rep.add("regular", flag(c.regular), 0.0);
  ResidualStats im;
  im.add(c.max_im);
  rep.add("principal.max_im", im, kTolPrincipal);
  ResidualStats fr;
  fr.add(c.regular && c.principal ? c.factor_residual : INFINITY);
  rep.add("factorization.residual", fr, kTolFactor);
  if (c.factorization) {
    rep.param("a_origin", format_double(c.factorization->a_at(0)));
    rep.param("b_origin", format_double(c.factorization->b_at(0)));
  }
  return rep;
}

InvariantReport christoffel_suite(const AffineNet& f, const AffineNet& f_star) {
  InvariantReport rep;
  rep.suite = "christoffel";
  rep.add("dual_relations", dual_relations_residual(f, f_star), kIdentityTol);
  rep.add("dual_consequences", dual_consequences_residual(f, f_star), kIdentityTol);
  rep.add("cross_ratio_formula", cross_relation_residual(f, f_star), kIdentityTol);
  rep.add("christoffel_identity", christoffel_identity_residual(f, f_star), kIdentityTol);
  try {
    const ChristoffelPair p = make_christoffel_pair(f, f_star);
    ResidualStats r;
    r.add(p.factorization.residual);
    rep.add("edge_products", r, kTolFactor);
  } catch (const Error&) {
    rep.add("edge_products", flag(false), kTolFactor);
  }
  return rep;
}

InvariantReport darboux_suite(const AffineNet& f, const AffineNet& hat, double lambda) {
  InvariantReport rep;
  rep.suite = "darboux";
  rep.param("lambda", format_double(lambda));
  const ChristoffelPair pair = christoffel(f);
  AffineNet h = project(lift(hat), f.chart);
  rep.add("cross_ratio_conditions", darboux_cross_ratio_residual(lift(f), lift(h), pair.factorization, lambda),
          kLawTol);
  rep.add("riccati", riccati_residual(pair.f, pair.f_star, h, lambda), kLawTol);
  const Connection c = build_connection(pair);
  const TTransformFrame t = integrate_T(c, lambda);
  const ProjectiveNet image = apply_frame(t, lift(h));
  rep.add("fixed_point", pointwise(image, ProjectiveNet{Grid<HPoint>(f.window(), image(0, 0))}), kLawTol);
  return rep;
}

InvariantReport t_laws_suite(const AffineNet& f, double lambda1, double lambda2) {
  InvariantReport rep;
  rep.suite = "t-laws";
  rep.param("lambda1", format_double(lambda1));
  rep.param("lambda2", format_double(lambda2));
  const ChristoffelPair pair = christoffel(f);
  const Connection c = build_connection(pair);
  rep.add("fixed_points", fixed_point_residual(c, lambda1), kIdentityTol);
  rep.add("rank_one_structure", connection_structure_residual(c), kIdentityTol);
  rep.add("maurer_cartan", maurer_cartan_residual(c, lambda1), kIdentityTol);
  const TTransformFrame t = integrate_T(c, lambda1);
  ResidualStats closure;
  closure.add(t.residual);
  rep.add("frame_closure", closure, kIdentityTol);
  const ProjectiveNet fl = t_transform(c.base, t);
  rep.add("cross_ratio_law", t_cross_ratio_law_residual(c, fl, lambda1), kLawTol);
  rep.add("vertex_stars", vertex_star_residual(c.base, t), kIdentityTol);
  rep.add("euclidean_gauge", gauge_equivalence_residual(pair, lambda1), kIdentityTol);
  const GroupCheck g = t_group_check(c, lambda1, lambda2);
  ResidualStats comp;
  comp.add(g.composition);
  ResidualStats inv;
  inv.add(g.inverse);
  rep.add("group_composition", comp, 1e-7);
  rep.add("group_inverse", inv, kLawTol);
  // sphere preservation, when the net lies in Im H
  const ResidualStats s3 = [&] {
    ResidualStats r;
    const HermitianForm s = HermitianForm::imaginary_sphere();
    c.base.values.for_each([&](int, int, const HPoint& p) { r.add(form_value(s, p)); });
    return r;
  }();
  if (s3.max < kIdentityTol) {
    rep.add("mobius_group", mobius_group_residual(c, HermitianForm::imaginary_sphere(), lambda1), kIdentityTol);
    ResidualStats r;
    fl.values.for_each([&](int, int, const HPoint& p) { r.add(form_value(HermitianForm::imaginary_sphere(), p)); });
    rep.add("sphere_preserved", r, kLawTol);
  }
  return rep;
}

InvariantReport permutability_report(const AffineNet& f, const PermutabilityOptions& opt) {
  InvariantReport rep;
  rep.suite = "permutability";
  rep.param("lambda", format_double(opt.lambda));
  rep.param("mu", format_double(opt.mu));
  const PermutabilityReport r = permutability_suite(christoffel(f), opt);
  for (const auto& e : r.entries) add_residual(rep, e.name, e, kPermutabilityTol);
  return rep;
}

InvariantReport horospherical_suite(const HolomorphicNet& g, const HolomorphicNet& h,
                                    const HorosphericalOptions& opt) {
  InvariantReport rep;
  rep.suite = "horospherical";
  rep.param("lambda", format_double(opt.lambda));
  rep.param("mu", format_double(opt.mu));
  const double l = opt.lambda;

  const MinimalNet minimal = weierstrass_minimal(g, h);
  ResidualStats closure;
  closure.add(minimal.closure_residual);
  rep.add("weierstrass_closure", closure, 1e-10);
  ResidualStats pure;
  pure.add(minimal.purity_residual);
  rep.add("weierstrass_purity", pure, 1e-10);
  ResidualStats unit;
  minimal.gauss.values.for_each([&](int, int, const Quaternion& x) {
    unit.add(std::abs(x.norm() - 1.0));
    unit.add(std::abs(x.w));
  });
  rep.add("gauss_on_sphere", unit, 1e-10);
  rep.add("minimal_dual_relations", dual_relations_residual(minimal.gauss, minimal.surface_net()), kIdentityTol);

  const ComplexFrame tau = integrate_H(g, h, l);
  ResidualStats hc;
  hc.add(tau.residual);
  rep.add("system_h_closure", hc, kIdentityTol);

  const HorosphericalNet sharp = horospherical_from_gauss(g, h, l, opt.p0);
  const HorosphericalNet bryant = bryant_cousin(g, h, l);
  const DualCheckReport dual = dual_check(sharp, bryant);
  rep.add("sharp_darboux", dual.sharp_darboux, kLawTol);
  rep.add("bryant_darboux", dual.bryant_darboux, kLawTol);
  rep.add("gauss_map_identity", dual.gauss_identity, kLawTol);
  rep.add("sharp_in_s3", s3_residual(sharp.surface), kIdentityTol);
  rep.add("bryant_in_s3", s3_residual(bryant.surface), kIdentityTol);
  double off = INFINITY;
  for (const auto* net : {&sharp.surface, &bryant.surface})
    net->values.for_each([&](int, int, const HPoint& p) { off = std::min(off, boundary_distance(p)); });
  rep.add_lower_bound("boundary_distance", off, kBoundaryTol);
  ResidualStats cj;
  bryant.gauss_hyperbolic.values.for_each([&](int, int, const Quaternion& x) {
    cj.add(std::hypot(x.w, x.x) / std::max(1.0, x.norm()));
  });
  rep.add("gauss_in_cj", cj, kIdentityTol);

  // T-transform of the minimal net is the Bryant net up to a fixed Moebius transformation
  const ChristoffelPair mp = make_christoffel_pair(minimal.surface_net(), minimal.gauss);
  const Connection mc = build_connection(mp);
  rep.add("equivalence_lemma", mobius_equivalence_residual(t_transform(mc.base, integrate_T(mc, l)), bryant.surface),
          kPermutabilityTol);

  const HorosphericalNet moved = horospherical_t_transform(sharp, opt.mu);
  rep.add("t_transform_darboux", horospherical_darboux_residual(moved), kLawTol);
  rep.add("t_transform_in_s3", s3_residual(moved.surface), kIdentityTol);

  // Ball images stay inside the unit ball; the hyperbolic coordinates have positive height
  const Grid<ImaginaryQuaternion> hyperbolic = ccousin_coords(tau);
  double rmax = 0.0;
  const Grid<ImaginaryQuaternion> ball = poincare_ball(hyperbolic);
  for (const auto& p : ball.data()) rmax = std::max(rmax, p.norm());
  double height = INFINITY;
  for (const auto& p : hyperbolic.data()) height = std::min(height, p.x);
  rep.add_lower_bound("unit_ball_margin", 1.0 - rmax, 0.0);
  rep.add_lower_bound("height", height, 0.0);

  // Two base points over the same Gauss map: the duals differ by a Goursat transform
  PermutabilityOptions po;
  po.lambda = -l;
  po.mu = opt.mu;
  po.init = opt.p0.to_quaternion();
  po.second_init = opt.p1.to_quaternion();
  AffineNet n = sharp.gauss_hyperbolic;
  AffineNet nstar{Grid<Quaternion>(n.window()), n.chart};
  h.values.for_each([&](int m, int k, const Complex& z) { nstar.values(m, k) = -(Quaternion::j() * to_quaternion(z)); });
  const PermutabilityReport pr = permutability_suite(make_christoffel_pair(n, nstar), po);
  for (const auto& e : pr.entries) {
    if (e.name == "goursat.difference") add_residual(rep, "cousins_goursat", e, kPermutabilityTol);
  }
  return rep;
}

double similarity_distance(const Grid<ImaginaryQuaternion>& a, const Grid<ImaginaryQuaternion>& b) {
  const std::size_t n = a.size();
  if (n != b.size() || n < 3) throw Error(ErrorKind::InvalidArgument, "similarity fit needs matching nets");
  Eigen::Matrix3Xd src(3, n);
  Eigen::Matrix3Xd dst(3, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = a.data()[k];
    const auto& q = b.data()[k];
    src.col(k) << p.x, p.y, p.z;
    dst.col(k) << q.x, q.y, q.z;
  }
  const Eigen::Vector3d centre = dst.rowwise().mean();
  const double size = (dst.colwise() - centre).colwise().norm().maxCoeff();
  double best = INFINITY;
  // Proper and improper similarities
  for (double flip : {1.0, -1.0}) {
    Eigen::Matrix3Xd s = src;
    s.row(2) *= flip;
    const Eigen::Matrix4d t = Eigen::umeyama(s, dst, true);
    const Eigen::Matrix3Xd fitted = (t.topLeftCorner<3, 3>() * s).colwise() + t.topRightCorner<3, 1>();
    best = std::min(best, (fitted - dst).colwise().norm().maxCoeff() / std::max(size, 1e-300));
  }
  return best;
}

}  // namespace isonet

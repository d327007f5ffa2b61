#pragma once

#include <utility>

#include "isonet/transforms.hpp"

namespace isonet {

struct HolomorphicNet {
  Grid<Complex> values;

  const GridWindow& window() const { return values.window(); }
  const Complex& operator()(int m, int n) const { return values(m, n); }
  // As a net in C = span{1, i} of H, standard chart.
  AffineNet affine() const;
};

// Throws InvalidArgument if some value has j or k components.
HolomorphicNet holomorphic_from_affine(const AffineNet& net);

// g = exp(2 pi (m + i n)/N), h = 1/g.
std::pair<HolomorphicNet, HolomorphicNet> catenoid_pair(int N, const GridWindow& w);

struct MinimalNet {
  Grid<ImaginaryQuaternion> surface;
  AffineNet gauss;  // unit imaginary values
  double closure_residual = 0.0;
  double purity_residual = 0.0;  // max |Re f| relative to the size of the net, before it is dropped

  AffineNet surface_net() const;
};

// Integrates d f = 1/2 (i - g j) j (d h) (i - g+ j); throws NotChristoffelPair, ClosureFailure.
MinimalNet weierstrass_minimal(const HolomorphicNet& g, const HolomorphicNet& h);
// Christoffel transform of the stereographic image of g on S^2; throws NotIsothermic.
MinimalNet minimal_cousin(const HolomorphicNet& g);

struct ComplexMatrix2 {
  Complex c11, c12, c21, c22;

  static ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  Complex det() const { return c11 * c22 - c12 * c21; }
  double max_abs() const;
};

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);
// Throws SingularMatrix.
ComplexMatrix2 inverse(const ComplexMatrix2& a);

// id + lambda [[g dh, -g dh g+], [dh, -dh g+]]
ComplexMatrix2 h_step(const Complex& g, const Complex& dh, const Complex& g_next, double lambda);

struct ComplexFrame {
  double lambda = 0.0;
  Grid<ComplexMatrix2> values;
  double residual = 0.0;
};

ComplexFrame integrate_H(const HolomorphicNet& g, const HolomorphicNet& h, double lambda);
// J^{-1} tau J with J = diag(1, j): the frame acting on H^2.
QuatMatrix2 quaternionic(const ComplexMatrix2& tau);
TTransformFrame quaternionic_frame(const ComplexFrame& frame);

// Factorization a = d1 h d1 g, b = d2 h d2 g of a complex Christoffel pair.
CrossRatioFactorization holomorphic_factorization(const HolomorphicNet& g, const HolomorphicNet& h);

struct HorosphericalNet {
  ProjectiveNet surface;        // in Im H + infinity, off C j + infinity
  AffineNet gauss_hyperbolic;   // values in C j
  CrossRatioFactorization gauss_factorization;
  double lambda = 0.0;
  double darboux_lambda = 0.0;  // parameter of the Darboux pair (gauss, surface)
  HolomorphicNet g;             // secondary Gauss map
  HolomorphicNet h;             // its Christoffel transform
};

inline constexpr double kBoundaryTol = 1e-9;

// f# = (T^{-lambda})^{-1} (p0, 1) with T = J^{-1} tau J; throws BadBasePoint, BoundaryHit.
HorosphericalNet horospherical_from_gauss(const HolomorphicNet& g, const HolomorphicNet& h, double lambda,
                                          const ImaginaryQuaternion& p0);
// f = J^{-1} tau^lambda (i, j) / sqrt 2 with Gauss map n^lambda = J^{-1} tau^lambda (g, 1) j.
HorosphericalNet bryant_cousin(const HolomorphicNet& g, const HolomorphicNet& h, double lambda);

// Darboux residual between the surface and its hyperbolic Gauss map.
ResidualStats horospherical_darboux_residual(const HorosphericalNet& net);
// Form value of the surface against Im H and the minimal chordal distance to C j.
ResidualStats s3_residual(const ProjectiveNet& net);
double boundary_distance(const HPoint& p);

// T^mu of a horospherical net through the gauged frame of its Gauss map.
HorosphericalNet horospherical_t_transform(const HorosphericalNet& net, double mu);

// Coordinate models of the cousin pictures.
// (0, Re, Im) of (tau11 g + tau12)/(tau21 g + tau22) in the j, k slots.
Grid<ImaginaryQuaternion> gauss_coords(const ComplexFrame& frame, const HolomorphicNet& g);
// (Re det, Re w, Im w)/(|tau21|^2 + |tau22|^2), w = tau11 conj tau21 + tau12 conj tau22.
Grid<ImaginaryQuaternion> ccousin_coords(const ComplexFrame& frame);
// (x + e1)/|x + e1|^2
Grid<ImaginaryQuaternion> poincare_ball(const Grid<ImaginaryQuaternion>& points);

struct DualCheckReport {
  ResidualStats gauss_identity;  // n# (quaternionic T-transform of n) vs n^lambda
  ResidualStats sharp_darboux;
  ResidualStats bryant_darboux;
};

// Both nets must come from the same g, h and lambda.
DualCheckReport dual_check(const HorosphericalNet& f_sharp, const HorosphericalNet& f);

}  // namespace isonet

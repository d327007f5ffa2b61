#pragma once

#include "isonet/io.hpp"

namespace isonet {

// Invariant suites shared by the command line tool and the acceptance runner.
// Each returns every residual it measured, even when some check fails.

InvariantReport isothermic_suite(const ProjectiveNet& f);
InvariantReport christoffel_suite(const AffineNet& f, const AffineNet& f_star);
// hat is tested as D_lambda f for the factorization normalized by classify().
InvariantReport darboux_suite(const AffineNet& f, const AffineNet& hat, double lambda);
InvariantReport t_laws_suite(const AffineNet& f, double lambda1, double lambda2);
InvariantReport permutability_report(const AffineNet& f, const PermutabilityOptions& opt);

struct HorosphericalOptions {
  double lambda = 0.25;
  double mu = 0.1;
  ImaginaryQuaternion p0{1.0, 0.0, 0.0};
  ImaginaryQuaternion p1{0.7, 0.3, -0.2};  // second base point for the Goursat check
};

InvariantReport horospherical_suite(const HolomorphicNet& g, const HolomorphicNet& h,
                                    const HorosphericalOptions& opt);

// Max over vertices of |surface|-distance after the best similarity a x + t
// (a > 0 real, t imaginary) taking a onto b, relative to the size of b.
double similarity_distance(const Grid<ImaginaryQuaternion>& a, const Grid<ImaginaryQuaternion>& b);

}  // namespace isonet

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isonet/grid.hpp"
#include "isonet/residual.hpp"

namespace isonet {

// ---------------------------------------------------------------------------
// Christoffel transform

struct ChristoffelPair {
  AffineNet f;
  AffineNet f_star;  // lives in the same affine chart as f
  CrossRatioFactorization factorization;
  double closure_residual = 0.0;
};

inline constexpr double kClosureTol = 1e-8;
// Input gate for nets that are themselves outputs of frame products (their
// cross ratios carry the round-off of long matrix products).
inline constexpr double kTransformedGate = 1e-6;

// Dual net with edges a_m (d1 f)^{-1}, b_n (d2 f)^{-1} and f_star(0,0) = seed.
// Rejects nets whose cross ratios deviate from a_m/b_n by more than tol (relative).
ChristoffelPair christoffel(const AffineNet& f, const CrossRatioFactorization& fact,
                            const Quaternion& seed = 0.0, double tol = kTolFactor);
// Uses the factorization found by classify().
ChristoffelPair christoffel(const AffineNet& f, const Quaternion& seed = 0.0);
// Recovers a, b from (d f*)(d f); throws NotChristoffelPair.
ChristoffelPair make_christoffel_pair(const AffineNet& f, const AffineNet& f_star, double tol = 1e-8);

// Relative residuals of the dual relations, their consequences with the
// diagonal d, and the cross ratio formula through the dual net.
ResidualStats dual_relations_residual(const AffineNet& f, const AffineNet& f_star);
ResidualStats dual_consequences_residual(const AffineNet& f, const AffineNet& f_star);
ResidualStats cross_relation_residual(const AffineNet& f, const AffineNet& f_star);
// max |q - (d1 f* d1 f)(d2 f* d2 f)^{-1}| on normalized values (absolute).
ResidualStats christoffel_identity_residual(const AffineNet& f, const AffineNet& f_star);

// ---------------------------------------------------------------------------
// Connection U = f u phi(m+1,n), V = f v phi(m,n+1)

struct Connection {
  AffineNet f;  // the projection the forms were built in
  ProjectiveNet base;
  AffineChart chart;
  Grid<QuatMatrix2> U;  // on edges1
  Grid<QuatMatrix2> V;  // on edges2
  Grid<double> a;       // u d1 f, real for Christoffel pairs
  Grid<double> b;       // v d2 f
  std::optional<CrossRatioFactorization> factorization;
};

Connection build_connection(const ChristoffelPair& pair);
// Arbitrary forms u, v (not necessarily closing); a, b hold Re(u d1 f), Re(v d2 f).
Connection build_connection_from_forms(const AffineNet& f, const Grid<Quaternion>& u,
                                       const Grid<Quaternion>& v);

// (1 + lambda U) f = f (1 - lambda a), (1 + lambda U) f+ = f+ and likewise for V.
ResidualStats fixed_point_residual(const Connection& c, double lambda);
// (1+lU)(1+lV') - (1+lV)(1+lU'') relative to the size of the factors.
ResidualStats maurer_cartan_residual(const Connection& c, double lambda);
// U f+ = 0 and phi U = 0 (rank one structure).
ResidualStats connection_structure_residual(const Connection& c);
// For nets on the null cone of s: form values of (1 + lambda U) and (1 + lambda V)
// applied to the vertices of the adjacent quads.
ResidualStats mobius_group_residual(const Connection& c, const HermitianForm& s, double lambda);

struct GeneralChristoffelField {
  Grid<QuatMatrix2> values;
  ProjectiveNet base;
  double residual = 0.0;
};

GeneralChristoffelField general_christoffel(const Connection& c);
// nu_inf F v_inf for the given chart.
AffineNet off_diagonal(const GeneralChristoffelField& field, const AffineChart& chart);

// ---------------------------------------------------------------------------
// T-transform

struct TTransformFrame {
  double lambda = 0.0;
  Grid<QuatMatrix2> values;
  double residual = 0.0;
};

inline constexpr double kLambdaMargin = 1e-9;

// Throws SingularLambda naming the first edge with |1 - lambda a| < margin.
void check_lambda(const Connection& c, double lambda);
TTransformFrame integrate_T(const Connection& c, double lambda);
// Image T f; throws DegenerateImage if consecutive image points coincide.
ProjectiveNet t_transform(const ProjectiveNet& f, const TTransformFrame& frame);
// Image of an arbitrary net under the frame (no regularity requirement).
ProjectiveNet apply_frame(const TTransformFrame& frame, const ProjectiveNet& g);
// max |q^lambda - q (1 - lambda b)/(1 - lambda a)| over quads.
ResidualStats t_cross_ratio_law_residual(const Connection& c, const ProjectiveNet& f_lambda, double lambda);
// Max distance between T_{m+-1} f_{m+-1} and T_m f_{m+-1} (and likewise in n).
ResidualStats vertex_star_residual(const ProjectiveNet& f, const TTransformFrame& frame);

// Frame of the system with steps id + v_inf d f nu_inf + lambda v0 u nu0,
// started at the Euclidean frame id + v_inf f(0,0) nu_inf.
TTransformFrame integrate_euclidean_frame(const ChristoffelPair& pair, double lambda);
// max over vertices of the PGl distance between F (F^0)^{-1} and T.
ResidualStats gauge_equivalence_residual(const ChristoffelPair& pair, double lambda);

struct GroupCheck {
  double composition = 0.0;  // T~^{l2} T^{l1} f  vs  T^{l1+l2} f
  double inverse = 0.0;      // T~^{-l1} T^{l1} f  vs  f
};

// The frame of the transformed net is rebuilt from scratch: the transformed
// net is projected, dualized with the transported factorization and integrated.
GroupCheck t_group_check(const Connection& c, double lambda1, double lambda2);

// ---------------------------------------------------------------------------
// Darboux transform

struct DarbouxNet {
  ProjectiveNet hat;
  double lambda = 0.0;
  std::optional<AffineNet> affine;  // set by the Riccati route
  double residual = 0.0;
};

DarbouxNet darboux_riccati(const ChristoffelPair& pair, double lambda, const Quaternion& init);
DarbouxNet darboux_fixed_point(const ProjectiveNet& f, const TTransformFrame& frame, const HPoint& init);

// max |[f, f+, hat+, hat] - lambda a| over both edge directions.
ResidualStats darboux_cross_ratio_residual(const ProjectiveNet& f, const ProjectiveNet& hat,
                                    const CrossRatioFactorization& fact, double lambda);
// Relative residual of d hat = lambda (hat - f) d f* (hat - f)+.
ResidualStats riccati_residual(const AffineNet& f, const AffineNet& f_star, const AffineNet& hat, double lambda);

// Fourth net with [f, hat2, hat, hat1] = lambda1/lambda2 at every vertex.
DarbouxNet bianchi_permute(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2);
ResidualStats bianchi_relation_residual(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2,
                                 const DarbouxNet& hat);
// Worst sphere rank residual of the eight point cells of the Bianchi cube
// and of the Ribaucour cells of all four Darboux pairs.
ResidualStats hexahedron_residual(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2,
                           const DarbouxNet& hat);

// (hat, f* + (1/lambda)(hat - f)^{-1}) with the pair's factorization.
ChristoffelPair cd_permute(const ChristoffelPair& pair, const DarbouxNet& hat);

// ---------------------------------------------------------------------------
// Goursat transform

// Dual of the projection of base to new_chart, obtained from f_star (dual of
// the projection to f_star.chart) edge by edge; f~*(0,0) = seed.
AffineNet goursat(const AffineNet& f_star, const AffineChart& new_chart, const ProjectiveNet& base,
                  const Quaternion& seed = 0.0);
ChristoffelPair goursat(const ChristoffelPair& pair, const AffineChart& new_chart);

// Sorted edge lengths compared after normalizing by the largest; 0 iff the
// spectra agree up to scale.
double edge_spectrum_distance(const AffineNet& a, const AffineNet& b);
// Max relative difference of edge vectors (equality up to translation).
double edge_difference_distance(const AffineNet& a, const AffineNet& b);

// ---------------------------------------------------------------------------
// Verification helpers shared by the permutability checks

// Frame of the dual net of a pair: T (v_inf nu_inf + lambda (v0 + v_inf f)(nu0 - f* nu_inf)).
TTransformFrame dual_frame(const ChristoffelPair& pair, const TTransformFrame& frame);
// Step-wise deviation of frame from a real multiple of a T-frame of c:
// max PGl distance of T_m^{-1} T_{m+1} and 1 + lambda U_m.
ResidualStats frame_step_residual(const TTransformFrame& frame, const Connection& c, double lambda);
// Best-fit Moebius comparison of two nets over all vertices.
ResidualStats mobius_equivalence_residual(const ProjectiveNet& a, const ProjectiveNet& b);

struct PermutabilityReport {
  std::vector<Residual> entries;
  double worst() const;
};

struct PermutabilityOptions {
  double lambda = 0.3;
  double mu = 0.1;
  Quaternion init;          // Darboux initial point (affine, chart of pair.f)
  Quaternion second_init;   // second Darboux initial point for the G-difference check
};

PermutabilityReport permutability_suite(const ChristoffelPair& pair, const PermutabilityOptions& opt);

}  // namespace isonet

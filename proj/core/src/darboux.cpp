#include <algorithm>
#include <cmath>

#include "isonet/integrate.hpp"
#include "isonet/transforms.hpp"

namespace isonet {

namespace {

constexpr double kRiccatiClosureTol = 1e-7;

}  // namespace

DarbouxNet darboux_riccati(const ChristoffelPair& pair, double lambda, const Quaternion& init) {
  if (lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "Darboux parameter must be nonzero");
  const AffineNet& f = pair.f;
  const GridWindow& w = f.window();
  const EdgeDifferences d = edge_differences(f);
  const EdgeDifferences s = edge_differences(pair.f_star);
  const Quaternion d0 = init - f(0, 0);
  if (!(d0.norm() > kEpsZero * std::max(1.0, f(0, 0).norm()))) {
    throw Error(ErrorKind::BadInitialPoint, "initial point coincides with the net", GridIndex{0, 0});
  }

  // D = hat - f; forward D+ = (1 - l D u)^{-1}(D - df), backward D = (D+ + df)(1 + l u D+)^{-1}.
  auto advance = [&](const Quaternion& x, const Quaternion& df, const Quaternion& u, int dir, int m, int n) {
    try {
      if (dir > 0) return inverse(1.0 - lambda * x * u, 1.0) * (x - df);
      return (x + df) * inverse(1.0 + lambda * u * x, 1.0);
    } catch (const Error&) {
      throw Error(ErrorKind::BadInitialPoint, "transform reaches infinity of the chart", GridIndex{m, n});
    }
  };
  auto step_m = [&](int m, int n, const Quaternion& x, int dir) {
    const int e = dir > 0 ? m : m - 1;
    return advance(x, d.d1(e, n), s.d1(e, n), dir, m, n);
  };
  auto step_n = [&](int m, int n, const Quaternion& x, int dir) {
    const int e = dir > 0 ? n : n - 1;
    return advance(x, d.d2(m, e), s.d2(m, e), dir, m, n);
  };
  const Grid<Quaternion> diff = integrate_center_out(w, d0, step_m, step_n);
  DarbouxNet out;
  out.lambda = lambda;
  out.residual = face_residual(diff, step_m, step_n, [](const Quaternion& a, const Quaternion& b) {
    return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
  });
  if (!(out.residual <= kRiccatiClosureTol)) {
    throw Error(ErrorKind::ClosureFailure,
                "Riccati system does not close (residual " + format_residual(out.residual) + ")");
  }
  AffineNet hat{Grid<Quaternion>(w), f.chart};
  diff.for_each([&](int m, int n, const Quaternion& x) { hat.values(m, n) = f(m, n) + x; });
  out.hat = lift(hat);
  out.affine = std::move(hat);
  return out;
}

DarbouxNet darboux_fixed_point(const ProjectiveNet& f, const TTransformFrame& frame, const HPoint& init) {
  if (frame.lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "Darboux parameter must be nonzero");
  const HPoint c = mobius_apply(frame.values(0, 0), init);
  DarbouxNet out;
  out.lambda = frame.lambda;
  out.hat.values = Grid<HPoint>(f.window());
  frame.values.for_each([&](int m, int n, const QuatMatrix2& t) {
    try {
      out.hat.values(m, n) = mobius_apply(inverse(t), c);
    } catch (const Error& e) {
      throw Error(ErrorKind::SingularMatrix, e.what(), GridIndex{m, n});
    }
  });
  return out;
}

ResidualStats darboux_cross_ratio_residual(const ProjectiveNet& f, const ProjectiveNet& hat,
                                    const CrossRatioFactorization& fact, double lambda) {
  const GridWindow& w = f.window();
  ResidualStats r;
  f.values.for_each([&](int m, int n, const HPoint& p) {
    if (m < w.m_max) {
      const NormalizedCrossRatio q = cross_ratio(p, f(m + 1, n), hat(m + 1, n), hat(m, n));
      r.add(std::hypot(q.re - lambda * fact.a_at(m), q.im));
    }
    if (n < w.n_max) {
      const NormalizedCrossRatio q = cross_ratio(p, f(m, n + 1), hat(m, n + 1), hat(m, n));
      r.add(std::hypot(q.re - lambda * fact.b_at(n), q.im));
    }
  });
  return r;
}

ResidualStats riccati_residual(const AffineNet& f, const AffineNet& f_star, const AffineNet& hat, double lambda) {
  const EdgeDifferences s = edge_differences(f_star);
  const EdgeDifferences h = edge_differences(hat);
  ResidualStats r;
  auto acc = [&](const Quaternion& dh, const Quaternion& x, const Quaternion& u, const Quaternion& x1) {
    const Quaternion rhs = lambda * (x * u * x1);
    r.add((dh - rhs).norm() / std::max({dh.norm(), rhs.norm(), 1e-300}));
  };
  h.d1.for_each([&](int m, int n, const Quaternion& dh) {
    acc(dh, hat(m, n) - f(m, n), s.d1(m, n), hat(m + 1, n) - f(m + 1, n));
  });
  h.d2.for_each([&](int m, int n, const Quaternion& dh) {
    acc(dh, hat(m, n) - f(m, n), s.d2(m, n), hat(m, n + 1) - f(m, n + 1));
  });
  return r;
}

DarbouxNet bianchi_permute(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2) {
  const double l1 = hat1.lambda;
  const double l2 = hat2.lambda;
  if (l2 == 0.0 || !(std::abs(l1 - l2) > 1e-12 * std::max(std::abs(l1), std::abs(l2)))) {
    throw Error(ErrorKind::DegenerateConfiguration, "Bianchi permutability needs two different parameters");
  }
  DarbouxNet out;
  out.lambda = l2;
  out.hat.values = Grid<HPoint>(f.window());
  f.values.for_each([&](int m, int n, const HPoint& p) {
    try {
      out.hat.values(m, n) = solve_fourth_point(p, hat2.hat(m, n), hat1.hat(m, n), l1 / l2);
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateConfiguration, e.what(), GridIndex{m, n});
    }
  });
  return out;
}

ResidualStats bianchi_relation_residual(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2,
                                 const DarbouxNet& hat) {
  const double target = hat1.lambda / hat2.lambda;
  ResidualStats r;
  f.values.for_each([&](int m, int n, const HPoint& p) {
    const NormalizedCrossRatio q = cross_ratio(p, hat2.hat(m, n), hat.hat(m, n), hat1.hat(m, n));
    r.add(std::hypot(q.re - target, q.im));
  });
  return r;
}

ResidualStats hexahedron_residual(const ProjectiveNet& f, const DarbouxNet& hat1, const DarbouxNet& hat2,
                           const DarbouxNet& hat) {
  const GridWindow& w = f.window();
  const ProjectiveNet* nets[4] = {&f, &hat1.hat, &hat2.hat, &hat.hat};
  const int pairs[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  ResidualStats r;
  for (int m = w.m_min; m <= w.m_max; ++m) {
    for (int n = w.n_min; n <= w.n_max; ++n) {
      const int dirs[2][2] = {{1, 0}, {0, 1}};
      for (const auto& dv : dirs) {
        const int m1 = m + dv[0];
        const int n1 = n + dv[1];
        if (!w.contains(m1, n1)) continue;
        std::vector<HPoint> cell;
        for (const ProjectiveNet* g : nets) {
          cell.push_back((*g)(m, n));
          cell.push_back((*g)(m1, n1));
        }
        r.add(sphere_rank_residual(cell, 4));
      }
      if (m < w.m_max && n < w.n_max) {
        for (const auto& pr : pairs) {
          std::vector<HPoint> cell;
          for (int k : pr) {
            const ProjectiveNet& g = *nets[k];
            cell.insert(cell.end(), {g(m, n), g(m + 1, n), g(m + 1, n + 1), g(m, n + 1)});
          }
          r.add(sphere_rank_residual(cell, 4));
        }
      }
    }
  }
  return r;
}

ChristoffelPair cd_permute(const ChristoffelPair& pair, const DarbouxNet& hat) {
  const AffineChart& ch = pair.f.chart;
  const AffineNet h = project(hat.hat, ch);
  AffineNet tilde{Grid<Quaternion>(h.window()), ch};
  h.values.for_each([&](int m, int n, const Quaternion& x) {
    const Quaternion diff = x - pair.f(m, n);
    try {
      tilde.values(m, n) = pair.f_star(m, n) + (1.0 / hat.lambda) * inverse(diff, std::max(1.0, x.norm()));
    } catch (const Error&) {
      throw Error(ErrorKind::DegenerateDifference, "Darboux transform meets the net", GridIndex{m, n});
    }
  });
  return ChristoffelPair{h, tilde, pair.factorization, 0.0};
}

}  // namespace isonet

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isonet/error.hpp"
#include "isonet/projective.hpp"

namespace isonet {

// Inclusive rectangle of lattice indices.
struct GridWindow {
  int m_min = 0;
  int m_max = 0;
  int n_min = 0;
  int n_max = 0;

  static GridWindow symmetric(int irg, int jrg) { return {-irg, irg, -jrg, jrg}; }

  int m_count() const { return m_max - m_min + 1; }
  int n_count() const { return n_max - n_min + 1; }
  std::size_t size() const {
    return m_count() > 0 && n_count() > 0 ? static_cast<std::size_t>(m_count()) * n_count() : 0;
  }
  bool contains(int m, int n) const { return m >= m_min && m <= m_max && n >= n_min && n <= n_max; }
  // Row-major in (m, n): m is the slow index.
  std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m - m_min) * n_count() + (n - n_min);
  }
  // Window of elementary quadrilaterals (indexed by their lower-left vertex).
  GridWindow quads() const { return {m_min, m_max - 1, n_min, n_max - 1}; }
  // Windows of edges in direction 1 and 2.
  GridWindow edges1() const { return {m_min, m_max - 1, n_min, n_max}; }
  GridWindow edges2() const { return {m_min, m_max, n_min, n_max - 1}; }

  // Throws InvalidArgument unless the origin is inside and the window is at least 2x2.
  void validate() const;
  bool operator==(const GridWindow&) const = default;
};

template <class T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(GridWindow w, const T& fill = T{}) : window_(w), data_(w.size(), fill) {}

  const GridWindow& window() const { return window_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int m, int n) { return data_[window_.index(m, n)]; }
  const T& operator()(int m, int n) const { return data_[window_.index(m, n)]; }
  T& at(int m, int n) {
    check(m, n);
    return data_[window_.index(m, n)];
  }
  const T& at(int m, int n) const {
    check(m, n);
    return data_[window_.index(m, n)];
  }

  std::vector<T>& data() & { return data_; }
  const std::vector<T>& data() const& { return data_; }
  // A range-for over the data of a temporary grid would dangle.
  std::vector<T> data() && { return std::move(data_); }

  template <class F>
  void for_each(F&& f) const {
    for (int m = window_.m_min; m <= window_.m_max; ++m)
      for (int n = window_.n_min; n <= window_.n_max; ++n) f(m, n, (*this)(m, n));
  }

  template <class F>
  auto map(F&& f) const -> Grid<decltype(f(std::declval<const T&>()))> {
    Grid<decltype(f(std::declval<const T&>()))> out(window_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data()[k] = f(data_[k]);
    return out;
  }

 private:
  void check(int m, int n) const {
    if (!window_.contains(m, n)) throw Error(ErrorKind::InvalidArgument, "index outside window", GridIndex{m, n});
  }

  GridWindow window_;
  std::vector<T> data_;
};

struct AffineNet {
  Grid<Quaternion> values;
  AffineChart chart = AffineChart::standard();

  const GridWindow& window() const { return values.window(); }
  const Quaternion& operator()(int m, int n) const { return values(m, n); }
};

struct ProjectiveNet {
  Grid<HPoint> values;

  const GridWindow& window() const { return values.window(); }
  const HPoint& operator()(int m, int n) const { return values(m, n); }
};

ProjectiveNet lift(const AffineNet& net);
// Throws PointAtInfinity naming the vertex.
AffineNet project(const ProjectiveNet& net, const AffineChart& chart);

struct EdgeDifferences {
  Grid<Quaternion> d1;  // on window.edges1()
  Grid<Quaternion> d2;  // on window.edges2()
};

EdgeDifferences edge_differences(const AffineNet& net);

// Per-quad normalized cross ratios on window.quads().
Grid<NormalizedCrossRatio> quad_cross_ratios(const AffineNet& net);
Grid<NormalizedCrossRatio> quad_cross_ratios(const ProjectiveNet& net);

struct CrossRatioFactorization {
  int m_min = 0;
  int n_min = 0;
  std::vector<double> a;  // a[m - m_min] on edges m -> m+1
  std::vector<double> b;  // b[n - n_min] on edges n -> n+1
  double residual = 0.0;

  double a_at(int m) const { return a.at(static_cast<std::size_t>(m - m_min)); }
  double b_at(int n) const { return b.at(static_cast<std::size_t>(n - n_min)); }
  int m_max() const { return m_min + static_cast<int>(a.size()) - 1; }
  int n_max() const { return n_min + static_cast<int>(b.size()) - 1; }

  // (c a, c b)
  CrossRatioFactorization scaled(double c) const;
  // Factorization of the T-transform: a/(1 - lambda a), b/(1 - lambda b).
  CrossRatioFactorization transported(double lambda) const;
};

inline constexpr double kTolPrincipal = 1e-9;
inline constexpr double kTolFactor = 1e-8;

// Factorizes real quad cross ratios as q = a_m / b_n with b at the origin row = -1.
// Throws NotFactorizable when the relative residual exceeds tol.
CrossRatioFactorization factorize_cross_ratios(const Grid<NormalizedCrossRatio>& q,
                                               double tol = kTolFactor);
// Same normalization, never throws; residual reports the quality.
CrossRatioFactorization fit_factorization(const Grid<NormalizedCrossRatio>& q);
Grid<double> rebuild_cross_ratios(const CrossRatioFactorization& f, const GridWindow& quads);

struct Classification {
  bool regular = false;
  bool principal = false;
  bool isothermic = false;
  double max_im = 0.0;
  double factor_residual = 0.0;
  std::optional<CrossRatioFactorization> factorization;
  std::vector<std::string> reasons;
};

Classification classify(const AffineNet& net);
Classification classify(const ProjectiveNet& net);

// Regularity in the net's own chart: first failing vertex, if any.
std::optional<GridIndex> first_irregular_vertex(const AffineNet& net);

}  // namespace isonet

#pragma once

#include <algorithm>

#include "isonet/grid.hpp"

namespace isonet {

// Integrates a discrete system outward from the origin: first the n = 0 row
// in both m directions, then every column in both n directions.
// step_m(m, n, x, +1) maps the value at (m,n) to (m+1,n); with -1 to (m-1,n).
template <class T, class StepM, class StepN>
Grid<T> integrate_center_out(const GridWindow& w, const T& seed, StepM&& step_m, StepN&& step_n) {
  Grid<T> g(w, seed);
  for (int m = 0; m < w.m_max; ++m) g(m + 1, 0) = step_m(m, 0, g(m, 0), +1);
  for (int m = 0; m > w.m_min; --m) g(m - 1, 0) = step_m(m, 0, g(m, 0), -1);
  for (int m = w.m_min; m <= w.m_max; ++m) {
    for (int n = 0; n < w.n_max; ++n) g(m, n + 1) = step_n(m, n, g(m, n), +1);
    for (int n = 0; n > w.n_min; --n) g(m, n - 1) = step_n(m, n, g(m, n), -1);
  }
  return g;
}

// Max over quads of dist(path via (m+1,n), path via (m,n+1)), both started
// from the stored value at (m,n).
template <class T, class StepM, class StepN, class Dist>
double face_residual(const Grid<T>& g, StepM&& step_m, StepN&& step_n, Dist&& dist) {
  const GridWindow q = g.window().quads();
  double r = 0.0;
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      const T a = step_n(m + 1, n, step_m(m, n, g(m, n), +1), +1);
      const T b = step_m(m, n + 1, step_n(m, n, g(m, n), +1), +1);
      const double d = dist(a, b);
      r = std::max(r, std::isfinite(d) ? d : INFINITY);
    }
  }
  return r;
}

}  // namespace isonet

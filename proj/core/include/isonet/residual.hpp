#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace isonet {

struct Residual {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
};

// Running max / mean of nonnegative residuals; converts to its max.
struct ResidualStats {
  double max = 0.0;
  double sum = 0.0;
  std::size_t count = 0;

  void add(double x) {
    if (std::isnan(x)) x = INFINITY;
    if (x > max) max = x;
    sum += x;
    ++count;
  }
  void merge(const ResidualStats& o) {
    if (o.max > max) max = o.max;
    sum += o.sum;
    count += o.count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  operator double() const { return max; }  // NOLINT: residuals compare by their max
  Residual named(std::string n) const { return {std::move(n), max, mean()}; }
};

}  // namespace isonet

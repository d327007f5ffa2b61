#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isonet/special_nets.hpp"

namespace isonet {

enum class NetKind { Real, Complex, Imaginary, AffineQuaternion, Projective };

const char* to_string(NetKind kind);
std::optional<NetKind> parse_net_kind(std::string_view s);
// Real components per vertex: 1, 2, 3, 4 or 8.
int arity(NetKind kind);

inline constexpr int kNetFormatVersion = 1;

struct NetFile {
  int version = kNetFormatVersion;
  NetKind kind = NetKind::AffineQuaternion;
  GridWindow window;
  std::vector<double> values;  // row-major in (m, n), arity(kind) per vertex
  std::optional<AffineChart> chart;
  std::vector<std::pair<std::string, std::string>> metadata;

  const double* at(int m, int n) const { return values.data() + window.index(m, n) * arity(kind); }
  std::optional<std::string> meta(std::string_view key) const;
};

NetFile to_net_file(const AffineNet& net);
NetFile to_net_file(const ProjectiveNet& net);
NetFile to_net_file(const HolomorphicNet& net);
NetFile to_net_file(const Grid<ImaginaryQuaternion>& net);

// Projective files are projected to their chart (standard if none); throws PointAtInfinity.
AffineNet to_affine(const NetFile& file);
ProjectiveNet to_projective(const NetFile& file);
// Only complex files; throws KindMismatch.
HolomorphicNet to_holomorphic(const NetFile& file);

std::string write_net(const NetFile& file);
// Throws ParseError naming the line, KindMismatch for arity errors.
NetFile read_net(std::string_view text);
void save_net(const std::filesystem::path& path, const NetFile& file);
NetFile load_net(const std::filesystem::path& path);

enum class MeshFormat { Obj, Ply };

// One vertex per grid point (row-major), one quad per cell.
std::string write_mesh(const Grid<ImaginaryQuaternion>& points, MeshFormat format);
void export_mesh(const Grid<ImaginaryQuaternion>& points, const std::filesystem::path& path, MeshFormat format);

struct ReportEntry {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
  double tolerance = 0.0;  // floor for lower bounds
  bool pass = false;
  bool lower_bound = false;  // pass iff max > tolerance
};

struct InvariantReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<ReportEntry> entries;

  // pass is max <= tol; NaN fails.
  void add(const std::string& name, const ResidualStats& r, double tolerance);
  // A check whose residual must exceed a floor (negative controls).
  void add_lower_bound(const std::string& name, double value, double floor);
  void param(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  bool passed() const;
  std::string text() const;
  std::string json() const;
};

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace isonet

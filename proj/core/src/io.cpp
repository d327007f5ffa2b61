#include "isonet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isonet {

namespace {

constexpr const char* kMagic = "isonet-net";

struct KindName {
  NetKind kind;
  const char* name;
  int arity;
};

constexpr KindName kKinds[] = {
    {NetKind::Real, "real", 1},
    {NetKind::Complex, "complex", 2},
    {NetKind::Imaginary, "imaginary", 3},
    {NetKind::AffineQuaternion, "affine-quaternion", 4},
    {NetKind::Projective, "projective", 8},
};

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line, std::size_t field) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    parse_error(line, "field " + std::to_string(field) + ": not a number '" + std::string(s) + "'");
  }
  return x;
}

int parse_int(std::string_view s, std::size_t line, std::size_t field) {
  int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    parse_error(line, "field " + std::to_string(field) + ": not an integer '" + std::string(s) + "'");
  }
  return x;
}

void push(std::vector<double>& v, const Quaternion& q) { v.insert(v.end(), {q.w, q.x, q.y, q.z}); }
Quaternion quat(const double* p) { return {p[0], p[1], p[2], p[3]}; }

std::vector<double> chart_numbers(const AffineChart& c) {
  std::vector<double> v;
  for (const Quaternion& q : {c.v0.upper, c.v0.lower, c.vinf.upper, c.vinf.lower, c.nu0.left, c.nu0.right,
                              c.nuinf.left, c.nuinf.right}) {
    push(v, q);
  }
  return v;
}

AffineChart chart_from(const double* p) {
  return {{quat(p), quat(p + 4)}, {quat(p + 8), quat(p + 12)}, {quat(p + 16), quat(p + 20)}, {quat(p + 24), quat(p + 28)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const char* to_string(NetKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

std::optional<NetKind> parse_net_kind(std::string_view s) {
  for (const auto& k : kKinds)
    if (s == k.name) return k.kind;
  return std::nullopt;
}

int arity(NetKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.arity;
  return 0;
}

std::optional<std::string> NetFile::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

NetFile to_net_file(const AffineNet& net) {
  NetFile f;
  f.kind = NetKind::AffineQuaternion;
  f.window = net.window();
  for (const Quaternion& q : net.values.data()) push(f.values, q);
  f.chart = net.chart;
  return f;
}

NetFile to_net_file(const ProjectiveNet& net) {
  NetFile f;
  f.kind = NetKind::Projective;
  f.window = net.window();
  for (const HPoint& p : net.values.data()) {
    push(f.values, p.rep().upper);
    push(f.values, p.rep().lower);
  }
  return f;
}

NetFile to_net_file(const HolomorphicNet& net) {
  NetFile f;
  f.kind = NetKind::Complex;
  f.window = net.window();
  for (const Complex& z : net.values.data()) f.values.insert(f.values.end(), {z.real(), z.imag()});
  return f;
}

NetFile to_net_file(const Grid<ImaginaryQuaternion>& net) {
  NetFile f;
  f.kind = NetKind::Imaginary;
  f.window = net.window();
  for (const ImaginaryQuaternion& x : net.data()) f.values.insert(f.values.end(), {x.x, x.y, x.z});
  return f;
}

AffineNet to_affine(const NetFile& file) {
  const AffineChart chart = file.chart.value_or(AffineChart::standard());
  if (file.kind == NetKind::Projective) return project(to_projective(file), chart);
  AffineNet out{Grid<Quaternion>(file.window), chart};
  out.values.for_each([&](int m, int n, const Quaternion&) {
    const double* p = file.at(m, n);
    Quaternion q;
    switch (file.kind) {
      case NetKind::Real: q = {p[0], 0, 0, 0}; break;
      case NetKind::Complex: q = {p[0], p[1], 0, 0}; break;
      case NetKind::Imaginary: q = {0, p[0], p[1], p[2]}; break;
      default: q = quat(p); break;
    }
    out.values(m, n) = q;
  });
  return out;
}

ProjectiveNet to_projective(const NetFile& file) {
  if (file.kind != NetKind::Projective) return lift(to_affine(file));
  ProjectiveNet out{Grid<HPoint>(file.window)};
  out.values.for_each([&](int m, int n, const HPoint&) {
    const double* p = file.at(m, n);
    const HVector v{quat(p), quat(p + 4)};
    if (!(v.max_abs() > 0.0)) throw Error(ErrorKind::DegeneratePoint, "zero homogeneous vector", GridIndex{m, n});
    out.values(m, n) = HPoint(v);
  });
  return out;
}

HolomorphicNet to_holomorphic(const NetFile& file) {
  if (file.kind != NetKind::Complex) {
    throw Error(ErrorKind::KindMismatch, std::string("expected a complex net, got ") + to_string(file.kind));
  }
  HolomorphicNet out{Grid<Complex>(file.window)};
  out.values.for_each([&](int m, int n, const Complex&) {
    const double* p = file.at(m, n);
    out.values(m, n) = Complex(p[0], p[1]);
  });
  return out;
}

std::string write_net(const NetFile& file) {
  const int k = arity(file.kind);
  if (file.values.size() != file.window.size() * static_cast<std::size_t>(k)) {
    throw Error(ErrorKind::KindMismatch, "value count does not match window and kind");
  }
  std::string s;
  s += std::string(kMagic) + " " + std::to_string(file.version) + "\n";
  s += std::string("kind ") + to_string(file.kind) + "\n";
  const GridWindow& w = file.window;
  s += "window " + std::to_string(w.m_min) + " " + std::to_string(w.m_max) + " " + std::to_string(w.n_min) + " " +
       std::to_string(w.n_max) + "\n";
  if (file.chart) {
    s += "chart";
    for (double x : chart_numbers(*file.chart)) s += " " + format_double(x);
    s += "\n";
  }
  for (const auto& [key, value] : file.metadata) s += "meta " + key + " " + value + "\n";
  s += "data\n";
  for (int m = w.m_min; m <= w.m_max; ++m) {
    for (int n = w.n_min; n <= w.n_max; ++n) {
      s += std::to_string(m) + " " + std::to_string(n);
      const double* p = file.at(m, n);
      for (int c = 0; c < k; ++c) s += " " + format_double(p[c]);
      s += "\n";
    }
  }
  s += "end\n";
  return s;
}

NetFile read_net(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t i = 0; i <= text.size();) {
    const std::size_t j = std::min(text.find('\n', i), text.size());
    lines.push_back(text.substr(i, j - i));
    i = j + 1;
  }
  std::size_t ln = 0;  // index into lines; messages use ln + 1
  auto next = [&]() -> std::vector<std::string_view> {
    while (ln < lines.size()) {
      auto t = split(lines[ln++]);
      if (!t.empty() && t[0][0] != '#') return t;
    }
    parse_error(lines.size(), "unexpected end of file");
  };

  NetFile f;
  auto t = next();
  if (t.size() != 2 || t[0] != kMagic) parse_error(ln, "expected header 'isonet-net <version>'");
  f.version = parse_int(t[1], ln, 2);
  if (f.version != kNetFormatVersion) parse_error(ln, "unsupported format version " + std::string(t[1]));

  t = next();
  if (t.size() != 2 || t[0] != "kind") parse_error(ln, "expected 'kind <name>'");
  const auto kind = parse_net_kind(t[1]);
  if (!kind) parse_error(ln, "unknown kind '" + std::string(t[1]) + "'");
  f.kind = *kind;
  const int k = arity(f.kind);

  t = next();
  if (t.size() != 5 || t[0] != "window") parse_error(ln, "expected 'window m_min m_max n_min n_max'");
  f.window = {parse_int(t[1], ln, 2), parse_int(t[2], ln, 3), parse_int(t[3], ln, 4), parse_int(t[4], ln, 5)};
  try {
    f.window.validate();
  } catch (const Error& e) {
    parse_error(ln, e.message());
  }

  for (t = next(); t[0] != "data"; t = next()) {
    if (t[0] == "chart") {
      if (t.size() != 33) parse_error(ln, "chart needs 32 numbers");
      std::vector<double> v;
      for (std::size_t i = 1; i < t.size(); ++i) v.push_back(parse_double(t[i], ln, i + 1));
      f.chart = chart_from(v.data());
    } else if (t[0] == "meta") {
      if (t.size() < 2) parse_error(ln, "meta needs a key");
      const std::string_view line = lines[ln - 1];
      const std::size_t at = line.find(t[1]) + t[1].size();
      std::string value(line.substr(at));
      value.erase(0, value.find_first_not_of(" \t"));
      while (!value.empty() && (value.back() == '\r' || value.back() == ' ')) value.pop_back();
      f.metadata.emplace_back(std::string(t[1]), value);
    } else {
      parse_error(ln, "unexpected '" + std::string(t[0]) + "'");
    }
  }

  f.values.reserve(f.window.size() * k);
  for (int m = f.window.m_min; m <= f.window.m_max; ++m) {
    for (int n = f.window.n_min; n <= f.window.n_max; ++n) {
      t = next();
      if (t[0] == "end") parse_error(ln, "data ends early at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      if (t.size() < 2 || parse_int(t[0], ln, 1) != m || parse_int(t[1], ln, 2) != n) {
        parse_error(ln, "expected vertex (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
      if (static_cast<int>(t.size()) - 2 != k) {
        // a short final line is a cut-off file, not a wrong kind
        bool last = true;
        for (std::size_t i = ln; i < lines.size(); ++i) last = last && split(lines[i]).empty();
        if (last) parse_error(ln, "unexpected end of file inside vertex (" + std::to_string(m) + "," + std::to_string(n) + ")");
        throw Error(ErrorKind::KindMismatch, "line " + std::to_string(ln) + ": kind " + to_string(f.kind) +
                                                 " needs " + std::to_string(k) + " components, got " +
                                                 std::to_string(t.size() - 2),
                    GridIndex{m, n});
      }
      for (int c = 0; c < k; ++c) f.values.push_back(parse_double(t[2 + c], ln, 3 + c));
    }
  }
  t = next();
  if (t.size() != 1 || t[0] != "end") parse_error(ln, "expected 'end'");
  return f;
}

void save_net(const std::filesystem::path& path, const NetFile& file) { write_file(path, write_net(file)); }

NetFile load_net(const std::filesystem::path& path) {
  try {
    return read_net(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::KindMismatch) {
      throw Error(e.kind(), path.string() + ": " + e.message(), e.where());
    }
    throw;
  }
}

std::string write_mesh(const Grid<ImaginaryQuaternion>& points, MeshFormat format) {
  const GridWindow& w = points.window();
  if (w.m_count() < 2 || w.n_count() < 2) throw Error(ErrorKind::InvalidArgument, "mesh needs at least 2x2 points");
  const GridWindow q = w.quads();
  std::string s;
  auto vertex_line = [&](const ImaginaryQuaternion& p) {
    return format_double(p.x) + " " + format_double(p.y) + " " + format_double(p.z);
  };
  // (i,j), (i+1,j), (i+1,j+1), (i,j+1) with zero-based row-major indices
  auto face = [&](int m, int n, int base) {
    const auto id = [&](int a, int b) { return std::to_string(w.index(a, b) + base); };
    return id(m, n) + " " + id(m + 1, n) + " " + id(m + 1, n + 1) + " " + id(m, n + 1);
  };
  if (format == MeshFormat::Obj) {
    for (const auto& p : points.data()) s += "v " + vertex_line(p) + "\n";
    for (int m = q.m_min; m <= q.m_max; ++m)
      for (int n = q.n_min; n <= q.n_max; ++n) s += "f " + face(m, n, 1) + "\n";
  } else {
    s += "ply\nformat ascii 1.0\n";
    s += "element vertex " + std::to_string(w.size()) + "\n";
    s += "property double x\nproperty double y\nproperty double z\n";
    s += "element face " + std::to_string(q.size()) + "\n";
    s += "property list uchar int vertex_indices\nend_header\n";
    for (const auto& p : points.data()) s += vertex_line(p) + "\n";
    for (int m = q.m_min; m <= q.m_max; ++m)
      for (int n = q.n_min; n <= q.n_max; ++n) s += "4 " + face(m, n, 0) + "\n";
  }
  return s;
}

void export_mesh(const Grid<ImaginaryQuaternion>& points, const std::filesystem::path& path, MeshFormat format) {
  write_file(path, write_mesh(points, format));
}

void InvariantReport::add(const std::string& name, const ResidualStats& r, double tolerance) {
  entries.push_back({name, r.max, r.mean(), tolerance, r.max <= tolerance});
}

void InvariantReport::add_lower_bound(const std::string& name, double value, double floor) {
  entries.push_back({name, value, value, floor, value > floor, true});
}

bool InvariantReport::passed() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

std::string InvariantReport::text() const {
  std::string s = "suite " + suite + ": " + (passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& [k, v] : parameters) s += "  param " + k + " = " + v + "\n";
  for (const auto& e : entries) {
    char buf[256];
    if (e.lower_bound) {
      std::snprintf(buf, sizeof buf, "  %-4s %-28s min %-11.3e                  floor %.1e\n", e.pass ? "ok" : "FAIL",
                    e.name.c_str(), e.max, e.tolerance);
    } else {
      std::snprintf(buf, sizeof buf, "  %-4s %-28s max %-11.3e mean %-11.3e tol %.1e\n", e.pass ? "ok" : "FAIL",
                    e.name.c_str(), e.max, e.mean, e.tolerance);
    }
    s += buf;
  }
  return s;
}

std::string InvariantReport::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["pass"] = passed();
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) j["parameters"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json c;
    c["name"] = e.name;
    // NaN and infinities are not representable in JSON
    c["max"] = std::isfinite(e.max) ? nlohmann::ordered_json(e.max) : nlohmann::ordered_json(format_double(e.max));
    c["mean"] = std::isfinite(e.mean) ? nlohmann::ordered_json(e.mean) : nlohmann::ordered_json(format_double(e.mean));
    if (e.lower_bound) {
      c["floor"] = e.tolerance;
    } else {
      c["tolerance"] = e.tolerance;
    }
    c["pass"] = e.pass;
    j["checks"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

}  // namespace isonet

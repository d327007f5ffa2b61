#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "isonet/io.hpp"

namespace fs = std::filesystem;
using isonet::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("generate and check") {
  TempDir d("isonet_cli_gen");
  const std::string e = d / "e.net";
  REQUIRE(call({"gen", "exponential", "--n", "20", "--irg", "10", "--jrg", "10", "-o", e}).code == 0);
  Result r = call({"check", e, "--suite", "isothermic", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"])
    if (c.contains("tolerance") && c["max"].is_number()) CHECK(c["max"].get<double>() <= c["tolerance"].get<double>());

  REQUIRE(call({"gen", "catenoid", "--n", "20", "--irg", "5", "--jrg", "5", "--out-dir", d.path.string()}).code == 0);
  CHECK(fs::exists(d / "g.net"));
  CHECK(fs::exists(d / "h.net"));
  r = call({"check", d / "g.net", "--against", d / "h.net", "--suite", "horospherical", "--report", d / "h.json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(d / "h.json"))["suite"] == "horospherical");
}

TEST_CASE("transform pipelines") {
  TempDir d("isonet_cli_pipe");
  const std::string e = d / "e.net";
  REQUIRE(call({"gen", "exponential", "--irg", "6", "--jrg", "6", "-o", e}).code == 0);

  REQUIRE(call({"christoffel", e, "-o", d / "dual.net"}).code == 0);
  CHECK(call({"check", e, "--against", d / "dual.net", "--suite", "christoffel"}).code == 0);

  REQUIRE(call({"darboux", e, "-o", d / "dar.net", "--lambda", "0.3", "--init", "0.2,1,0.5,-0.3"}).code == 0);
  const isonet::NetFile dar = isonet::load_net(d / "dar.net");
  CHECK(dar.meta("lambda") == "0.3");
  CHECK(call({"check", e, "--against", d / "dar.net", "--suite", "darboux"}).code == 0);

  REQUIRE(call({"ttransform", e, "-o", d / "t.net", "--lambda", "0.1"}).code == 0);
  CHECK(isonet::load_net(d / "t.net").kind == isonet::NetKind::Projective);
  CHECK(call({"check", d / "t.net", "--suite", "isothermic"}).code == 0);

  REQUIRE(call({"goursat", e, "-o", d / "g.net", "--chart", "0.5,3,0,1"}).code == 0);
  CHECK(call({"check", d / "g.net", "--suite", "isothermic"}).code == 0);

  CHECK(call({"check", e, "--suite", "t-laws", "--lambda", "0.1"}).code == 0);
  CHECK(call({"check", e, "--suite", "permutability", "--lambda", "0.3", "--mu", "-0.2"}).code == 0);
}

TEST_CASE("a failing check exits 1") {
  TempDir d("isonet_cli_fail");
  REQUIRE(call({"gen", "exponential", "--irg", "4", "--jrg", "4", "-o", d / "e.net"}).code == 0);
  REQUIRE(call({"gen", "exponential", "--irg", "4", "--jrg", "4", "--n", "13", "-o", d / "other.net"}).code == 0);
  const Result r = call({"check", d / "e.net", "--against", d / "other.net", "--suite", "christoffel"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  TempDir d("isonet_cli_err");
  const std::string e = d / "e.net";
  REQUIRE(call({"gen", "exponential", "--n", "20", "--irg", "10", "--jrg", "10", "-o", e}).code == 0);
  // 1/a of the exponential net with N = 20
  const Result s = call({"ttransform", e, "-o", d / "x.net", "--lambda", "0.9836851901147181"});
  CHECK(s.code == 2);
  CHECK(s.err.find("SingularLambda") != std::string::npos);
  CHECK(s.err.find("(-10,-10)") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "x.net"));
  CHECK(call({"darboux", e, "-o", d / "x.net", "--lambda", "0.9836851901147181"}).code == 2);

  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"check", e, "--suite", "nonsense"}).code == 2);
  CHECK(call({"check", e, "--suite", "christoffel"}).code == 2);
  CHECK(call({"check", d / "missing.net", "--suite", "isothermic"}).code == 2);
  CHECK(call({"darboux", e, "-o", d / "y.net", "--lambda", "abc"}).code == 2);
  CHECK(call({"darboux", e, "-o", d / "y.net", "--lambda", "0.3", "--init", "1,2"}).code == 2);
  CHECK(call({"export", e, "-o", d / "e.obj"}).code == 2);

  std::string text = slurp(e);
  std::ofstream(d / "cut.net") << text.substr(0, text.size() / 2);
  const Result c = call({"check", d / "cut.net", "--suite", "isothermic"});
  CHECK(c.code == 2);
  CHECK(c.err.find("ParseError") != std::string::npos);
}

TEST_CASE("help") {
  const Result r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cousins") != std::string::npos);
}

TEST_CASE("cousins are reproducible") {
  TempDir a("isonet_cli_cousins_a");
  TempDir b("isonet_cli_cousins_b");
  const Result ra = call({"cousins", "--out-dir", a.path.string(), "--report", a / "r.json"});
  const Result rb = call({"cousins", "--out-dir", b.path.string(), "--format", "obj"});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  auto strip = [](std::string text, const std::string& dir) {
    for (std::size_t at; (at = text.find(dir)) != std::string::npos;) text.erase(at, dir.size());
    return text;
  };
  CHECK(strip(ra.out, a.path.string()) == strip(rb.out, b.path.string()));
  int meshes = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    if (entry.path().extension() != ".obj") continue;
    ++meshes;
    const fs::path other = b.path / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
  CHECK(meshes == 27);
  const auto reports = nlohmann::json::parse(slurp(a / "r.json"));
  CHECK(reports.size() == 9);
  for (const auto& r : reports) CHECK(r["pass"] == true);

  TempDir p("isonet_cli_cousins_ply");
  REQUIRE(call({"cousins", "--lambda-list", "0.25", "--out-dir", p.path.string(), "--format", "ply"}).code == 0);
  int plys = 0;
  for (const auto& entry : fs::directory_iterator(p.path)) plys += entry.path().extension() == ".ply";
  CHECK(plys == 3);
}

TEST_CASE("export") {
  TempDir d("isonet_cli_export");
  std::ofstream(d / "im.net") << "isonet-net 1\nkind imaginary\nwindow 0 1 0 1\ndata\n0 0 0 0 0\n0 1 0 1 0\n1 0 1 0 0\n1 1 1 1 0\nend\n";
  REQUIRE(call({"export", d / "im.net", "-o", d / "im.ply", "--format", "ply"}).code == 0);
  CHECK(slurp(d / "im.ply").rfind("ply\n", 0) == 0);
  CHECK(call({"export", d / "im.net", "-o", d / "im.stl", "--format", "stl"}).code == 2);
}

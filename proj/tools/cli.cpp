#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "isonet/generators.hpp"
#include "isonet/io.hpp"
#include "isonet/suites.hpp"
#include "isonet/transforms.hpp"

namespace isonet::cli {

namespace fs = std::filesystem;

namespace {

Quaternion parse_quaternion(const std::string& s, const char* what) {
  double c[4] = {0, 0, 0, 0};
  int k = 0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    if (k == 4) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": more than four components");
    const auto res = std::from_chars(s.data() + pos, s.data() + end, c[k]);
    if (res.ec != std::errc() || res.ptr != s.data() + end) {
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": not a number '" + s.substr(pos, end - pos) + "'");
    }
    ++k;
    pos = end + 1;
  }
  if (k != 4) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": expected four components w,x,y,z");
  return {c[0], c[1], c[2], c[3]};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    double x = 0.0;
    const auto res = std::from_chars(s.data() + pos, s.data() + end, x);
    if (res.ec != std::errc() || res.ptr != s.data() + end) {
      throw Error(ErrorKind::InvalidArgument, "lambda list: not a number '" + s.substr(pos, end - pos) + "'");
    }
    out.push_back(x);
    pos = end + 1;
  }
  return out;
}

MeshFormat parse_format(const std::string& s) {
  if (s == "obj") return MeshFormat::Obj;
  if (s == "ply") return MeshFormat::Ply;
  throw Error(ErrorKind::InvalidArgument, "unknown mesh format '" + s + "'");
}

const char* extension(MeshFormat f) { return f == MeshFormat::Obj ? ".obj" : ".ply"; }

NetFile with_meta(NetFile file, std::vector<std::pair<std::string, std::string>> meta) {
  for (auto& kv : meta) file.metadata.push_back(std::move(kv));
  return file;
}

double meta_double(const NetFile& file, const char* key) {
  const auto v = file.meta(key);
  if (!v) throw Error(ErrorKind::InvalidArgument, std::string("no --lambda given and no '") + key + "' in the net file");
  double x = 0.0;
  const auto res = std::from_chars(v->data(), v->data() + v->size(), x);
  if (res.ec != std::errc()) throw Error(ErrorKind::ParseError, std::string("metadata ") + key + ": not a number");
  return x;
}

Grid<ImaginaryQuaternion> imaginary_points(const NetFile& file) {
  if (file.kind == NetKind::Imaginary) {
    Grid<ImaginaryQuaternion> g(file.window);
    g.for_each([&](int m, int n, const ImaginaryQuaternion&) {
      const double* p = file.at(m, n);
      g(m, n) = {p[0], p[1], p[2]};
    });
    return g;
  }
  const AffineNet net = to_affine(file);
  Grid<ImaginaryQuaternion> g(file.window);
  net.values.for_each([&](int m, int n, const Quaternion& q) {
    if (std::abs(q.w) > 1e-12 * std::max(1.0, q.norm())) {
      throw Error(ErrorKind::KindMismatch, "mesh export needs imaginary values", GridIndex{m, n});
    }
    g(m, n) = {q.x, q.y, q.z};
  });
  return g;
}

struct Options {
  // gen
  int n = 20;
  int irg = 10;
  int jrg = 10;
  double sign = 1.0;
  std::string out_dir = ".";
  // transforms
  std::string input;
  std::string output;
  std::optional<double> lambda;
  double lambda2 = 0.2;
  double mu = 0.1;
  std::string init = "0.2,0.5,0.1,-0.3";
  std::string second_init = "-0.3,0.2,0.4,0.1";
  std::string seed = "0,0,0,0";
  std::string chart;
  // cousins
  std::string lambda_list = "-0.8,-0.117,-0.05,-0.025,1e-7,0.01,0.025,0.085,0.25";
  std::string format = "obj";
  // check
  std::string against;
  std::string suite;
  bool json = false;
  std::string report;
};

int finish_report(const InvariantReport& rep, const Options& o, std::ostream& out) {
  out << (o.json ? rep.json() + "\n" : rep.text());
  if (!o.report.empty()) {
    std::ofstream f(o.report, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + o.report);
    f << rep.json() << "\n";
  }
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_gen_catenoid(const Options& o, std::ostream& out) {
  const auto [g, h] = catenoid_pair(o.n, GridWindow::symmetric(o.irg, o.jrg));
  fs::create_directories(o.out_dir);
  const std::vector<std::pair<std::string, std::string>> meta{
      {"construction", "catenoid"}, {"n", std::to_string(o.n)}};
  save_net(fs::path(o.out_dir) / "g.net", with_meta(to_net_file(g), meta));
  save_net(fs::path(o.out_dir) / "h.net", with_meta(to_net_file(h), meta));
  out << "wrote " << (fs::path(o.out_dir) / "g.net").string() << " " << (fs::path(o.out_dir) / "h.net").string()
      << "\n";
  return kOk;
}

int cmd_gen_exponential(const Options& o, std::ostream& out) {
  const AffineNet f = exponential_net(o.n, GridWindow::symmetric(o.irg, o.jrg), o.sign);
  save_net(o.output, with_meta(to_net_file(f), {{"construction", "exponential"}, {"n", std::to_string(o.n)}}));
  out << "wrote " << o.output << "\n";
  return kOk;
}

int cmd_christoffel(const Options& o, std::ostream& out) {
  const AffineNet f = to_affine(load_net(o.input));
  const ChristoffelPair p = christoffel(f, parse_quaternion(o.seed, "seed"));
  save_net(o.output, with_meta(to_net_file(p.f_star), {{"construction", "christoffel"}}));
  out << "wrote " << o.output << " (closure " << format_residual(p.closure_residual) << ")\n";
  return kOk;
}

int cmd_darboux(const Options& o, std::ostream& out) {
  if (!o.lambda) throw Error(ErrorKind::InvalidArgument, "darboux needs --lambda");
  const AffineNet f = to_affine(load_net(o.input));
  const DarbouxNet d = darboux_riccati(christoffel(f), *o.lambda, parse_quaternion(o.init, "init"));
  save_net(o.output, with_meta(to_net_file(*d.affine), {{"construction", "darboux"},
                                                        {"lambda", format_double(*o.lambda)},
                                                        {"init", o.init}}));
  out << "wrote " << o.output << "\n";
  return kOk;
}

int cmd_ttransform(const Options& o, std::ostream& out) {
  if (!o.lambda) throw Error(ErrorKind::InvalidArgument, "ttransform needs --lambda");
  const AffineNet f = to_affine(load_net(o.input));
  const Connection c = build_connection(christoffel(f));
  const TTransformFrame t = integrate_T(c, *o.lambda);
  const ProjectiveNet image = t_transform(c.base, t);
  save_net(o.output, with_meta(to_net_file(image), {{"construction", "ttransform"},
                                                    {"lambda", format_double(*o.lambda)}}));
  out << "wrote " << o.output << " (closure " << format_residual(t.residual) << ")\n";
  return kOk;
}

int cmd_goursat(const Options& o, std::ostream& out) {
  const AffineNet f = to_affine(load_net(o.input));
  const HPoint centre = HPoint::from_affine(parse_quaternion(o.chart, "chart"));
  const ChristoffelPair g = goursat(christoffel(f), AffineChart::with_infinity_at(centre));
  save_net(o.output, with_meta(to_net_file(g.f_star), {{"construction", "goursat"}, {"infinity", o.chart}}));
  out << "wrote " << o.output << "\n";
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const MeshFormat fmt = parse_format(o.format);
  export_mesh(imaginary_points(load_net(o.input)), o.output, fmt);
  out << "wrote " << o.output << "\n";
  return kOk;
}

struct CousinResult {
  std::vector<std::string> files;
  InvariantReport report;
};

int cmd_cousins(const Options& o, std::ostream& out) {
  const std::vector<double> lambdas = parse_list(o.lambda_list);
  const MeshFormat fmt = parse_format(o.format);
  const auto [g, h] = catenoid_pair(o.n, GridWindow::symmetric(o.irg, o.jrg));
  fs::create_directories(o.out_dir);

  auto task = [&, g = g, h = h](std::size_t k) {
    const double l = lambdas[k];
    const ComplexFrame tau = integrate_H(g, h, l);
    const Grid<ImaginaryQuaternion> hyperbolic = ccousin_coords(tau);
    char stem[32];
    std::snprintf(stem, sizeof stem, "cousin%02zu_", k + 1);
    CousinResult r;
    auto emit = [&](const char* model, const Grid<ImaginaryQuaternion>& pts) {
      const fs::path p = fs::path(o.out_dir) / (std::string(stem) + model + extension(fmt));
      export_mesh(pts, p, fmt);
      r.files.push_back(p.string());
    };
    emit("gauss", gauss_coords(tau, g));
    emit("hyperbolic", hyperbolic);
    emit("ball", poincare_ball(hyperbolic));
    HorosphericalOptions opt;
    opt.lambda = l;
    r.report = horospherical_suite(g, h, opt);
    return r;
  };

  std::vector<std::future<CousinResult>> jobs;
  for (std::size_t k = 0; k < lambdas.size(); ++k) jobs.push_back(std::async(std::launch::async, task, k));
  bool ok = true;
  std::vector<InvariantReport> reports;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    CousinResult r = jobs[k].get();  // rethrows the first failure in list order
    out << "lambda " << format_double(lambdas[k]) << ": " << (r.report.passed() ? "PASS" : "FAIL");
    for (const auto& f : r.files) out << " " << f;
    out << "\n";
    if (!r.report.passed()) out << r.report.text();
    ok = ok && r.report.passed();
    reports.push_back(std::move(r.report));
  }
  if (!o.report.empty()) {
    std::ofstream f(o.report, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + o.report);
    f << "[";
    for (std::size_t k = 0; k < reports.size(); ++k) f << (k ? ",\n" : "\n") << reports[k].json();
    f << "\n]\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_check(const Options& o, std::ostream& out) {
  const NetFile file = load_net(o.input);
  auto against = [&]() {
    if (o.against.empty()) throw Error(ErrorKind::InvalidArgument, "suite " + o.suite + " needs --against");
    return load_net(o.against);
  };
  if (o.suite == "isothermic") return finish_report(isothermic_suite(to_projective(file)), o, out);
  if (o.suite == "christoffel") {
    const AffineNet f = to_affine(file);
    const AffineNet s = project(to_projective(against()), f.chart);
    return finish_report(christoffel_suite(f, s), o, out);
  }
  if (o.suite == "darboux") {
    const NetFile other = against();
    const double l = o.lambda ? *o.lambda : meta_double(other, "lambda");
    return finish_report(darboux_suite(to_affine(file), to_affine(other), l), o, out);
  }
  if (o.suite == "t-laws") {
    return finish_report(t_laws_suite(to_affine(file), o.lambda.value_or(0.1), o.lambda2), o, out);
  }
  if (o.suite == "permutability") {
    PermutabilityOptions p;
    p.lambda = o.lambda.value_or(0.3);
    p.mu = o.mu;
    p.init = parse_quaternion(o.init, "init");
    p.second_init = parse_quaternion(o.second_init, "second-init");
    return finish_report(permutability_report(to_affine(file), p), o, out);
  }
  if (o.suite == "horospherical") {
    HorosphericalOptions p;
    p.lambda = o.lambda.value_or(0.25);
    p.mu = o.mu;
    return finish_report(horospherical_suite(to_holomorphic(file), to_holomorphic(against()), p), o, out);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + o.suite + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Discrete isothermic nets: transforms, checks and the catenoid cousin pipeline", "isonet"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate sample nets");
  gen->require_subcommand(1);
  auto* cat = gen->add_subcommand("catenoid", "Holomorphic pair g, h of the discrete catenoid");
  cat->add_option("--n", o.n, "Rotational period")->capture_default_str();
  cat->add_option("--irg", o.irg, "Half range in m")->capture_default_str();
  cat->add_option("--jrg", o.jrg, "Half range in n")->capture_default_str();
  cat->add_option("--out-dir", o.out_dir, "Directory for g.net and h.net")->capture_default_str();
  auto* expo = gen->add_subcommand("exponential", "Exponential net exp(2 pi (m + i n) / N)");
  expo->add_option("--n", o.n)->capture_default_str();
  expo->add_option("--irg", o.irg)->capture_default_str();
  expo->add_option("--jrg", o.jrg)->capture_default_str();
  expo->add_option("--sign", o.sign, "+1 or -1")->capture_default_str();
  expo->add_option("-o,--output", o.output)->required();

  auto* chr = app.add_subcommand("christoffel", "Christoffel dual of an isothermic net");
  chr->add_option("input", o.input)->required();
  chr->add_option("-o,--output", o.output)->required();
  chr->add_option("--seed", o.seed, "Value of the dual at (0,0), w,x,y,z")->capture_default_str();

  auto* dar = app.add_subcommand("darboux", "Darboux transform by the Riccati equation");
  dar->add_option("input", o.input)->required();
  dar->add_option("-o,--output", o.output)->required();
  dar->add_option("--lambda", o.lambda)->required();
  dar->add_option("--init", o.init, "Initial point at (0,0), w,x,y,z")->capture_default_str();

  auto* tt = app.add_subcommand("ttransform", "Calapso (T-) transform");
  tt->add_option("input", o.input)->required();
  tt->add_option("-o,--output", o.output)->required();
  tt->add_option("--lambda", o.lambda)->required();

  auto* gou = app.add_subcommand("goursat", "Dual after moving infinity to a point");
  gou->add_option("input", o.input)->required();
  gou->add_option("-o,--output", o.output)->required();
  gou->add_option("--chart", o.chart, "Affine point sent to infinity, w,x,y,z")->required();

  auto* cou = app.add_subcommand("cousins", "Catenoid cousins: Gauss map, hyperbolic model and ball meshes per lambda");
  cou->add_option("--lambda-list", o.lambda_list)->capture_default_str();
  cou->add_option("--n", o.n)->capture_default_str();
  cou->add_option("--irg", o.irg)->capture_default_str();
  cou->add_option("--jrg", o.jrg)->capture_default_str();
  cou->add_option("--out-dir", o.out_dir)->capture_default_str();
  cou->add_option("--format", o.format, "obj or ply")->capture_default_str();
  cou->add_option("--report", o.report, "Write the invariant reports as JSON");

  auto* chk = app.add_subcommand("check", "Run an invariant suite");
  chk->add_option("input", o.input)->required();
  chk->add_option("--against", o.against, "Second net (dual, Darboux transform or h)");
  chk->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"isothermic", "christoffel", "darboux", "t-laws", "permutability", "horospherical"}));
  chk->add_option("--lambda", o.lambda);
  chk->add_option("--lambda2", o.lambda2)->capture_default_str();
  chk->add_option("--mu", o.mu)->capture_default_str();
  chk->add_option("--init", o.init)->capture_default_str();
  chk->add_option("--second-init", o.second_init)->capture_default_str();
  chk->add_flag("--json", o.json, "Print the report as JSON");
  chk->add_option("--report", o.report, "Also write the JSON report to a file");

  auto* exp = app.add_subcommand("export", "Write an imaginary-valued net as a quad mesh");
  exp->add_option("input", o.input)->required();
  exp->add_option("-o,--output", o.output)->required();
  exp->add_option("--format", o.format, "obj or ply")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "isonet: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (cat->parsed()) return cmd_gen_catenoid(o, out);
    if (expo->parsed()) return cmd_gen_exponential(o, out);
    if (chr->parsed()) return cmd_christoffel(o, out);
    if (dar->parsed()) return cmd_darboux(o, out);
    if (tt->parsed()) return cmd_ttransform(o, out);
    if (gou->parsed()) return cmd_goursat(o, out);
    if (cou->parsed()) return cmd_cousins(o, out);
    if (chk->parsed()) return cmd_check(o, out);
    if (exp->parsed()) return cmd_export(o, out);
  } catch (const Error& e) {
    err << "isonet: " << e.what() << "\n";
    return classify_error(e.kind()) == ErrorClass::Input ? kInputError : kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << "isonet: IoError: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace isonet::cli

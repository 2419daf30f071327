#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "splice/disk_analytic.hpp"
#include "splice/elliptic.hpp"
#include "splice/errors.hpp"
#include "splice/free_boundary.hpp"
#include "splice/greens_disk.hpp"
#include "splice/grid.hpp"
#include "splice/serialize.hpp"
#include "splice/variational.hpp"

namespace splice::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Configuration

void merge_into(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw ConfigError(path + ": expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object() && it->is_object()) {
      merge_into(slot, *it, key);
    } else {
      slot = *it;
    }
  }
}

const json& at(const json& cfg, const std::string& dotted) {
  const json* node = &cfg;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    node = &node->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return *node;
}

double num(const json& cfg, const std::string& key) {
  const json& v = at(cfg, key);
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key + ": must be finite");
  return d;
}

double positive(const json& cfg, const std::string& key) {
  const double d = num(cfg, key);
  if (!(d > 0.0)) throw ConfigError(key + ": must be > 0, got " + format_number(d));
  return d;
}

int integer(const json& cfg, const std::string& key, int lo) {
  const json& v = at(cfg, key);
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  const long long i = v.get<long long>();
  if (i < lo || i > 1 << 24) {
    throw ConfigError(key + ": must be an integer >= " + std::to_string(lo));
  }
  return static_cast<int>(i);
}

std::string text(const json& cfg, const std::string& key,
                 std::initializer_list<const char*> allowed) {
  const json& v = at(cfg, key);
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  const std::string s = v.get<std::string>();
  std::string choices;
  for (const char* a : allowed) {
    if (s == a) return s;
    choices += choices.empty() ? a : std::string(", ") + a;
  }
  throw ConfigError(key + ": '" + s + "' is not one of " + choices);
}

std::optional<double> maybe_num(const json& cfg, const std::string& key) {
  if (at(cfg, key).is_null()) return std::nullopt;
  return num(cfg, key);
}

ProblemKind kind_of(const json& cfg) {
  return problem_kind_from_string(text(cfg, "problem.kind", {"detached", "coriolis"}));
}

DiskProblem disk_problem(const json& cfg) {
  return DiskProblem(positive(cfg, "problem.R"), positive(cfg, "problem.C"),
                     positive(cfg, "problem.omega"), kind_of(cfg));
}

json null_or(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Flags declared on a subcommand, each bound to one config key.
struct Overrides {
  // deque keeps the bound addresses stable as flags are added.
  std::deque<std::pair<std::string, std::optional<double>>> nums;
  std::deque<std::pair<std::string, std::optional<long long>>> ints;
  std::deque<std::pair<std::string, std::optional<std::string>>> strs;

  void num(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    nums.emplace_back(key, std::nullopt);
    app->add_option(flag, nums.back().second, help + " [" + key + "]");
  }
  void integer(CLI::App* app, const std::string& flag, const std::string& key,
               const std::string& help) {
    ints.emplace_back(key, std::nullopt);
    app->add_option(flag, ints.back().second, help + " [" + key + "]");
  }
  void str(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    strs.emplace_back(key, std::nullopt);
    app->add_option(flag, strs.back().second, help + " [" + key + "]");
  }

  void apply(json& cfg) const {
    auto set = [&](const std::string& key, json value) {
      json* node = &cfg;
      std::size_t start = 0;
      for (;;) {
        const std::size_t dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (dot == std::string::npos) {
          (*node)[part] = std::move(value);
          return;
        }
        node = &(*node)[part];
        start = dot + 1;
      }
    };
    for (const auto& [k, v] : nums) {
      if (v) set(k, *v);
    }
    for (const auto& [k, v] : ints) {
      if (v) set(k, *v);
    }
    for (const auto& [k, v] : strs) {
      if (v) set(k, *v);
    }
  }
};

json load_config(const std::string& path, const Overrides& ov) {
  json cfg = default_config();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    merge_into(cfg, file, "");
  }
  ov.apply(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Output

fs::path output_dir(const json& cfg) {
  const json& d = at(cfg, "output.dir");
  if (!d.is_string()) throw ConfigError("output.dir: expected a string");
  fs::path dir = d.get<std::string>();
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + p.string() + "'");
  return os;
}

json header(const std::string& command, const json& cfg) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", cfg}};
}

void write_json(const fs::path& p, const json& doc) {
  auto os = open_out(p);
  os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Geometry

GridPtr make_grid(json& cfg) {
  const int n = integer(cfg, "geometry.n", 4);
  const std::string shape = text(cfg, "geometry.shape", {"disk", "rect"});
  const double C = num(cfg, "problem.C");
  if (C < 0.0) throw ConfigError("problem.C: must be >= 0");
  if (shape == "disk") {
    if (n < 16) throw ConfigError("geometry.n: a disk grid needs n >= 16");
    return build_disk_grid(positive(cfg, "problem.R"), C, n);
  }
  const double w = positive(cfg, "geometry.width");
  const double hgt = positive(cfg, "geometry.height");
  const double sx = num(cfg, "geometry.slope_x");
  const double sy = num(cfg, "geometry.slope_y");
  return build_rect_grid(w, hgt, n, [=](Point p) { return C + sx * p.x + sy * p.y; });
}

RegionMask disk_region(const GridPtr& g, Point c, double r) {
  return RegionMask::where(g, [=](Point p) { return std::hypot(p.x - c.x, p.y - c.y) < r; });
}

std::vector<Point> circle_points(Point c, double r, int count) {
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * kPi * i / count;
    pts.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
  }
  return pts;
}

// ---------------------------------------------------------------------------
// analytic

int cmd_analytic(json cfg, std::ostream& out) {
  const DiskProblem p = disk_problem(cfg);
  const int samples = integer(cfg, "analytic.samples", 2);
  const fs::path dir = output_dir(cfg);
  json rep = header("analytic", cfg);

  const Thresholds t = thresholds(p);
  rep["thresholds"] = {{"exist", t.exist}, {"strict", null_or(t.strict)}};

  std::vector<RadialSolution> roots;
  json files = json::array();
  if (p.kind == ProblemKind::Detached) {
    const double s = stationary_point(p);
    rep["stationary_point"] = {{"a", s}, {"y", y_eval(p, s)}};
    roots = solve_roots_detached(p);
  } else {
    if (auto r = solve_root_coriolis(p)) roots.push_back(*r);
  }

  json jroots = json::array();
  for (const RadialSolution& s : roots) {
    const bool det = p.kind == ProblemKind::Detached;
    const double res = det ? y_eval(p, s.a) : y1_eval(p, s.a);
    jroots.push_back({{"branch", std::string(to_string(s.branch))},
                      {"a", s.a},
                      {"residual", res},
                      {"psi_center", det ? psi_profile_detached(s, 0.0)
                                         : psi_profile_coriolis(s, 0.0)},
                      {"functional", det ? functional_curve_detached(p, s.a)
                                         : functional_curve_coriolis(p, s.a)}});
    const std::string name = "profile_" + std::string(to_string(s.branch)) + ".csv";
    auto os = open_out(dir / name);
    os << "r,psi\n";
    for (int i = 0; i < samples; ++i) {
      const double r = p.R * i / (samples - 1);
      const double psi = det ? psi_profile_detached(s, r) : psi_profile_coriolis(s, r);
      os << format_number(r) << ',' << format_number(psi) << '\n';
    }
    files.push_back(name);
  }
  rep["roots"] = jroots;

  {
    auto os = open_out(dir / "functional.csv");
    os << "a,I\n";
    for (int i = 0; i < samples; ++i) {
      const double a = p.R * i / (samples - 1);
      const double I = p.kind == ProblemKind::Detached ? functional_curve_detached(p, a)
                                                       : functional_curve_coriolis(p, a);
      os << format_number(a) << ',' << format_number(I) << '\n';
    }
    files.push_back("functional.csv");
  }
  rep["files"] = files;

  if (roots.empty()) {
    rep["summary"] = p.kind == ProblemKind::Detached
                         ? "no nontrivial solutions: omega <= 4Ce/R^2"
                         : "no nontrivial solutions: omega <= 4C/R^2";
  } else if (p.kind == ProblemKind::Detached && roots.size() == 2) {
    rep["summary"] = "two splice radii a1 < a* < a2";
  } else {
    rep["summary"] = "one splice radius";
  }
  out << rep.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(json cfg, std::ostream& out, std::ostream& err) {
  const ProblemKind kind = kind_of(cfg);
  const double omega = positive(cfg, "problem.omega");
  std::string method = text(cfg, "solve.method", {"auto", "goldshtik", "tanh"});
  if (method == "auto") method = kind == ProblemKind::Detached ? "goldshtik" : "tanh";
  if ((method == "goldshtik") != (kind == ProblemKind::Detached)) {
    throw ConfigError("solve.method: " + method + " does not solve the " +
                      std::string(to_string(kind)) + " problem");
  }
  cfg["solve"]["method"] = method;
  const double tol = positive(cfg, "solve.tol");
  const GridPtr g = make_grid(cfg);
  const fs::path dir = output_dir(cfg);

  json extra = json::object();
  SolveResult res = [&]() -> SolveResult {
    if (method == "goldshtik") {
      const int max_iter = integer(cfg, "solve.max_iter", 1);
      const std::string stype = text(cfg, "solve.seed.type", {"default", "disk"});
      const Circle in = inscribed_circle(*g);
      RegionMask seed(g);
      Point centre = in.center;
      if (stype == "default") {
        seed = default_seed(g, omega, tol);
      } else {
        const json& c = at(cfg, "solve.seed.center");
        if (!c.is_null()) {
          if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
            throw ConfigError("solve.seed.center: expected [x, y] or null");
          }
          centre = {c[0].get<double>(), c[1].get<double>()};
        }
        seed = disk_region(g, centre, positive(cfg, "solve.seed.radius"));
      }
      if (seed.empty()) throw ConfigError("solve.seed.radius: seed region has no interior cells");
      cfg["solve"]["seed"]["center"] = {centre.x, centre.y};

      json jseed = {{"cells", seed.count()},
                    {"equivalent_radius", region_radius_estimate(seed)}};
      if (g->disk()) {
        const ScalarField psi0 = harmonic_extension(g, tol);
        const auto gamma = circle_points(centre, region_radius_estimate(seed), 64);
        try {
          jseed["condition_holds"] = seed_condition_holds(seed, gamma, psi0, omega);
        } catch (const Error& e) {
          jseed["condition_holds"] = nullptr;
          jseed["condition_note"] = e.what();
        }
      } else {
        jseed["condition_holds"] = nullptr;
        jseed["condition_note"] = "seed check needs the disk Green's function";
      }
      extra["seed"] = jseed;
      return goldshtik_iterate(g, omega, seed, static_cast<std::size_t>(max_iter), tol);
    }
    std::vector<double> schedule;
    const json& js = at(cfg, "solve.schedule");
    if (js.is_null()) {
      schedule = default_sharpness_schedule(g->max_boundary_value());
    } else {
      if (!js.is_array()) throw ConfigError("solve.schedule: expected an array or null");
      for (const json& v : js) {
        if (!v.is_number()) throw ConfigError("solve.schedule: entries must be numbers");
        schedule.push_back(v.get<double>());
      }
    }
    cfg["solve"]["schedule"] = schedule;
    TanhOptions opts;
    opts.tol = positive(cfg, "solve.tanh_tol");
    opts.damping = positive(cfg, "solve.damping");
    return tanh_continuation(g, omega, schedule, opts);
  }();

  const SpliceDiagnostics diag = verify_splice(res.field, omega, kind);
  {
    auto os = open_out(dir / "field.csv");
    write_csv(os, res.field);
  }
  json rep = header("solve", cfg);
  rep["grid"] = {{"nx", g->nx()}, {"ny", g->ny()}, {"h", g->h()},
                 {"interior_cells", g->interior_cells().size()}};
  rep["report"] = to_json(res.report);
  rep["splice"] = {{"max_gradient_jump", diag.max_gradient_jump},
                   {"max_branch_residual", diag.max_branch_residual},
                   {"interface_cells", diag.interface_cells}};
  for (auto it = extra.begin(); it != extra.end(); ++it) rep[it.key()] = *it;
  if (g->disk() && g->max_boundary_value() > 0.0) {
    const DiskProblem p(g->disk()->radius, g->max_boundary_value(), omega, kind);
    json ref = json::array();
    if (kind == ProblemKind::Detached) {
      for (const auto& r : solve_roots_detached(p)) ref.push_back(r.a);
    } else if (auto r = solve_root_coriolis(p)) {
      ref.push_back(r->a);
    }
    rep["analytic_radii"] = ref;
  }
  rep["files"] = {"field.csv", "report.json"};
  write_json(dir / "report.json", rep);
  out << rep.dump(2) << '\n';

  if (!res.report.converged) {
    err << "error: iteration did not converge within solve.max_iter steps\n";
    return kNoConvergence;
  }
  return res.report.classification == Classification::Trivial ? kTrivial : kOk;
}

// ---------------------------------------------------------------------------
// scan

int cmd_scan(json cfg, std::ostream& out) {
  const DiskProblem p = disk_problem(cfg);
  if (text(cfg, "geometry.shape", {"disk", "rect"}) != "disk") {
    throw ConfigError("geometry.shape: scans run on the disk");
  }
  std::string fam = text(cfg, "scan.family", {"auto", "disks", "rings"});
  if (fam == "auto") fam = p.kind == ProblemKind::Detached ? "disks" : "rings";
  cfg["scan"]["family"] = fam;
  const Family family = fam == "disks" ? Family::ConcentricDisks : Family::BoundaryRings;
  const int samples = integer(cfg, "scan.samples", 0);
  if (samples < 16) throw ConfigError("scan.samples: must be >= 16, got " + std::to_string(samples));

  ScanOptions opts;
  opts.n = integer(cfg, "geometry.n", 16);
  opts.a_min = maybe_num(cfg, "scan.a_min");
  opts.a_max = maybe_num(cfg, "scan.a_max");
  opts.jobs = static_cast<unsigned>(integer(cfg, "jobs", 1));
  opts.tol = positive(cfg, "solve.tol");
  const fs::path dir = output_dir(cfg);

  const auto curve = scan_disk_family(p, family, static_cast<std::size_t>(samples), opts);
  {
    auto os = open_out(dir / "scan.csv");
    os << "a,I,A,Q,q\n";
    for (const ScanPoint& s : curve) {
      os << format_number(s.a) << ',' << format_number(s.value.I) << ','
         << format_number(s.value.A) << ',' << format_number(s.value.Q) << ','
         << format_number(s.value.q) << '\n';
    }
  }

  const CurveExtrema ex = locate_extrema(curve, family);
  auto jext = [](const std::optional<Extremum>& e) {
    return e ? json{{"a", e->a}, {"I", e->value}} : json(nullptr);
  };
  const GridPtr g = build_disk_grid(p.R, p.C, opts.n);
  const BoundL bl = bound_L(*g);
  const BoundL1 bl1 = bound_L1(g, p.omega, opts.tol);

  json roots = json::array();
  if (p.kind == ProblemKind::Detached) {
    for (const auto& r : solve_roots_detached(p)) roots.push_back(r.a);
  } else if (auto r = solve_root_coriolis(p)) {
    roots.push_back(r->a);
  }

  json rep = header("scan", cfg);
  rep["h"] = g->h();
  rep["extrema"] = {{"max", jext(ex.max)}, {"min", jext(ex.min)}};
  rep["analytic_roots"] = roots;
  rep["bounds"] = {{"L", bl.L},
                   {"R1", bl.R1(p.omega)},
                   {"L1_exact", bl1.exact},
                   {"L1_estimate", bl1.estimate},
                   {"inscribed_radius", bl1.R},
                   {"circumradius", bl1.R1},
                   {"full_domain", to_json(bl1.full)}};
  rep["files"] = {"scan.csv", "scan.json"};
  write_json(dir / "scan.json", rep);
  out << rep.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double error;
  double tolerance;
  std::string detail;
  bool pass() const { return error <= tolerance; }
};

// (1 / 2pi) * integral of G over the disk r < a.
double disk_potential(double a, double R, double r) {
  return r < a ? 0.25 * (a * a - r * r) + 0.5 * a * a * std::log(R / a)
               : 0.5 * a * a * std::log(R / r);
}

Check check_green(const GridPtr& g, double a, double scale) {
  const double R = g->disk()->radius;
  const double h = g->h();
  const RegionMask B = disk_region(g, {0.0, 0.0}, a);
  std::vector<Point> probes;
  for (int i = 0; i < 50; ++i) {
    const double r = R * 0.98 * (i + 0.5) / 50.0;
    const double t = 2.399963229728653 * i;
    probes.push_back({r * std::cos(t), r * std::sin(t)});
  }
  const GreenKernel kernel = [scale](Point p, Point q, double Rd) {
    return scale * green_disk(p, q, Rd);
  };
  const auto conv = convolve_region(B, 1.0, probes, kernel);
  double worst = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double r = std::hypot(probes[i].x, probes[i].y);
    worst = std::max(worst, std::abs(conv[i] - disk_potential(a, R, r)) / (R * R));
  }
  const double hr = h / R;
  return {"green_quadrature", worst, 5.0 * hr * hr * std::abs(std::log(hr)),
          "vortex-disk convolution vs closed form at 50 probes"};
}

Check check_fd(const GridPtr& g, const DiskProblem& p, double a, double fd_tol) {
  const ScalarField rhs = disk_region(g, {0.0, 0.0}, a).indicator(p.omega);
  const ScalarField u = solve_poisson(g, rhs);
  const ScalarField ref = ScalarField::sample(g, [&](Point c) {
    return psi_vortex_disk(p, a, std::min(p.R, std::hypot(c.x, c.y)));
  });
  return {"fd_solve", max_abs_diff(u, ref), fd_tol * p.C,
          "finite-difference vortex-disk solve vs closed form"};
}

Check check_increment(int pairs, unsigned seed) {
  const GridPtr g = build_rect_grid(1.0, 1.0, 31, [](Point q) { return 1.0 + q.x * q.y; });
  const FunctionalEvaluator eval(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const double cx = U(rng), cy = U(rng), r = 0.1 + 0.3 * U(rng), w = 1.0 + 30.0 * U(rng);
    const double dx = U(rng), dy = U(rng), dr = 0.05 + 0.25 * U(rng);
    const RegionMask B = disk_region(g, {cx, cy}, r);
    RegionMask D = disk_region(g, {dx, dy}, dr);
    for (std::size_t k : B.cells()) D.erase(k);
    const double inc = eval.increment(B, D, w);
    const double direct = eval.evaluate(B.united(D), w).I - eval.evaluate(B, w).I;
    worst = std::max(worst, std::abs(inc - direct));
  }
  return {"functional_increment", worst, 10.0 * kDefaultPoissonTol,
          std::to_string(pairs) + " random region pairs on a 32x32 grid"};
}

Check check_ring_derivative(const DiskProblem& p) {
  const double d = 1e-5 * p.R;
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double a = p.R * i / 101.0;
    const double fd = (functional_curve_coriolis(p, a + d) - functional_curve_coriolis(p, a - d)) / (2 * d);
    const double exact = -4.0 * kPi * p.omega * a * y1_eval(p, a);
    const double scale = 4.0 * kPi * p.omega * a * std::max(p.C, 0.25 * p.omega * p.R * p.R);
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  return {"ring_curve_derivative", worst, 1e-6,
          "central difference of the ring curve vs -4 pi omega a y1(a)"};
}

Check check_disk_derivative(const DiskProblem& p) {
  const double d = 1e-5 * p.R;
  double lo = 1e300, hi = -1e300;
  for (int i = 1; i <= 100; ++i) {
    const double a = p.R * i / 101.0;
    const double y = y_eval(p, a);
    if (std::abs(y) < 1e-3 * p.C) continue;
    const double fd = (functional_curve_detached(p, a + d) - functional_curve_detached(p, a - d)) / (2 * d);
    const double ratio = fd / (a * y);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double mid = 0.5 * (lo + hi);
  return {"disk_curve_proportionality", (hi - lo) / std::abs(mid), 1e-6,
          "spread of I'(a) / (a y(a)) over 100 radii (constant 4 pi omega)"};
}

Check check_branch_counts(double R, double C) {
  const double s = C / (R * R);
  auto det = [&](double w) {
    return solve_roots_detached(DiskProblem(R, C, w * s, ProblemKind::Detached)).size();
  };
  auto cor = [&](double w) {
    return solve_root_coriolis(DiskProblem(R, C, w * s, ProblemKind::Coriolis)).has_value();
  };
  int bad = 0;
  bad += det(12.0) != 2;
  bad += det(4.0 * std::numbers::e) != 1;
  bad += det(10.0) != 0;
  for (double w : {5.0, 8.0, 50.0}) bad += !cor(w);
  for (double w : {1.0, 3.9}) bad += cor(w);
  return {"branch_counts", static_cast<double>(bad), 0.0,
          "root counts on both sides of 4Ce/R^2 and 4C/R^2"};
}

int cmd_verify(json cfg, std::ostream& out, std::ostream& err) {
  const double R = positive(cfg, "problem.R");
  const double C = positive(cfg, "problem.C");
  const double omega = positive(cfg, "verify.omega");
  const double a = positive(cfg, "verify.a");
  if (!(a < R)) throw ConfigError("verify.a: must lie below problem.R");
  const int n = integer(cfg, "verify.n", 16);
  const double fd_tol = positive(cfg, "verify.fd_tol");
  const double scale = num(cfg, "verify.kernel_scale");
  const int pairs = integer(cfg, "verify.pairs", 1);
  const unsigned seed = static_cast<unsigned>(integer(cfg, "verify.rng_seed", 0));
  const fs::path dir = output_dir(cfg);

  const GridPtr g = build_disk_grid(R, C, n);
  const std::vector<Check> checks{
      check_green(g, a, scale),
      check_fd(g, DiskProblem(R, C, omega, ProblemKind::Detached), a, fd_tol),
      check_increment(pairs, seed),
      check_ring_derivative(DiskProblem(R, C, omega, ProblemKind::Coriolis)),
      check_disk_derivative(DiskProblem(R, C, omega, ProblemKind::Detached)),
      check_branch_counts(R, C),
  };

  json rep = header("verify", cfg);
  json items = json::array();
  bool ok = true;
  for (const Check& c : checks) {
    ok = ok && c.pass();
    items.push_back({{"name", c.name},
                     {"pass", c.pass()},
                     {"error", c.error},
                     {"tolerance", c.tolerance},
                     {"detail", c.detail}});
    if (!c.pass()) {
      err << "FAIL " << c.name << ": error " << format_number(c.error)
          << " exceeds tolerance " << format_number(c.tolerance) << '\n';
    }
  }
  rep["checks"] = items;
  rep["pass"] = ok;
  rep["files"] = {"verify.json"};
  write_json(dir / "verify.json", rep);
  out << rep.dump(2) << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

json default_config() {
  return json::parse(R"({
    "problem": {"R": 1.0, "C": 1.0, "omega": 16.0, "kind": "detached"},
    "geometry": {"shape": "disk", "n": 128, "width": 1.0, "height": 1.0,
                 "slope_x": 0.0, "slope_y": 0.0},
    "analytic": {"samples": 201},
    "solve": {"method": "auto", "max_iter": 1000, "tol": 1e-10,
              "seed": {"type": "default", "radius": 0.25, "center": null},
              "schedule": null, "tanh_tol": 1e-8, "damping": 0.7},
    "scan": {"family": "auto", "samples": 256, "a_min": null, "a_max": null},
    "verify": {"n": 128, "omega": 8.0, "a": 0.6, "fd_tol": 0.02,
               "kernel_scale": 1.0, "pairs": 20, "rng_seed": 1},
    "output": {"dir": "."},
    "jobs": 1
  })");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splice solver for vortex/potential free-boundary flows", "splice"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    ov.str(sub, "--out", "output.dir", "Output directory");
    ov.num(sub, "--R", "problem.R", "Disk radius");
    ov.num(sub, "--C", "problem.C", "Boundary value");
    ov.num(sub, "--omega", "problem.omega", "Vorticity");
    ov.str(sub, "--kind", "problem.kind", "detached or coriolis");
  };

  CLI::App* analytic = app.add_subcommand("analytic", "Closed-form disk solutions");
  common(analytic);
  ov.integer(analytic, "--samples", "analytic.samples", "Rows in the profile CSVs");

  CLI::App* solve = app.add_subcommand("solve", "Finite-difference free-boundary solve");
  common(solve);
  ov.str(solve, "--shape", "geometry.shape", "disk or rect");
  ov.integer(solve, "--n", "geometry.n", "Cells across the diameter or width");
  ov.num(solve, "--width", "geometry.width", "Rectangle width");
  ov.num(solve, "--height", "geometry.height", "Rectangle height");
  ov.num(solve, "--slope-x", "geometry.slope_x", "Rectangle boundary data slope in x");
  ov.num(solve, "--slope-y", "geometry.slope_y", "Rectangle boundary data slope in y");
  ov.str(solve, "--method", "solve.method", "auto, goldshtik or tanh");
  ov.str(solve, "--seed", "solve.seed.type", "default or disk");
  ov.num(solve, "--seed-radius", "solve.seed.radius", "Radius of a disk seed");
  ov.integer(solve, "--max-iter", "solve.max_iter", "Iteration cap");
  ov.num(solve, "--tol", "solve.tol", "Poisson residual tolerance");

  CLI::App* scan = app.add_subcommand("scan", "Functional along disk or ring families");
  common(scan);
  ov.integer(scan, "--n", "geometry.n", "Cells across the diameter");
  ov.str(scan, "--family", "scan.family", "auto, disks or rings");
  ov.integer(scan, "--samples", "scan.samples", "Family members (>= 16)");
  ov.num(scan, "--a-min", "scan.a_min", "Smallest family radius");
  ov.num(scan, "--a-max", "scan.a_max", "Largest family radius");
  ov.integer(scan, "--jobs", "jobs", "Worker threads");
  ov.num(scan, "--tol", "solve.tol", "Poisson residual tolerance");

  CLI::App* verify = app.add_subcommand("verify", "Cross-module oracle suite");
  common(verify);
  ov.integer(verify, "--n", "verify.n", "Cells across the diameter");
  ov.num(verify, "--fd-tol", "verify.fd_tol", "Allowed FD error in units of C");
  ov.num(verify, "--kernel-scale", "verify.kernel_scale",
         "Multiplier on the Green's kernel (mutation check)");
  ov.num(verify, "--verify-omega", "verify.omega", "Vorticity of the oracle problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    json cfg = load_config(config_path, ov);
    if (analytic->parsed()) return cmd_analytic(std::move(cfg), out);
    if (solve->parsed()) return cmd_solve(std::move(cfg), out, err);
    if (scan->parsed()) return cmd_scan(std::move(cfg), out);
    return cmd_verify(std::move(cfg), out, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace splice::cli

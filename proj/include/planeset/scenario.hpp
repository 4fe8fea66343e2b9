#ifndef PLANESET_SCENARIO_HPP
#define PLANESET_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "planeset/curve_io.hpp"
#include "planeset/exactly_m.hpp"
#include "planeset/packing_io.hpp"
#include "planeset/svg.hpp"

namespace planeset {

namespace fs = std::filesystem;
using nlohmann::json;

/// Process exit statuses.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitRuntime = 3 };

struct RunOptions {
  fs::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config's "seed"
  std::optional<std::string> kind;    // subcommand; must match the config's "kind"
  bool verbose = false;
  std::ostream* log = &std::cerr;
};

struct ScenarioOutcome {
  int exit_code = kExitOk;
  std::string diagnostic;  // one line, empty on success
  std::vector<fs::path> files;
};

namespace scenario_detail {

[[noreturn]] inline void config_error(const std::string& msg) { throw Error(Errc::ConfigError, msg); }

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) config_error(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(std::string("key '") + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key);
}

inline Point2 get_point(const json& j, const char* key, Point2 fallback = {}) {
  if (!j.contains(key)) return fallback;
  const auto v = get<std::vector<double>>(j, key);
  if (v.size() != 2) config_error(std::string("key '") + key + "' must be [x, y]");
  return {v[0], v[1]};
}

inline std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto v = get<std::int64_t>(j, key);
  if (v < 0) config_error(std::string("key '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

inline fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline SampledCurve curve_from(const json& j, const fs::path& base) {
  const auto type = get<std::string>(j, "type");
  const std::size_t n = get_count(j, "n", 2048);
  if (type == "circle") return generate_circle(get<double>(j, "r"), n, get_point(j, "center"));
  if (type == "ellipse") return generate_ellipse(get<double>(j, "a"), get<double>(j, "b"), n);
  if (type == "reuleaux") return generate_reuleaux(get<int>(j, "k"), get<double>(j, "d"), n);
  if (type == "fourier_cw") {
    std::vector<Harmonic> hs;
    for (const auto& h : j.value("harmonics", json::array())) {
      hs.push_back({get<int>(h, "order"), get_or<double>(h, "cos", 0.0), get_or<double>(h, "sin", 0.0)});
    }
    return generate_fourier_cw(get<double>(j, "d"), hs, n);
  }
  if (type == "file") {
    const fs::path path = resolve(base, get<std::string>(j, "path"));
    std::ifstream f(path);
    if (!f) throw Error(Errc::IoError, "cannot read curve file " + path.string());
    return read_curve(f);
  }
  config_error("unknown curve type '" + type + "'");
}

inline ShapePacking packing_from(const json& j, const fs::path& base, std::uint64_t seed) {
  if (j.contains("file")) {
    const fs::path path = resolve(base, get<std::string>(j, "file"));
    std::ifstream f(path);
    if (!f) throw Error(Errc::IoError, "cannot read packing file " + path.string());
    json doc;
    try {
      f >> doc;
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, path.string() + ": " + e.what());
    }
    return packing_from_json(doc);
  }
  const json outer_j = j.value("outer", json{{"type", "circle"}, {"radius", 1.0}});
  OuterDomain outer;
  const auto outer_type = get_or<std::string>(outer_j, "type", "circle");
  if (outer_type == "circle") {
    outer = Circle(get_point(outer_j, "center"), get_or<double>(outer_j, "radius", 1.0));
  } else if (outer_type == "square") {
    outer = SquareDomain{get_point(outer_j, "center"), get_or<double>(outer_j, "half", 1.0)};
  } else {
    config_error("unknown outer domain '" + outer_type + "'");
  }
  PackingOptions opt;
  const auto shape = get_or<std::string>(j, "shape", "circle");
  if (shape == "circle") {
    opt.shape = CellShape::Circle;
  } else if (shape == "square") {
    opt.shape = CellShape::Square;
  } else if (shape == "ellipse") {
    opt.shape = CellShape::Ellipse;
  } else {
    config_error("unknown cell shape '" + shape + "'");
  }
  opt.min_size = get_or<double>(j, "min_size", opt.min_size);
  opt.max_count = get_count(j, "max_count", opt.max_count);
  opt.gap_fraction = get_or<double>(j, "gap_fraction", opt.gap_fraction);
  opt.max_size_fraction = get_or<double>(j, "max_size_fraction", opt.max_size_fraction);
  opt.trial_budget = get_count(j, "trial_budget", opt.trial_budget);
  opt.ellipse_aspect = get_or<double>(j, "ellipse_aspect", opt.ellipse_aspect);
  opt.seed = seed;
  return greedy_shape_packing(outer, opt);
}

class Writer {
 public:
  Writer(const fs::path& dir, ScenarioOutcome& out) : dir_(dir), out_(out) {}

  void text(const std::string& name, const std::string& body) {
    const fs::path path = dir_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
    f << body;
    if (!f) throw Error(Errc::IoError, "write failed for " + path.string());
    out_.files.push_back(path);
  }
  void svg(const std::string& name, const Scene& s) { text(name, render_svg(s)); }

 private:
  fs::path dir_;
  ScenarioOutcome& out_;
};

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::ConfigError:
    case Errc::ParseError:
    case Errc::BadParameter:
    case Errc::InvalidTolerance:
    case Errc::InvalidCircle:
    case Errc::WindowTooSmall:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

inline void run_generate(const json& cfg, const fs::path& base, Writer& w) {
  const SampledCurve c = curve_from(get<json>(cfg, "curve"), base);
  std::ostringstream os;
  write_curve(os, c);
  w.text("curve.txt", os.str());
  Scene s;
  s.add_curve(c);
  w.svg("curve.svg", s);
}

inline void run_scan(const json& cfg, const fs::path& base, Writer& w, std::ostream& log, bool verbose) {
  const json kj = cfg.value("constraints", json::object());
  ScanOptions opt;
  if (auto b = get_opt<std::uint64_t>(cfg, "budget")) opt.budget = *b;
  opt.max_witnesses = get_count(cfg, "max_witnesses", opt.max_witnesses);
  opt.threads = static_cast<unsigned>(get_count(cfg, "threads", 1));

  auto apply = [&](ScanConstraints k) {
    k.diagonal = get_opt<double>(kj, "diagonal");
    k.max_aspect = get_opt<double>(kj, "max_aspect");
    k.max_short_side = get_opt<double>(kj, "max_short_side");
    k.membership_tol = get_or<double>(kj, "membership_tol", k.membership_tol);
    k.angle_tol = get_or<double>(kj, "angle_tol", k.angle_tol);
    k.eps_geom = get_or<double>(kj, "eps_geom", k.eps_geom);
    return k;
  };

  ScanReport report;
  Scene scene;
  if (cfg.contains("curve")) {
    const SampledCurve c = curve_from(get<json>(cfg, "curve"), base);
    report = scan_rectangle_property(c, apply(ScanConstraints::for_curve(c)), opt);
    scene.add_curve(c);
  } else if (cfg.contains("arc")) {
    const json& a = cfg.at("arc");
    const double deg = std::numbers::pi / 180.0;
    auto pts = generate_arc(get<double>(a, "r"), get_or<double>(a, "start_deg", 0.0) * deg,
                            get<double>(a, "span_deg") * deg, get_count(a, "n", 512), get_point(a, "center"));
    double spacing = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) spacing = std::max(spacing, distance(pts[i], pts[i + 1]));
    ScanConstraints k;
    k.membership_tol = 2.0 * spacing;
    k.eps_geom = 1e-9 * set_diameter(pts);
    const PolylineSet set(pts, false, k.eps_geom);
    report = scan_rectangle_property(std::span<const Point2>(pts), set, apply(k), opt);
    scene.add_polyline(pts, false);
  } else if (cfg.contains("points")) {
    std::vector<Point2> pts;
    for (const auto& p : cfg.at("points")) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != 2) config_error("points must be [x, y] pairs");
      pts.emplace_back(v[0], v[1]);
    }
    if (pts.empty()) config_error("points is empty");
    const double diam = std::max(set_diameter(pts), 1e-300);
    ScanConstraints k;
    k.membership_tol = 1e-9 * diam;
    k.eps_geom = 1e-9 * diam;
    const PointSet set(pts, std::max(diam / 64.0, 1e-300));
    report = scan_rectangle_property(std::span<const Point2>(pts), set, apply(k), opt);
    for (auto p : pts) scene.add_point(p);
  } else {
    config_error("scan needs one of 'curve', 'arc' or 'points'");
  }

  std::ostringstream csv;
  write_witness_csv(csv, report.violations);
  w.text("witnesses.csv", csv.str());
  const json summary = {{"violation_count", report.violation_count},
                        {"satisfied_count", report.satisfied_count},
                        {"triples_examined", report.triples_examined},
                        {"sample_count", report.sample_count},
                        {"budget_exhausted", report.budget_exhausted},
                        {"witnesses_truncated", report.witnesses_truncated}};
  w.text("scan_summary.json", summary.dump(2) + "\n");
  const std::size_t shown = std::min<std::size_t>(report.violations.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) scene.add_witness(report.violations[i]);
  w.svg("scan.svg", scene);
  if (verbose) {
    log << "scan: " << report.violation_count << " violations, " << report.triples_examined << " triples, "
        << report.runtime_seconds << " s\n";
  }
}

inline void run_classify(const json& cfg, const fs::path& base, Writer& w, std::ostream& log, bool verbose) {
  const SampledCurve c = curve_from(get<json>(cfg, "curve"), base);
  ClassificationParams p = ClassificationParams::for_curve(c, get<double>(cfg, "d"));
  p.eps_nbhd = get_or<double>(cfg, "eps_nbhd", p.eps_nbhd);
  p.arc_match_tol = get_or<double>(cfg, "arc_match_tol", p.arc_match_tol);
  const auto report = classify_curve(c, p, static_cast<unsigned>(get_count(cfg, "threads", 1)));
  std::ostringstream csv;
  write_labels_csv(csv, c, report);
  w.text("labels.csv", csv.str());
  Scene s;
  s.add_classified_curve(c, report.labels);
  w.svg("classify.svg", s);
  if (verbose) {
    log << "classify:";
    for (auto k : kAllPointClasses) log << ' ' << to_string(k) << '=' << report.count(k);
    log << '\n';
  }
}

inline void run_pack(const json& cfg, const fs::path& base, Writer& w, std::uint64_t seed, std::ostream& log,
                     bool verbose) {
  const ShapePacking p = packing_from(cfg, base, seed);
  w.text("packing.json", packing_to_json(p).dump(2) + "\n");
  Scene s;
  s.add_packing(p);
  w.svg("packing.svg", s);
  if (verbose) log << "pack: " << p.cells.size() << " cells\n";
}

inline void run_probe(const json& cfg, const fs::path& base, Writer& w, std::uint64_t seed) {
  const CompactSetK k(packing_from(get<json>(cfg, "packing"), base, seed));
  std::vector<Circle> probes;
  for (const auto& pj : get<json>(cfg, "probes")) probes.emplace_back(get_point(pj, "center"), get<double>(pj, "radius"));
  const auto results = probe_all(k, probes, get_count(cfg, "angular_resolution", 3600),
                                 static_cast<unsigned>(get_count(cfg, "threads", 1)));
  std::ostringstream csv;
  write_probes_csv(csv, probes, results);
  w.text("probes.csv", csv.str());
  Scene s;
  s.add_packing(k.packing());
  for (const auto& c : probes) s.add_circle(c, "#d62728");
  w.svg("probe.svg", s);
}

inline void run_search(const json& cfg, const fs::path& base, Writer& w, std::uint64_t seed, std::ostream& log,
                       bool verbose) {
  SearchOptions opt;
  opt.m = get_count(cfg, "m", opt.m);
  opt.budget = get_count(cfg, "budget", opt.budget);
  opt.seed = seed;
  opt.angular_resolution = get_count(cfg, "angular_resolution", opt.angular_resolution);
  const auto family = get_or<std::string>(cfg, "family", "mixed");
  if (family == "random") {
    opt.family = ProbeFamily::Random;
  } else if (family == "structured") {
    opt.family = ProbeFamily::Structured;
  } else if (family == "mixed") {
    opt.family = ProbeFamily::Mixed;
  } else {
    config_error("unknown probe family '" + family + "'");
  }
  const json target = get<json>(cfg, "target");
  SearchResult r;
  Scene s;
  if (target.contains("packing")) {
    const CompactSetK k(packing_from(target.at("packing"), base, seed));
    r = exactly_m_search(k, opt);
    s.add_packing(k.packing());
  } else if (target.contains("curve")) {
    const SampledCurve c = curve_from(target.at("curve"), base);
    r = exactly_m_search(c, opt);
    s.add_curve(c);
  } else if (target.contains("circle")) {
    const json& cj = target.at("circle");
    const Circle c(get_point(cj, "center"), get<double>(cj, "radius"));
    r = exactly_m_search(c, opt);
    s.add_circle(c);
  } else {
    config_error("search target needs one of 'packing', 'curve' or 'circle'");
  }
  json out = {{"m", opt.m}, {"budget", opt.budget}, {"probes_used", r.probes_used},
              {"unresolved_probes", r.unresolved_probes}, {"found", r.witness.has_value()}};
  if (r.witness) {
    out["witness"] = {{"center", {r.witness->center.x, r.witness->center.y}}, {"radius", r.witness->radius}};
    s.add_circle(*r.witness, "#d62728");
  } else {
    out["note"] = "no probe found within budget; absence is not a proof";
  }
  w.text("search.json", out.dump(2) + "\n");
  w.svg("search.svg", s);
  if (verbose) {
    log << "search: " << (r.witness ? "found" : "not found within budget") << " after " << r.probes_used
        << " probes\n";
  }
}

inline void run_render(const json& cfg, const fs::path& base, Writer& w) {
  Scene s;
  for (const auto& p : cfg.value("curves", json::array())) {
    const fs::path path = resolve(base, p.get<std::string>());
    std::ifstream f(path);
    if (!f) throw Error(Errc::IoError, "cannot read curve file " + path.string());
    s.add_curve(read_curve(f));
  }
  if (cfg.contains("packing")) s.add_packing(packing_from(cfg.at("packing"), base, 0));
  for (const auto& c : cfg.value("circles", json::array())) s.add_circle(Circle(get_point(c, "center"), get<double>(c, "radius")));
  w.svg(get_or<std::string>(cfg, "output", "render.svg"), s);
}

}  // namespace scenario_detail

/// Runs the scenario named by the config's "kind" and writes its outputs
/// into opt.out_dir. Never throws; failures map to exit codes 2 and 3.
inline ScenarioOutcome run_scenario(const fs::path& config_path, const RunOptions& opt = {}) {
  using namespace scenario_detail;
  ScenarioOutcome out;
  std::ostream& log = opt.log ? *opt.log : std::cerr;
  try {
    std::ifstream f(config_path);
    if (!f) throw Error(Errc::ConfigError, "cannot read config " + config_path.string());
    json cfg;
    try {
      f >> cfg;
    } catch (const json::exception& e) {
      throw Error(Errc::ConfigError, config_path.string() + ": " + e.what());
    }
    if (!cfg.is_object()) config_error("config must be a JSON object");
    const auto kind = get<std::string>(cfg, "kind");
    if (opt.kind && *opt.kind != kind) config_error("config kind '" + kind + "' does not match '" + *opt.kind + "'");
    const std::uint64_t seed = opt.seed ? *opt.seed : get_or<std::uint64_t>(cfg, "seed", 0);
    const fs::path base = config_path.parent_path();
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + opt.out_dir.string());
    Writer w(opt.out_dir, out);
    if (kind == "generate") {
      run_generate(cfg, base, w);
    } else if (kind == "scan") {
      run_scan(cfg, base, w, log, opt.verbose);
    } else if (kind == "classify") {
      run_classify(cfg, base, w, log, opt.verbose);
    } else if (kind == "pack") {
      run_pack(cfg, base, w, seed, log, opt.verbose);
    } else if (kind == "probe") {
      run_probe(cfg, base, w, seed);
    } else if (kind == "search") {
      run_search(cfg, base, w, seed, log, opt.verbose);
    } else if (kind == "render") {
      run_render(cfg, base, w);
    } else {
      config_error("unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.diagnostic = e.what();
  } catch (const json::exception& e) {
    out.exit_code = kExitConfig;
    out.diagnostic = std::string("ConfigError: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = kExitRuntime;
    out.diagnostic = e.what();
  }
  return out;
}

}  // namespace planeset

#endif  // PLANESET_SCENARIO_HPP

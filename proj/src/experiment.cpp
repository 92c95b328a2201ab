#include "scatter/experiment.hpp"

#include <cmath>
#include <sstream>

#include "scatter/analytic_oracle.hpp"

namespace scatter {
namespace {

using io::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& field) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(field, e.what());
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& field) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, field);
}

Vec2 vec(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(field, "expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

Curve parse_obstacle(const json& j, const std::filesystem::path& base) {
  if (j.contains("curve_file")) {
    return io::read_state(resolve(base, get<std::string>(j, "curve_file", "obstacle.curve_file"))).curve;
  }
  if (j.contains("curve")) {
    try {
      return io::state_from_json(j.at("curve")).curve;
    } catch (const std::exception& e) {
      fail("obstacle.curve", e.what());
    }
  }
  const auto kind = get<std::string>(j, "kind", "obstacle.kind");
  BenchmarkCurve c;
  if (kind == "circle") {
    c = BenchmarkCurve::circle(get_or<double>(j, "r0", 1.0, "obstacle.r0"));
    if (!(c.r0 > 0.0)) fail("obstacle.r0", "must be positive");
  } else if (kind == "apple") {
    c = BenchmarkCurve::apple();
  } else if (kind == "kite") {
    c = BenchmarkCurve::kite();
  } else if (kind == "rounded_triangle") {
    c = BenchmarkCurve::rounded_triangle();
  } else {
    fail("obstacle.kind", "unknown benchmark '" + kind + "'");
  }
  if (j.contains("center")) c.offset = vec(j.at("center"), "obstacle.center");
  return c;
}

IterateState parse_initial(const json& j, const std::filesystem::path& base, int order) {
  IterateState s;
  if (j.contains("state_file")) {
    s = io::read_state(resolve(base, get<std::string>(j, "state_file", "initial.state_file")));
  } else if (j.contains("state")) {
    try {
      s = io::state_from_json(j.at("state"));
    } catch (const std::exception& e) {
      fail("initial.state", e.what());
    }
  } else {
    const double r0 = get_or<double>(j, "r0", 0.5, "initial.r0");
    if (!(r0 > 0.0)) fail("initial.r0", "must be positive");
    const Vec2 c = j.contains("center") ? vec(j.at("center"), "initial.center") : Vec2::Zero();
    s = initial_circle(r0, c, order, get_or<double>(j, "lambda", 1.0, "initial.lambda"));
  }
  if (j.contains("lambda")) s.lambda = get<double>(j, "lambda", "initial.lambda");
  if (s.order() != order) fail("initial", "radial order differs from inversion.M");
  if (!(s.lambda > 0.0)) fail("initial.lambda", "must be positive");
  if (!radial_positive(s.curve)) fail("initial", "radial function must stay above the positivity floor");
  return s;
}

void parse_inversion(const json& j, InversionConfig& c) {
  c.s = get_or<double>(j, "s", c.s, "inversion.s");
  c.M = get_or<int>(j, "M", c.M, "inversion.M");
  c.rho = get_or<double>(j, "rho", c.rho, "inversion.rho");
  c.tau = get_or<double>(j, "tau", c.tau, "inversion.tau");
  c.max_iterations = get_or<int>(j, "max_iterations", c.max_iterations, "inversion.max_iterations");
  c.n_q = get_or<int>(j, "n_q", c.n_q, "inversion.n_q");
  c.beta_min = get_or<double>(j, "beta_min", c.beta_min, "inversion.beta_min");
  c.beta_max = get_or<double>(j, "beta_max", c.beta_max, "inversion.beta_max");
  if (j.contains("delta")) c.delta = get<double>(j, "delta", "inversion.delta");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    fail("inversion", e.what());
  }
}

bool same_direction(const Vec2& a, const Vec2& b) { return (a - b).norm() < 1e-9; }

}  // namespace

std::vector<Incidence> parse_pairs(const json& j) {
  if (!j.is_array() || j.empty()) fail("pairs", "expected a non-empty list of angle lists");
  std::vector<Incidence> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "pairs[" + std::to_string(i) + "]";
    const json& p = j[i].is_object() ? j[i].at("angles") : j[i];
    if (!p.is_array() || p.empty() || p.size() > 2) fail(field, "expected one or two angles in degrees");
    std::vector<double> deg;
    for (const auto& a : p) {
      if (!a.is_number()) fail(field, "angles must be numbers");
      deg.push_back(a.get<double>());
    }
    Incidence inc = incidence_from_degrees(deg);
    if (inc.size() == 2 && same_direction(inc[0], inc[1])) fail(field, "the two directions coincide");
    out.push_back(std::move(inc));
  }
  return out;
}

bool locates_obstacle(const std::vector<Incidence>& pairs) {
  std::vector<Vec2> normals;
  for (const auto& p : pairs) {
    if (p.size() != 2) continue;
    const Vec2 d = p[0] - p[1];
    normals.emplace_back(-d.y(), d.x());
  }
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const double cross = normals[i].x() * normals[j].y() - normals[i].y() * normals[j].x();
      if (std::abs(cross) > 1e-9 * normals[i].norm() * normals[j].norm()) return true;
    }
  }
  return false;
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (j.contains("obstacle")) c.obstacle = parse_obstacle(j.at("obstacle"), base);
  if (j.contains("bc")) {
    try {
      c.bc = io::bc_from_json(j.at("bc"));
    } catch (const std::exception& e) {
      fail("bc", e.what());
    }
  }
  if (const auto* t = std::get_if<Transmission>(&c.bc); t && t->n.imag() != 0.0) {
    fail("bc.n_imag", "absorbing interior media are not supported");
  }
  if (j.contains("pairs")) c.pairs = parse_pairs(j.at("pairs"));
  if (j.contains("frequencies")) {
    c.frequencies = get<std::vector<double>>(j, "frequencies", "frequencies");
    if (c.frequencies.empty()) fail("frequencies", "must not be empty");
    for (std::size_t i = 0; i < c.frequencies.size(); ++i) {
      if (!(c.frequencies[i] > 0.0)) fail("frequencies", "wavenumbers must be positive");
      if (i > 0 && !(c.frequencies[i] > c.frequencies[i - 1])) fail("frequencies", "must be strictly increasing");
    }
  }
  c.n_f = get_or<int>(j, "n_f", c.n_f, "n_f");
  if (c.n_f < 2) fail("n_f", "must be at least 2");
  c.delta = get_or<double>(j, "delta", c.delta, "delta");
  if (!(c.delta >= 0.0 && c.delta < 1.0)) fail("delta", "must lie in [0, 1)");
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed, "seed");
  if (j.contains("inversion")) parse_inversion(j.at("inversion"), c.inversion);
  c.inversion.n_f = c.n_f;
  c.initial = j.contains("initial") ? parse_initial(j.at("initial"), base, c.inversion.M)
                                    : initial_circle(0.5, Vec2::Zero(), c.inversion.M);
  if (j.contains("output")) c.output = resolve(base, get<std::string>(j, "output", "output"));

  if (j.contains("invariance")) {
    const json& v = j.at("invariance");
    auto& s = c.invariance;
    s.k = get_or<double>(v, "k", s.k, "invariance.k");
    if (!(s.k > 0.0)) fail("invariance.k", "must be positive");
    s.single_wave = get_or<bool>(v, "single_wave", false, "invariance.single_wave");
    if (v.contains("shifts")) {
      const json& sh = v.at("shifts");
      if (!sh.is_array()) fail("invariance.shifts", "expected a list of [x, y]");
      for (std::size_t i = 0; i < sh.size(); ++i) {
        s.shifts.push_back(vec(sh[i], "invariance.shifts[" + std::to_string(i) + "]"));
      }
    }
    if (v.contains("lattice")) {
      s.lattice_n = get_or<std::vector<int>>(v.at("lattice"), "n", {}, "invariance.lattice.n");
      s.lattice_a = get_or<std::vector<double>>(v.at("lattice"), "a", {0.0}, "invariance.lattice.a");
    }
    s.probes = get_or<std::vector<double>>(v, "probes", {}, "invariance.probes");
  }
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    auto& s = c.oracle;
    s.R = get_or<double>(o, "R", s.R, "oracle.R");
    if (!(s.R > 0.0)) fail("oracle.R", "must be positive");
    if (o.contains("center")) s.center = vec(o.at("center"), "oracle.center");
    s.ks = get_or<std::vector<double>>(o, "ks", default_frequencies(), "oracle.ks");
    s.n_f = get_or<int>(o, "n_f", s.n_f, "oracle.n_f");
    s.max_n_q = get_or<int>(o, "max_n_q", s.max_n_q, "oracle.max_n_q");
    if (s.n_f < 2) fail("oracle.n_f", "must be at least 2");
  }

  if (!c.pairs.empty() && !locates_obstacle(c.pairs)) {
    c.warnings.push_back(
        "no two incidences have non-parallel bisectors; the obstacle location is not determined");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = io::read_json(path);
  } catch (const io::FormatError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(j, path.parent_path());
}

PhaselessDataset cmd_synthesize(const ExperimentConfig& cfg, const std::filesystem::path& out) {
  if (cfg.pairs.empty()) fail("pairs", "synthesize needs at least one incidence");
  SolverOptions opts;
  opts.max_n_q = 512;
  PhaselessDataset ds = synthesize_dataset(cfg.obstacle, cfg.bc, cfg.pairs, cfg.frequencies, cfg.n_f,
                                           cfg.delta, cfg.seed, opts);
  io::write_dataset(out, ds);
  return ds;
}

void check_metadata(const ExperimentConfig& cfg, const PhaselessDataset& ds) {
  if (ds.n_f != cfg.n_f) {
    throw MetadataMismatchError("dataset has n_f = " + std::to_string(ds.n_f) + " but the config expects " +
                                std::to_string(cfg.n_f));
  }
  if (!cfg.pairs.empty()) {
    bool same = ds.pairs.size() == cfg.pairs.size();
    for (std::size_t l = 0; same && l < ds.pairs.size(); ++l) {
      same = ds.pairs[l].size() == cfg.pairs[l].size();
      for (std::size_t i = 0; same && i < ds.pairs[l].size(); ++i) {
        same = same_direction(ds.pairs[l][i], cfg.pairs[l][i]);
      }
    }
    if (!same) throw MetadataMismatchError("dataset incidences differ from the config");
  }
  bool same_k = ds.ks.size() == cfg.frequencies.size();
  for (std::size_t m = 0; same_k && m < ds.ks.size(); ++m) {
    same_k = std::abs(ds.ks[m] - cfg.frequencies[m]) <= 1e-12 * cfg.frequencies[m];
  }
  if (!same_k) throw MetadataMismatchError("dataset frequencies differ from the config");
}

InversionResult cmd_invert(const ExperimentConfig& cfg, const std::filesystem::path& dataset,
                           const std::filesystem::path& out_dir) {
  const PhaselessDataset ds = io::read_dataset(dataset);
  check_metadata(cfg, ds);
  const InversionResult res = reconstruct(cfg.initial, cfg.bc, ds, cfg.inversion);
  std::filesystem::create_directories(out_dir);
  io::write_json(out_dir / "report.json", io::report_to_json(res));
  io::write_state(out_dir / "final_curve.json", res.final_state);
  io::write_polyline(out_dir / "initial.csv", res.initial.curve);
  for (std::size_t m = 0; m < res.frequencies.size(); ++m) {
    std::ostringstream name;
    name << "curve_k" << m + 1 << ".csv";
    io::write_polyline(out_dir / name.str(), res.frequencies[m].state.curve);
  }
  return res;
}

std::vector<std::vector<double>> cmd_verify_invariance(const ExperimentConfig& cfg,
                                                       const std::filesystem::path& out) {
  if (cfg.pairs.empty()) fail("pairs", "verify-invariance needs an incidence");
  const auto& spec = cfg.invariance;
  Incidence inc = cfg.pairs.front();
  if (spec.single_wave) inc.resize(1);
  std::vector<Vec2> shifts = spec.shifts;
  if (!spec.lattice_n.empty() || !spec.probes.empty()) {
    if (inc.size() != 2) fail("invariance", "lattice shifts and probes need a two-direction incidence");
    for (int n : spec.lattice_n) {
      for (double a : spec.lattice_a) shifts.push_back(invariance_offset(inc[0], inc[1], spec.k, n, a).ell);
    }
    for (double p : spec.probes) shifts.push_back(p * (inc[0] - inc[1]));
  }
  if (shifts.empty()) fail("invariance.shifts", "no shifts to check");
  const PlaneWaveSuperposition w(spec.k, inc);
  std::vector<std::vector<double>> rows;
  for (const auto& ell : shifts) {
    rows.push_back({ell.x(), ell.y(), check_invariance(cfg.obstacle, cfg.bc, w, ell, cfg.n_f)});
  }
  io::write_table(out, {"ell_x", "ell_y", "discrepancy"}, rows);
  return rows;
}

std::vector<std::vector<double>> cmd_oracle_check(const ExperimentConfig& cfg,
                                                  const std::filesystem::path& out) {
  const auto& spec = cfg.oracle;
  SolverOptions opts;
  opts.max_n_q = spec.max_n_q;
  const Curve circle = BenchmarkCurve::circle(spec.R, spec.center);
  std::vector<std::vector<double>> rows;
  for (double k : spec.ks) {
    if (!(k > 0.0)) fail("oracle.ks", "wavenumbers must be positive");
    const PlaneWaveSuperposition w(k, {Vec2(1.0, 0.0)});
    int n_q = 0;
    const FarFieldPattern num = solve_far_field(circle, cfg.bc, w, spec.n_f, opts, &n_q);
    const FarFieldPattern ref = circle_oracle(spec.R, spec.center, cfg.bc, w, spec.n_f);
    rows.push_back({k, static_cast<double>(n_q), sup_distance(num, ref)});
  }
  io::write_table(out, {"k", "n_q", "sup_error"}, rows);
  return rows;
}

}  // namespace scatter

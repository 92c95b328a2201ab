#include "scatter/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace scatter::io {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw FormatError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

json incidence_json(const Incidence& inc) {
  json dirs = json::array();
  for (const auto& d : inc) dirs.push_back(vec_json(d));
  return {{"angles", direction_degrees(inc)}, {"directions", dirs}};
}

Incidence incidence_from(const json& j) {
  if (j.contains("directions")) {
    Incidence inc;
    for (const auto& d : j.at("directions")) inc.push_back(vec_from(d));
    return inc;
  }
  return incidence_from_degrees(j.at("angles").get<std::vector<double>>());
}

}  // namespace

std::vector<double> direction_degrees(const Incidence& inc) {
  std::vector<double> out;
  for (const auto& d : inc) out.push_back(std::atan2(d.y(), d.x()) * 180.0 / std::numbers::pi);
  return out;
}

json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_dataset(const std::filesystem::path& path, const PhaselessDataset& ds) {
  ds.validate();
  json header;
  header["delta"] = ds.delta;
  header["seed"] = ds.seed;
  header["nf"] = ds.n_f;
  header["pairs"] = json::array();
  for (const auto& inc : ds.pairs) header["pairs"].push_back(incidence_json(inc));
  header["ks"] = ds.ks;
  auto out = open_out(path);
  out << header.dump() << '\n' << "l,m,j,intensity\n";
  for (std::size_t m = 0; m < ds.ks.size(); ++m) {
    for (std::size_t l = 0; l < ds.pairs.size(); ++l) {
      const auto& v = ds.data[m][l];
      for (std::size_t j = 0; j < v.size(); ++j) {
        out << l + 1 << ',' << m + 1 << ',' << j + 1 << ',' << num(v[j]) << '\n';
      }
    }
  }
}

PhaselessDataset read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty dataset file");
  PhaselessDataset ds;
  try {
    const json header = json::parse(line);
    ds.delta = header.at("delta").get<double>();
    ds.seed = header.at("seed").get<std::uint64_t>();
    ds.n_f = header.at("nf").get<int>();
    for (const auto& p : header.at("pairs")) ds.pairs.push_back(incidence_from(p));
    ds.ks = header.at("ks").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ":1: bad header: " + e.what());
  }
  if (ds.n_f < 2) throw FormatError(path.string() + ":1: nf must be at least 2");
  ds.data.assign(ds.ks.size(), std::vector<std::vector<double>>(
                                   ds.pairs.size(), std::vector<double>(static_cast<std::size_t>(ds.n_f), NAN)));
  if (!std::getline(in, line) || line != "l,m,j,intensity") {
    throw FormatError(path.string() + ":2: expected the header l,m,j,intensity");
  }
  std::size_t lineno = 2;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 4) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
    const long l = std::lround(parse_double(cells[0], path, lineno));
    const long m = std::lround(parse_double(cells[1], path, lineno));
    const long j = std::lround(parse_double(cells[2], path, lineno));
    if (l < 1 || m < 1 || j < 1 || static_cast<std::size_t>(l) > ds.pairs.size() ||
        static_cast<std::size_t>(m) > ds.ks.size() || j > ds.n_f) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": index out of range");
    }
    ds.data[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)] =
        parse_double(cells[3], path, lineno);
    ++count;
  }
  if (count != ds.ks.size() * ds.pairs.size() * static_cast<std::size_t>(ds.n_f)) {
    throw FormatError(path.string() + ": expected " +
                      std::to_string(ds.ks.size() * ds.pairs.size() * static_cast<std::size_t>(ds.n_f)) +
                      " samples, found " + std::to_string(count));
  }
  try {
    ds.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return ds;
}

json bc_to_json(const BoundaryCondition& bc) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Dirichlet>) {
          return {{"type", "dirichlet"}};
        } else if constexpr (std::is_same_v<T, Neumann>) {
          return {{"type", "neumann"}};
        } else if constexpr (std::is_same_v<T, Impedance>) {
          return {{"type", "impedance"}, {"mu", b.mu}};
        } else {
          return {{"type", "transmission"}, {"n", b.n.real()}, {"n_imag", b.n.imag()}, {"lambda", b.lambda}};
        }
      },
      bc);
}

BoundaryCondition bc_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  BoundaryCondition bc;
  if (type == "dirichlet" || type == "sound-soft") {
    bc = Dirichlet{};
  } else if (type == "neumann" || type == "sound-hard") {
    bc = Neumann{};
  } else if (type == "impedance") {
    bc = Impedance{j.at("mu").get<double>()};
  } else if (type == "transmission") {
    bc = Transmission{cdouble(j.at("n").get<double>(), j.value("n_imag", 0.0)), j.at("lambda").get<double>()};
  } else {
    throw FormatError("unknown boundary condition '" + type + "'");
  }
  validate(bc);
  return bc;
}

void write_far_field(const std::filesystem::path& path, const FarFieldPattern& p,
                     const BoundaryCondition& bc) {
  json header;
  header["k"] = p.k;
  header["angles"] = direction_degrees(p.incident);
  json dirs = json::array();
  for (const auto& d : p.incident) dirs.push_back(vec_json(d));
  header["directions"] = dirs;
  header["bc"] = bc_to_json(bc);
  header["n_f"] = p.size();
  auto out = open_out(path);
  out << header.dump() << '\n' << "theta,re,im\n";
  for (int j = 0; j < p.size(); ++j) {
    const double th = 2.0 * std::numbers::pi * j / p.size();
    const auto v = p.samples[static_cast<std::size_t>(j)];
    out << num(th) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
  }
}

FarFieldPattern read_far_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty far-field file");
  FarFieldPattern p;
  int n_f = 0;
  try {
    const json header = json::parse(line);
    p.k = header.at("k").get<double>();
    n_f = header.at("n_f").get<int>();
    if (header.contains("directions")) {
      for (const auto& d : header.at("directions")) p.incident.push_back(vec_from(d));
    } else {
      p.incident = incidence_from_degrees(header.at("angles").get<std::vector<double>>());
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ":1: bad header: " + e.what());
  }
  std::getline(in, line);
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 3) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
    p.samples.emplace_back(parse_double(cells[1], path, lineno), parse_double(cells[2], path, lineno));
  }
  if (p.size() != n_f) throw FormatError(path.string() + ": sample count differs from n_f");
  return p;
}

json state_to_json(const IterateState& s) {
  const auto c = s.curve.radial.coefficients();
  return {{"center", vec_json(s.curve.center)},
          {"alpha", std::vector<double>(c.begin(), c.end())},
          {"lambda", s.lambda}};
}

IterateState state_from_json(const json& j) {
  IterateState s;
  try {
    s.curve.center = vec_from(j.at("center"));
    s.curve.radial = TrigPolynomial(j.at("alpha").get<std::vector<double>>());
    s.lambda = j.value("lambda", 1.0);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad curve JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad curve JSON: ") + e.what());
  }
  return s;
}

void write_state(const std::filesystem::path& path, const IterateState& s) {
  write_json(path, state_to_json(s));
}

IterateState read_state(const std::filesystem::path& path) { return state_from_json(read_json(path)); }

void write_polyline(const std::filesystem::path& path, const Curve& curve, int samples) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    const Vec2 x = curve_point(curve, t);
    rows.push_back({t, x.x(), x.y()});
  }
  write_table(path, {"t", "x", "y"}, rows);
}

std::vector<std::vector<double>> read_polyline(const std::filesystem::path& path) {
  return read_table(path);
}

json report_to_json(const InversionResult& r) {
  json freqs = json::array();
  for (const auto& f : r.frequencies) {
    freqs.push_back({{"k", f.k},
                     {"n_q", f.n_q},
                     {"iterations", f.iterations},
                     {"Err_before", f.err_before},
                     {"Err_after", f.err_after},
                     {"beta_history", f.beta_history},
                     {"err_history", f.err_history},
                     {"non_monotone_steps", f.non_monotone_steps},
                     {"warnings", f.warnings},
                     {"state", state_to_json(f.state)}});
  }
  return {{"initial", state_to_json(r.initial)},
          {"final", state_to_json(r.final_state)},
          {"frequencies", freqs}};
}

InversionResult report_from_json(const json& j) {
  InversionResult r;
  try {
    r.initial = state_from_json(j.at("initial"));
    r.final_state = state_from_json(j.at("final"));
    for (const auto& f : j.at("frequencies")) {
      FrequencyReport rep;
      rep.k = f.at("k").get<double>();
      rep.n_q = f.at("n_q").get<int>();
      rep.iterations = f.at("iterations").get<int>();
      rep.err_before = f.at("Err_before").get<double>();
      rep.err_after = f.at("Err_after").get<double>();
      rep.beta_history = f.at("beta_history").get<std::vector<double>>();
      rep.err_history = f.at("err_history").get<std::vector<double>>();
      rep.non_monotone_steps = f.at("non_monotone_steps").get<int>();
      rep.warnings = f.at("warnings").get<std::vector<std::string>>();
      rep.state = state_from_json(f.at("state"));
      r.frequencies.push_back(std::move(rep));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad report JSON: ") + e.what());
  }
  return r;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("write_table: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
    out << '\n';
  }
}

std::vector<std::vector<double>> read_table(const std::filesystem::path& path,
                                            std::vector<std::string>* header) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty table");
  const auto names = split(line);
  if (header) *header = names;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != names.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": column count differs from header");
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, path, lineno));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace scatter::io

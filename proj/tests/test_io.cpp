#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "scatter/io.hpp"

using namespace scatter;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "scatter_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST_CASE("dataset round trip") {
  const std::vector<Incidence> pairs{incidence_from_degrees({0, 120}), incidence_from_degrees({0, -120})};
  const auto ds = synthesize_dataset(BenchmarkCurve::apple(), Dirichlet{}, pairs, {0.5, 3.0}, 16, 0.05, 77);
  const auto path = scratch("dataset.csv");
  io::write_dataset(path, ds);
  const auto back = io::read_dataset(path);
  CHECK(back.delta == ds.delta);
  CHECK(back.seed == ds.seed);
  CHECK(back.n_f == ds.n_f);
  CHECK(back.ks == ds.ks);
  CHECK(back.data == ds.data);
  REQUIRE(back.pairs.size() == 2);
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t i = 0; i < 2; ++i) CHECK(back.pairs[l][i] == ds.pairs[l][i]);
  const auto again = scratch("dataset2.csv");
  io::write_dataset(again, back);
  CHECK(slurp(path) == slurp(again));
}

TEST_CASE("malformed datasets are rejected") {
  const auto path = scratch("bad.csv");
  write_text(path, "not json\n");
  CHECK_THROWS_AS(io::read_dataset(path), io::FormatError);
  write_text(path, R"({"delta":0,"seed":1,"nf":2,"pairs":[{"angles":[0,90]}],"ks":[1]})" "\nl,m,j,intensity\n1,1,1,0.5\n");
  CHECK_THROWS_AS(io::read_dataset(path), io::FormatError);  // one sample missing
  write_text(path, R"({"delta":0,"seed":1,"nf":2,"pairs":[{"angles":[0,90]}],"ks":[1]})" "\nl,m,j,intensity\n1,1,1,0.5\n1,1,3,0.5\n");
  CHECK_THROWS_AS(io::read_dataset(path), io::FormatError);  // index out of range
  write_text(path, R"({"delta":0,"seed":1,"nf":2,"pairs":[{"angles":[0,90]}],"ks":[1]})" "\nl,m,j,intensity\n1,1,1,0.5\n1,1,2,abc\n");
  CHECK_THROWS_AS(io::read_dataset(path), io::FormatError);
  write_text(path, R"({"delta":0,"seed":1,"nf":2,"pairs":[{"angles":[0,90]}],"ks":[1]})" "\nl,m,j,intensity\n1,1,1,0.5\n1,1,2,0.25\n");
  const auto ok = io::read_dataset(path);
  CHECK(ok.data[0][0] == std::vector<double>{0.5, 0.25});
  CHECK_THROWS_AS(io::read_dataset(scratch("missing.csv")), io::FormatError);
}

TEST_CASE("far-field round trip") {
  const PlaneWaveSuperposition w(3.0, {Vec2(1, 0), Vec2(0, 1)});
  const auto p = solve_far_field(BenchmarkCurve::kite(), Neumann{}, w, 32);
  const auto path = scratch("far.csv");
  io::write_far_field(path, p, Neumann{});
  const auto back = io::read_far_field(path);
  CHECK(back.k == p.k);
  CHECK(back.samples == p.samples);
  CHECK(back.incident[1] == p.incident[1]);
}

TEST_CASE("boundary conditions and states round trip through JSON") {
  for (const BoundaryCondition& bc : {BoundaryCondition{Dirichlet{}}, BoundaryCondition{Neumann{}},
                                      BoundaryCondition{Impedance{2.5}}, BoundaryCondition{Transmission{0.64, 1.2}}}) {
    const auto back = io::bc_from_json(io::bc_to_json(bc));
    CHECK(back.index() == bc.index());
    CHECK(io::bc_to_json(back) == io::bc_to_json(bc));
  }
  CHECK_THROWS_AS(io::bc_from_json(io::json{{"type", "robin"}}), io::FormatError);

  IterateState s = initial_circle(0.5, Vec2(-1.5, 0.1), 3, 1.263);
  s.curve.radial[4] = 1.0 / 3.0;
  const auto path = scratch("state.json");
  io::write_state(path, s);
  const auto back = io::read_state(path);
  CHECK(back.parameters(true) == s.parameters(true));
  CHECK_THROWS_AS(io::state_from_json(io::json{{"center", {1}}}), io::FormatError);
}

TEST_CASE("report round trip") {
  InversionResult r;
  r.initial = initial_circle(0.5, Vec2(1, 1), 2);
  r.final_state = initial_circle(0.9, Vec2(0.1, 0), 2, 1.2);
  FrequencyReport f;
  f.k = 0.5;
  f.n_q = 64;
  f.iterations = 2;
  f.err_before = 0.4;
  f.err_after = 0.07;
  f.beta_history = {1e-3, 0.1 / 3};
  f.err_history = {0.4, 0.2, 0.07};
  f.non_monotone_steps = 1;
  f.warnings = {"k = 0.5: iteration cap reached"};
  f.state = r.final_state;
  r.frequencies = {f, f};
  const auto j = io::report_to_json(r);
  const auto path = scratch("report.json");
  io::write_json(path, j);
  const auto back = io::report_from_json(io::read_json(path));
  CHECK(io::report_to_json(back) == j);
  CHECK(back.frequencies[0].beta_history == f.beta_history);
  CHECK(back.final_state.lambda == 1.2);
}

TEST_CASE("tables and polylines") {
  const auto path = scratch("table.csv");
  const std::vector<std::vector<double>> rows{{1.0, 1e-300, -2.5}, {0.1, 1.0 / 3.0, 7.0}};
  io::write_table(path, {"a", "b", "c"}, rows);
  std::vector<std::string> header;
  CHECK(io::read_table(path, &header) == rows);
  CHECK(header == std::vector<std::string>{"a", "b", "c"});
  CHECK_THROWS_AS(io::write_table(path, {"a"}, rows), std::invalid_argument);

  const auto poly = scratch("poly.csv");
  io::write_polyline(poly, BenchmarkCurve::circle(2.0), 8);
  const auto pts = io::read_polyline(poly);
  REQUIRE(pts.size() == 8);
  for (const auto& p : pts) CHECK(std::hypot(p[1], p[2]) == doctest::Approx(2.0));
  write_text(poly, "t,x,y\n1,2\n");
  CHECK_THROWS_AS(io::read_polyline(poly), io::FormatError);
}

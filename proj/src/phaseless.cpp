#include "scatter/phaseless.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace scatter {

Incidence incidence_from_degrees(const std::vector<double>& degrees) {
  if (degrees.empty() || degrees.size() > 2) {
    throw std::invalid_argument("an incidence has one or two directions");
  }
  Incidence out;
  for (double deg : degrees) {
    const double t = deg * std::numbers::pi / 180.0;
    out.emplace_back(std::cos(t), std::sin(t));
  }
  return out;
}

std::vector<double> intensity(const FarFieldPattern& f) {
  std::vector<double> out(f.samples.size());
  std::transform(f.samples.begin(), f.samples.end(), out.begin(),
                 [](const cdouble& v) { return std::norm(v); });
  return out;
}

double NoiseSource::draw() {
  for (;;) {
    const double z = normal_(rng_);
    if (std::abs(z) <= 1.0) return z;
  }
}

std::vector<double> add_noise(std::span<const double> data, double delta, NoiseSource& source) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("noise ratio must lie in [0, 1)");
  std::vector<double> out(data.begin(), data.end());
  if (delta == 0.0) return out;
  for (double& v : out) v *= 1.0 + delta * source.draw();
  return out;
}

std::vector<double> add_noise(std::span<const double> data, double delta, std::uint64_t seed) {
  NoiseSource source(seed);
  return add_noise(data, delta, source);
}

void PhaselessDataset::validate() const {
  if (n_f < 2) throw std::invalid_argument("dataset: n_f must be at least 2");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("dataset: delta must lie in [0, 1)");
  if (pairs.empty()) throw std::invalid_argument("dataset: no incidences");
  if (ks.empty()) throw std::invalid_argument("dataset: no frequencies");
  for (std::size_t m = 0; m < ks.size(); ++m) {
    if (!(ks[m] > 0.0)) throw std::invalid_argument("dataset: wavenumbers must be positive");
    if (m > 0 && !(ks[m] > ks[m - 1])) {
      throw std::invalid_argument("dataset: wavenumbers must be strictly increasing");
    }
  }
  if (data.size() != ks.size()) throw std::invalid_argument("dataset: frequency count mismatch");
  for (const auto& block : data) {
    if (block.size() != pairs.size()) throw std::invalid_argument("dataset: incidence count mismatch");
    for (const auto& v : block) {
      if (v.size() != static_cast<std::size_t>(n_f)) {
        throw std::invalid_argument("dataset: sample count differs from n_f");
      }
    }
  }
}

PhaselessDataset synthesize_dataset(const Curve& curve, const BoundaryCondition& bc,
                                    const std::vector<Incidence>& pairs,
                                    const std::vector<double>& ks, int n_f, double delta,
                                    std::uint64_t seed, const SolverOptions& options) {
  PhaselessDataset ds;
  ds.delta = delta;
  ds.seed = seed;
  ds.n_f = n_f;
  ds.pairs = pairs;
  ds.ks = ks;
  ds.data.resize(ks.size());
  for (std::size_t m = 0; m < ks.size(); ++m) {
    for (const auto& inc : pairs) {
      const PlaneWaveSuperposition w(ks[m], inc);
      ds.data[m].push_back(intensity(solve_far_field(curve, bc, w, n_f, options)));
    }
  }
  ds.validate();
  NoiseSource source(seed);
  for (auto& block : ds.data) {
    for (auto& v : block) v = add_noise(v, delta, source);
  }
  return ds;
}

TranslationOffset invariance_offset(const Vec2& d1, const Vec2& d2, double k, int n, double a,
                                    std::optional<double> tau) {
  if (!(k > 0.0)) throw std::invalid_argument("invariance_offset: k must be positive");
  const Vec2 diff = d1 - d2;
  const double len = diff.norm();
  if (len < 1e-12) throw DegenerateDirectionsError("invariance_offset: d1 and d2 coincide");
  TranslationOffset off;
  off.base = Vec2(-diff.y(), diff.x()) / len;
  off.n = n;
  off.a = a;
  off.tau = tau.value_or(0.0);
  off.ell = a * off.base + (2.0 * std::numbers::pi * n + off.tau) / (k * len * len) * diff;
  return off;
}

SolverOptions invariance_solver_options() {
  SolverOptions o;
  o.tolerance = 1e-11;
  o.max_n_q = 512;
  return o;
}

double check_invariance(const Curve& curve, const BoundaryCondition& bc,
                        const PlaneWaveSuperposition& w, const Vec2& ell, int n_f,
                        const SolverOptions& options) {
  const FarFieldPattern base = solve_far_field(curve, bc, w, n_f, options);
  const FarFieldPattern moved = solve_far_field(translated(curve, ell), bc, w, n_f, options);
  double sup = 0.0;
  for (std::size_t j = 0; j < base.samples.size(); ++j) {
    sup = std::max(sup, std::abs(std::abs(moved.samples[j]) - std::abs(base.samples[j])));
  }
  return sup;
}

double check_invariance(const Curve& curve, const BoundaryCondition& bc, const Vec2& d1,
                        const Vec2& d2, double k, const Vec2& ell, int n_f) {
  return check_invariance(curve, bc, PlaneWaveSuperposition(k, {d1, d2}), ell, n_f);
}

}  // namespace scatter

// Command-line driver: synthesize, invert, verify-invariance, oracle-check.

#include <omp.h>

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "scatter/analytic_oracle.hpp"
#include "scatter/experiment.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string dataset;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

scatter::ExperimentConfig load(const Options& o) {
  scatter::ExperimentConfig cfg = scatter::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
  return cfg;
}

std::filesystem::path out_or(const Options& o, const scatter::ExperimentConfig& cfg, const char* name) {
  return o.out.empty() ? cfg.output / name : std::filesystem::path(o.out);
}

void print_rows(const std::vector<std::vector<double>>& rows) {
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::printf(i ? ",%.6e" : "%.6g", r[i]);
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phaseless far-field scattering experiments"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output file or directory");
    sub->add_option("--seed", opt.seed, "override the noise seed");
    sub->add_option("--threads", opt.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
  };
  auto* synth = app.add_subcommand("synthesize", "write a phaseless dataset");
  add_common(synth);
  auto* invert = app.add_subcommand("invert", "reconstruct from a dataset");
  add_common(invert);
  invert->add_option("--dataset", opt.dataset, "dataset file")->required()->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify-invariance", "phaseless discrepancy under obstacle shifts");
  add_common(verify);
  auto* oracle = app.add_subcommand("oracle-check", "compare the solver with the circle series");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  try {
    const scatter::ExperimentConfig cfg = load(opt);
    if (synth->parsed()) {
      const auto path = out_or(opt, cfg, "dataset.csv");
      const auto ds = scatter::cmd_synthesize(cfg, path);
      std::printf("wrote %s (%zu incidences x %zu frequencies x %d samples)\n", path.c_str(),
                  ds.pairs.size(), ds.ks.size(), ds.n_f);
    } else if (invert->parsed()) {
      const auto dir = opt.out.empty() ? cfg.output : std::filesystem::path(opt.out);
      const auto res = scatter::cmd_invert(cfg, opt.dataset, dir);
      for (const auto& f : res.frequencies) {
        std::printf("k=%-5g iterations=%-3d Err %.4f -> %.4f\n", f.k, f.iterations, f.err_before, f.err_after);
        for (const auto& w : f.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      }
      if (std::holds_alternative<scatter::Transmission>(cfg.bc)) {
        std::printf("lambda=%.6g\n", res.final_state.lambda);
      }
      std::printf("wrote %s\n", (dir / "report.json").c_str());
    } else if (verify->parsed()) {
      std::printf("ell_x,ell_y,discrepancy\n");
      print_rows(scatter::cmd_verify_invariance(cfg, out_or(opt, cfg, "invariance.csv")));
    } else {
      std::printf("k,n_q,sup_error\n");
      print_rows(scatter::cmd_oracle_check(cfg, out_or(opt, cfg, "oracle.csv")));
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const scatter::io::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}

#include "dbacf/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "dbacf/estimators.hpp"
#include "dbacf/io.hpp"
#include "dbacf/jusd.hpp"
#include "dbacf/mafit.hpp"
#include "dbacf/pipeline.hpp"
#include "dbacf/projection.hpp"
#include "dbacf/rng.hpp"
#include "dbacf/sim.hpp"

namespace dbacf::cli {
namespace {

struct ArgsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string input;
  std::string output = "-";
  std::string format = "json";
  std::string bench_format = "csv";
  bool header = false;
  std::optional<std::size_t> m;
  std::optional<double> d;
  std::string root = "smaller";
  bool acf = false;
  std::optional<std::size_t> n;
  double tol = 0.0;
  std::optional<int> max_iter;
  double alpha = 0.05;
  std::size_t reps = 1000;
  std::uint64_t seed = rng::kDefaultSeed;
  std::string intervals = "dyadic";
  std::optional<double> q;
  std::size_t proj_dim = 0;
  unsigned workers = 0;

  // bench / simulate
  std::string config;
  std::vector<double> gamma1;
  std::string dist = "gaussian";
  bool standardized = false;
  std::string estimators;
  std::string signal;
  std::vector<double> theta;
  std::optional<double> sigma2;
  double scale = 1.0;
};

void fail_line(const char* code, const std::string& msg) {
  std::string one = msg;
  std::replace(one.begin(), one.end(), '\n', ' ');
  std::cerr << "dbacf: " << code << ": " << one << "\n";
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (text[p] == '{' || text[p] == '[');
}

std::size_t need_m(const Options& o, const char* why) {
  if (!o.m) throw ArgsError(std::string("--m is required ") + why);
  return *o.m;
}

int cmd_estimate(const Options& o) {
  const Series y = io::read_series(o.input, o.header);
  const std::size_t m = need_m(o, "for estimate");
  const WeightRoot root = o.root == "larger" ? WeightRoot::larger : WeightRoot::smaller;
  const AcvfEstimate e = o.d ? dbacf_fixed(y, m, *o.d) : dbacf(y, m, root);
  io::write_output(o.output, o.format == "csv" ? io::estimate_csv(e, o.acf)
                                               : io::dump(io::to_json(e, o.acf)));
  return kOk;
}

// An autocovariance either read from JSON or estimated from a series.
AcvfEstimate acvf_input(const Options& o, const char* why) {
  const std::string text = io::read_file(o.input);
  if (looks_like_json(text)) {
    AcvfEstimate e;
    e.acvf = io::parse_acvf_json(text);
    e.n = 0;
    return e;
  }
  const Series y = io::parse_series_csv(text, o.header);
  return dbacf(y, need_m(o, why));
}

int cmd_project(const Options& o) {
  const AcvfEstimate e = acvf_input(o, "when the input is a series");
  const std::size_t n = o.n ? *o.n : e.n;
  if (n == 0) throw ArgsError("--n is required when the input is an autocovariance");
  const double tol = o.tol > 0.0 ? o.tol : kDefaultProjectionTol;
  const ProjectionResult r =
      covariance_matrix_estimate(e, n, tol, o.max_iter.value_or(kDefaultProjectionMaxIter));
  io::write_output(o.output, io::dump(io::to_json(r)));
  return kOk;
}

int cmd_mafit(const Options& o) {
  const AcvfEstimate e = acvf_input(o, "when the input is a series");
  const double tol = o.tol > 0.0 ? o.tol : kDefaultMaTol;
  const MaModel model = ma_from_acvf(e.acvf, o.max_iter.value_or(kDefaultMaMaxIter), tol);
  io::write_output(o.output, io::dump(io::to_json(model)));
  return kOk;
}

int cmd_segment(const Options& o) {
  const Series y = io::read_series(o.input, o.header);
  PipelineOptions p;
  p.m = need_m(o, "for segment");
  p.alpha = o.alpha;
  p.reps = o.reps;
  p.seed = o.seed;
  p.intervals = parse_interval_mode(o.intervals);
  p.q = o.q;
  p.proj_dim = o.proj_dim;
  if (o.tol > 0.0) p.ma_tol = o.tol;
  if (o.max_iter) p.ma_max_iter = *o.max_iter;
  p.workers = o.workers;
  const PipelineResult r = segment_pipeline(y, p);
  io::write_output(o.output, io::dump(io::to_json(r.fit)));
  return kOk;
}

BenchmarkConfig bench_config(const Options& o, const CLI::App& sub) {
  BenchmarkConfig cfg;
  if (!o.config.empty()) cfg = parse_benchmark_config(io::read_file(o.config));
  if (sub.count("--n")) cfg.n = *o.n;
  if (sub.count("--reps")) cfg.reps = o.reps;
  if (sub.count("--m")) cfg.m = *o.m;
  if (sub.count("--seed")) cfg.seed = o.seed;
  if (sub.count("--gamma1")) cfg.gamma1 = o.gamma1;
  if (sub.count("--dist")) cfg.dist = parse_noise_dist(o.dist);
  if (sub.count("--standardized")) cfg.standardized = o.standardized;
  if (sub.count("--estimators")) cfg.estimators = o.estimators;
  if (sub.count("--workers")) cfg.workers = o.workers;
  if (sub.count("--signal")) {
    cfg.signal = parse_benchmark_config("signal=" + o.signal).signal;
    if (cfg.signal == SignalKind::custom && !cfg.custom) {
      throw ArgsError("--signal custom needs taus and levels in --config");
    }
  }
  return cfg;
}

int cmd_bench(const Options& o, const CLI::App& sub) {
  const auto rows = run_benchmark(bench_config(o, sub));
  io::write_output(o.output,
                   o.bench_format == "json" ? io::dump(io::to_json(rows)) : io::benchmark_csv(rows));
  return kOk;
}

int cmd_simulate(const Options& o) {
  const std::size_t n = *o.n;
  BenchmarkConfig cfg;
  cfg.n = n;
  if (!o.signal.empty()) cfg.signal = parse_benchmark_config("signal=" + o.signal).signal;
  else cfg.signal = SignalKind::constant;
  const Series f = benchmark_signal(cfg);
  const NoiseDist dist = parse_noise_dist(o.dist);
  Series eps;
  if (!o.theta.empty() || o.sigma2) {
    MaModel model;
    model.theta = o.theta;
    model.sigma2 = o.sigma2.value_or(1.0);
    eps = gen_ma(model, n, o.seed, dist);
  } else {
    const double g1 = o.gamma1.empty() ? 0.0 : o.gamma1.front();
    eps = gen_ma1({g1, dist, o.standardized}, n, o.seed).scaled(o.scale);
  }
  io::write_output(o.output, io::series_csv(f + eps));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage(args);
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
  CLI::App app{"Difference-based autocovariance estimation for m-dependent regression errors",
               "dbacf"};
  app.require_subcommand(1);
  Options o;

  auto output = [&](CLI::App* s) {
    s->add_option("--output,-o", o.output, "Output path ('-' for stdout)");
  };
  auto input = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--input,-i", o.input, "Input file");
    if (required) opt->required();
    s->add_flag("--header", o.header, "Skip the first non-empty line of a CSV input");
  };
  const auto fmt_check = CLI::IsMember({"json", "csv"});

  auto* est = app.add_subcommand("estimate", "Estimate gamma_0..gamma_m from a series");
  input(est, true);
  output(est);
  est->add_option("--m", o.m, "Dependence order")->required();
  est->add_option("--d", o.d, "Fixed weight for every lag (default: optimal weights)");
  est->add_option("--root", o.root, "Weight root on the unbiased branch")
      ->check(CLI::IsMember({"smaller", "larger"}));
  est->add_flag("--acf", o.acf, "Include the autocorrelation");
  est->add_option("--format", o.format)->check(fmt_check);

  auto* proj = app.add_subcommand("project", "Nearest PSD banded Toeplitz covariance");
  input(proj, true);
  output(proj);
  proj->add_option("--m", o.m, "Dependence order (series input)");
  proj->add_option("--n", o.n, "Matrix dimension (default: series length)");
  proj->add_option("--tol", o.tol, "Stopping tolerance");
  proj->add_option("--max-iter", o.max_iter, "Iteration cap");

  auto* maf = app.add_subcommand("mafit", "Invertible MA(m) model for an autocovariance");
  input(maf, true);
  output(maf);
  maf->add_option("--m", o.m, "Dependence order (series input)");
  maf->add_option("--tol", o.tol, "Stopping tolerance");
  maf->add_option("--max-iter", o.max_iter, "Iteration cap");

  auto* seg = app.add_subcommand("segment", "Multiscale segmentation with dependent noise");
  input(seg, true);
  output(seg);
  seg->add_option("--m", o.m, "Dependence order")->required();
  seg->add_option("--alpha", o.alpha, "Significance level");
  seg->add_option("--reps", o.reps, "Monte Carlo replicates for the null quantile");
  seg->add_option("--seed", o.seed, "Seed");
  seg->add_option("--intervals", o.intervals)->check(CLI::IsMember({"full", "dyadic"}));
  seg->add_option("--q", o.q, "Use this threshold instead of simulating it");
  seg->add_option("--proj-dim", o.proj_dim, "Dimension used to repair an invalid estimate");
  seg->add_option("--tol", o.tol, "MA fit tolerance");
  seg->add_option("--max-iter", o.max_iter, "MA fit iteration cap");
  seg->add_option("--workers", o.workers, "Threads (0: all cores)");

  auto* bench = app.add_subcommand("bench", "Monte Carlo MSE of the autocorrelation estimators");
  output(bench);
  bench->add_option("--config", o.config, "key=value config file");
  bench->add_option("--n", o.n);
  bench->add_option("--reps", o.reps);
  bench->add_option("--m", o.m);
  bench->add_option("--seed", o.seed);
  bench->add_option("--gamma1", o.gamma1, "Comma-separated MA(1) lag-1 covariances")
      ->delimiter(',');
  bench->add_option("--dist", o.dist)->check(CLI::IsMember({"gaussian", "t4"}));
  bench->add_flag("--standardized", o.standardized);
  bench->add_option("--estimators", o.estimators, "Subset of OHR");
  bench->add_option("--signal", o.signal)
      ->check(CLI::IsMember({"chakar", "park", "constant", "custom"}));
  bench->add_option("--workers", o.workers);
  bench->add_option("--format", o.bench_format)->check(fmt_check);

  auto* sim = app.add_subcommand("simulate", "Signal plus MA noise as a one-column CSV");
  output(sim);
  sim->add_option("--n", o.n)->required();
  sim->add_option("--seed", o.seed);
  sim->add_option("--signal", o.signal)->check(CLI::IsMember({"chakar", "park", "constant"}));
  sim->add_option("--gamma1", o.gamma1, "MA(1) lag-1 covariance")->delimiter(',');
  sim->add_option("--theta", o.theta, "MA coefficients")->delimiter(',');
  sim->add_option("--sigma2", o.sigma2, "MA innovation variance");
  sim->add_option("--dist", o.dist)->check(CLI::IsMember({"gaussian", "t4"}));
  sim->add_flag("--standardized", o.standardized);
  sim->add_option("--scale", o.scale, "Multiplier for MA(1) noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    fail_line("E_ARGS", e.what());
    return kDomainError;
  }

  try {
    if (*est) return cmd_estimate(o);
    if (*proj) return cmd_project(o);
    if (*maf) return cmd_mafit(o);
    if (*seg) return cmd_segment(o);
    if (*bench) return cmd_bench(o, *bench);
    if (*sim) return cmd_simulate(o);
  } catch (const io::IoError& e) {
    fail_line("E_IO", e.what());
    return kIoError;
  } catch (const ArgsError& e) {
    fail_line("E_ARGS", e.what());
    return kDomainError;
  } catch (const ConvergenceError& e) {
    fail_line("E_NUMERIC", e.what());
    return kDomainError;
  } catch (const std::domain_error& e) {
    fail_line("E_DOMAIN", e.what());
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    fail_line("E_DOMAIN", e.what());
    return kDomainError;
  } catch (const std::out_of_range& e) {
    fail_line("E_DOMAIN", e.what());
    return kDomainError;
  } catch (const std::exception& e) {
    fail_line("E_NUMERIC", e.what());
    return kDomainError;
  }
  return kOk;
}

}  // namespace dbacf::cli

#include "dbacf/sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dbacf/estimators.hpp"

namespace dbacf {
namespace {

struct Draw {
  NoiseDist dist;
  double scale;  // multiplies raw draws
  std::normal_distribution<double> normal{0.0, 1.0};
  std::student_t_distribution<double> t4{4.0};

  double operator()(std::mt19937_64& eng) {
    return scale * (dist == NoiseDist::gaussian ? normal(eng) : t4(eng));
  }
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    const double x = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(x);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t used = 0;
  const unsigned long long x = std::stoull(v, &used);
  if (used != v.size() || v.front() == '-') throw std::invalid_argument("bad integer '" + v + "'");
  return x;
}

}  // namespace

NoiseDist parse_noise_dist(std::string_view s) {
  if (s == "gaussian") return NoiseDist::gaussian;
  if (s == "t4") return NoiseDist::t4;
  throw std::invalid_argument("unknown noise distribution '" + std::string(s) + "'");
}

std::string_view noise_dist_name(NoiseDist d) noexcept {
  return d == NoiseDist::gaussian ? "gaussian" : "t4";
}

std::pair<double, double> ma1_coefficients(double gamma1) {
  if (!(std::abs(gamma1) <= 0.5)) throw std::domain_error("MA(1) spec needs |gamma1| <= 0.5");
  const double a = std::sqrt(1.0 + 2.0 * gamma1);
  const double b = std::sqrt(1.0 - 2.0 * gamma1);
  return {(a + b) / 2.0, (a - b) / 2.0};
}

Series gen_ma1(const Ma1Spec& spec, std::size_t n, std::uint64_t seed) {
  const auto [r0, r1] = ma1_coefficients(spec.gamma1);
  if (n == 0) throw std::domain_error("gen_ma1: n must be >= 1");
  auto eng = rng::engine(seed);
  Draw draw{spec.dist, spec.dist == NoiseDist::t4 && spec.standardized ? 1.0 / std::sqrt(2.0) : 1.0};
  std::vector<double> delta(n + 1);
  for (auto& x : delta) x = draw(eng);
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = r0 * delta[i + 1] + r1 * delta[i];
  return Series(std::move(eps));
}

Series gen_ma(const MaModel& model, std::size_t n, std::uint64_t seed, NoiseDist dist) {
  if (!(model.sigma2 > 0.0)) throw std::invalid_argument("MA model needs sigma2 > 0");
  if (n == 0) throw std::domain_error("gen_ma: n must be >= 1");
  const std::size_t m = model.theta.size();
  auto eng = rng::engine(seed);
  const double unit = dist == NoiseDist::t4 ? 1.0 / std::sqrt(2.0) : 1.0;
  Draw draw{dist, unit * std::sqrt(model.sigma2)};
  std::vector<double> delta(n + m);
  for (auto& x : delta) x = draw(eng);
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = delta[i + m];
    for (std::size_t j = 1; j <= m; ++j) s += model.theta[j - 1] * delta[i + m - j];
    eps[i] = s;
  }
  return Series(std::move(eps));
}

StepSignal chakar_signal() {
  return StepSignal({5.0 / 36, 7.0 / 36, 16.0 / 36, 20.0 / 36, 27.0 / 36, 33.0 / 36},
                    {0, 10, 0, 1, 0, 1, 0});
}

Series park_signal(std::size_t n) {
  if (n == 0) throw std::domain_error("park_signal: n must be >= 1");
  std::vector<double> f(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double u = x * (1.0 - x);
    f[i - 1] = 300.0 * u * u * u;
  }
  return Series(std::move(f));
}

BenchmarkConfig parse_benchmark_config(const std::string& text) {
  BenchmarkConfig cfg;
  std::vector<double> taus, levels, theta;
  std::optional<double> sigma2;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "n") cfg.n = parse_u64(val);
      else if (key == "reps") cfg.reps = parse_u64(val);
      else if (key == "m") cfg.m = parse_u64(val);
      else if (key == "seed") cfg.seed = parse_u64(val);
      else if (key == "workers") cfg.workers = static_cast<unsigned>(parse_u64(val));
      else if (key == "gamma1") cfg.gamma1 = parse_list(val);
      else if (key == "dist") cfg.dist = parse_noise_dist(val);
      else if (key == "standardized") cfg.standardized = val == "1" || val == "true";
      else if (key == "estimators") cfg.estimators = val;
      else if (key == "taus") taus = parse_list(val);
      else if (key == "levels") levels = parse_list(val);
      else if (key == "theta") theta = parse_list(val);
      else if (key == "sigma2") sigma2 = parse_list(val).at(0);
      else if (key == "signal") {
        if (val == "chakar") cfg.signal = SignalKind::chakar;
        else if (val == "park") cfg.signal = SignalKind::park;
        else if (val == "constant") cfg.signal = SignalKind::constant;
        else if (val == "custom") cfg.signal = SignalKind::custom;
        else throw std::invalid_argument("unknown signal '" + val + "'");
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": value out of range");
    }
  }
  if (cfg.signal == SignalKind::custom) cfg.custom = StepSignal(taus, levels);
  if (!theta.empty() || sigma2) {
    MaModel model;
    model.theta = theta;
    model.sigma2 = sigma2.value_or(1.0);
    cfg.ma = model;
  }
  return cfg;
}

Series benchmark_signal(const BenchmarkConfig& cfg) {
  switch (cfg.signal) {
    case SignalKind::chakar: return sample_signal(chakar_signal(), cfg.n);
    case SignalKind::park: return park_signal(cfg.n);
    case SignalKind::constant: return Series(std::vector<double>(cfg.n, 0.0));
    case SignalKind::custom:
      if (!cfg.custom) throw std::invalid_argument("custom signal needs taus and levels");
      return sample_signal(*cfg.custom, cfg.n);
  }
  throw std::invalid_argument("unknown signal kind");
}

std::vector<MseRow> run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.reps < 1) throw std::domain_error("benchmark needs reps >= 1");
  if (cfg.estimators.empty()) throw std::invalid_argument("no estimators requested");
  for (char c : cfg.estimators) {
    if (c != 'O' && c != 'H' && c != 'R') {
      throw std::invalid_argument(std::string("unknown estimator code '") + c + "'");
    }
  }
  if (cfg.m < 1) throw std::domain_error("benchmark needs m >= 1");
  if (cfg.n <= 2 * (cfg.m + 1)) throw std::domain_error("benchmark needs n > 2(m+1)");

  const Series f = benchmark_signal(cfg);
  const std::size_t lags = std::min<std::size_t>(cfg.m, 2);
  const std::size_t n_est = cfg.estimators.size();

  struct Row {
    double label;
    std::vector<double> rho;  // true rho_1..rho_lags
  };
  std::vector<Row> rows;
  if (cfg.ma) {
    const Acvf g = acvf_from_ma(*cfg.ma);
    Row r{g.at(1) / g.at(0), {}};
    for (std::size_t h = 1; h <= lags; ++h) r.rho.push_back(g.at(static_cast<long>(h)) / g.at(0));
    rows.push_back(r);
  } else {
    for (double g1 : cfg.gamma1) {
      ma1_coefficients(g1);
      Row r{g1, std::vector<double>(lags, 0.0)};
      r.rho[0] = g1;
      rows.push_back(r);
    }
  }

  std::vector<MseRow> out;
  for (std::size_t row = 0; row < rows.size(); ++row) {
    const std::uint64_t row_seed = rng::stream_seed(cfg.seed, row);
    // err[(r * n_est + e) * lags + l] = squared error, NaN on failure
    std::vector<double> err(cfg.reps * n_est * lags, 0.0);
    rng::parallel_for(
        cfg.reps,
        [&](std::size_t r) {
          const std::uint64_t s = rng::stream_seed(row_seed, r);
          const Series eps = cfg.ma ? gen_ma(*cfg.ma, cfg.n, s, cfg.dist)
                                    : gen_ma1({rows[row].label, cfg.dist, cfg.standardized}, cfg.n, s);
          const Series y = f + eps;
          for (std::size_t e = 0; e < n_est; ++e) {
            const char code = cfg.estimators[e];
            const AcvfEstimate est = code == 'O'   ? dbacf(y, cfg.m)
                                     : code == 'H' ? dbacf_fixed(y, cfg.m, 1.0)
                                                   : dbacf_fixed(y, cfg.m, 0.0);
            const double g0 = est.acvf.gamma[0];
            for (std::size_t l = 0; l < lags; ++l) {
              double& slot = err[(r * n_est + e) * lags + l];
              if (!(g0 > 0.0)) {
                slot = NAN;
                continue;
              }
              const double d = est.acvf.gamma[l + 1] / g0 - rows[row].rho[l];
              slot = d * d;
            }
          }
        },
        cfg.workers);

    for (std::size_t e = 0; e < n_est; ++e) {
      for (std::size_t l = 0; l < lags; ++l) {
        double sum = 0.0, sumsq = 0.0;
        std::size_t ok = 0, bad = 0;
        for (std::size_t r = 0; r < cfg.reps; ++r) {
          const double v = err[(r * n_est + e) * lags + l];
          if (std::isnan(v)) {
            ++bad;
            continue;
          }
          ++ok;
          sum += v;
          sumsq += v * v;
        }
        MseRow m;
        m.gamma1 = rows[row].label;
        m.estimator = cfg.estimators[e];
        m.lag = l + 1;
        m.reps = ok;
        m.failures = bad;
        m.n = cfg.n;
        m.seed = cfg.seed;
        if (ok > 0) {
          const auto k = static_cast<double>(ok);
          m.mse = sum / k;
          const double var = ok > 1 ? std::max(0.0, (sumsq - k * m.mse * m.mse) / (k - 1.0)) : 0.0;
          m.se = std::sqrt(var / k);
        } else {
          m.mse = NAN;
          m.se = NAN;
        }
        out.push_back(m);
      }
    }
  }
  return out;
}

}  // namespace dbacf

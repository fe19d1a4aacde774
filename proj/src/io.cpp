#include "dbacf/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

namespace dbacf::io {
namespace {

using json = nlohmann::ordered_json;

// JSON has no NaN; failed aggregates become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw IoError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw IoError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write error on '" + path + "'");
}

Series parse_series_csv(const std::string& text, bool header) {
  std::vector<double> v;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool skipped = !header;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!skipped) {
      skipped = true;
      continue;
    }
    std::string field = line.substr(0, line.find(','));
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    field = field.substr(b, e - b + 1);
    double x = 0.0;
    std::size_t used = 0;
    try {
      x = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || used == 0) {
      throw IoError(fmt::format("line {}: '{}' is not a number", lineno, field));
    }
    if (!std::isfinite(x)) throw IoError(fmt::format("line {}: non-finite value", lineno));
    v.push_back(x);
  }
  if (v.empty()) throw IoError("series file contains no observations");
  return Series(std::move(v));
}

Series read_series(const std::string& path, bool header) {
  return parse_series_csv(read_file(path), header);
}

std::string series_csv(const Series& y) {
  std::string out;
  for (double x : y.values()) out += fmt::format("{}\n", x);
  return out;
}

Acvf parse_acvf_json(const std::string& text) {
  const json j = parse(text);
  std::vector<double> g;
  if (j.is_array()) g = numbers(j, "acvf");
  else if (j.is_object() && j.contains("gamma")) g = numbers(j["gamma"], "gamma");
  else throw IoError("expected an array or an object with a 'gamma' array");
  if (g.empty()) throw IoError("gamma must be non-empty");
  return Acvf(std::move(g));
}

MaModel parse_ma_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("theta") || !j.contains("sigma2") ||
      !j["sigma2"].is_number()) {
    throw IoError("expected an object with 'theta' and 'sigma2'");
  }
  MaModel m;
  m.theta = numbers(j["theta"], "theta");
  m.sigma2 = j["sigma2"].get<double>();
  return m;
}

json to_json(const Acvf& acvf) {
  return json{{"schema", kSchema}, {"m", acvf.order()}, {"gamma", acvf.gamma}};
}

json to_json(const AcvfEstimate& e, bool with_acf) {
  json j{{"schema", kSchema},
         {"n", e.n},
         {"m", e.acvf.order()},
         {"gamma", e.acvf.gamma},
         {"weights_used", e.weights_used}};
  if (with_acf) j["acf"] = acf_from_estimate(e);
  return j;
}

json to_json(const ProjectionResult& r) {
  return json{{"schema", kSchema},
              {"n", r.matrix.n},
              {"m", r.matrix.m},
              {"first_row", r.matrix.first_row},
              {"report",
               {{"iterations", r.report.iterations},
                {"converged", r.report.converged},
                {"final_delta", r.report.final_delta},
                {"final_gap", r.report.final_gap},
                {"min_eigenvalue", r.report.min_eigenvalue}}}};
}

json to_json(const MaModel& model) {
  return json{{"schema", kSchema},
              {"theta", model.theta},
              {"sigma2", model.sigma2},
              {"invertible", model.invertible},
              {"near_boundary", model.near_boundary},
              {"converged", model.converged},
              {"iterations", model.iterations},
              {"residual", model.residual}};
}

json to_json(const StepFit& fit) {
  return json{{"schema", kSchema},
              {"k_hat", fit.k_hat},
              {"changepoints", fit.changepoints},
              {"levels", fit.levels},
              {"alpha", fit.alpha},
              {"quantile_used", fit.quantile_used}};
}

json to_json(const std::vector<MseRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(json{{"gamma1", number(r.gamma1)},
                       {"estimator", std::string(1, r.estimator)},
                       {"lag", r.lag},
                       {"mse", number(r.mse)},
                       {"se", number(r.se)},
                       {"reps", r.reps},
                       {"failures", r.failures},
                       {"n", r.n},
                       {"seed", r.seed}});
  }
  return json{{"schema", kSchema}, {"rows", arr}};
}

std::string estimate_csv(const AcvfEstimate& e, bool with_acf) {
  std::string out = with_acf ? "lag,gamma,weight,acf\n" : "lag,gamma,weight\n";
  const auto rho = with_acf ? acf_from_estimate(e) : std::vector<double>{};
  for (std::size_t h = 0; h < e.acvf.gamma.size(); ++h) {
    out += fmt::format("{},{},{}", h, e.acvf.gamma[h], e.weights_used[h]);
    if (with_acf) out += fmt::format(",{}", rho[h]);
    out += '\n';
  }
  return out;
}

std::string benchmark_csv(const std::vector<MseRow>& rows) {
  std::string out = "gamma1,estimator,lag,mse,se,reps,n,seed\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.gamma1, r.estimator, r.lag, r.mse, r.se,
                       r.reps, r.n, r.seed);
  }
  return out;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace dbacf::io

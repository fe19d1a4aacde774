#pragma once

// Text formats: series CSV input, JSON documents (schema 1) for every result
// type and the benchmark table.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbacf/core.hpp"
#include "dbacf/estimators.hpp"
#include "dbacf/jusd.hpp"
#include "dbacf/mafit.hpp"
#include "dbacf/projection.hpp"
#include "dbacf/sim.hpp"

namespace dbacf::io {

inline constexpr int kSchema = 1;

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
/// "-" or empty writes to stdout.
void write_output(const std::string& path, const std::string& text);

/// First comma-separated field of each non-empty line; '#' starts a comment.
Series parse_series_csv(const std::string& text, bool header = false);
Series read_series(const std::string& path, bool header = false);
std::string series_csv(const Series& y);

/// Accepts {"gamma": [...]} (including estimate output) or a bare array.
Acvf parse_acvf_json(const std::string& text);
/// Accepts {"theta": [...], "sigma2": s}.
MaModel parse_ma_json(const std::string& text);

nlohmann::ordered_json to_json(const Acvf& acvf);
nlohmann::ordered_json to_json(const AcvfEstimate& e, bool with_acf);
nlohmann::ordered_json to_json(const ProjectionResult& r);
nlohmann::ordered_json to_json(const MaModel& model);
nlohmann::ordered_json to_json(const StepFit& fit);
nlohmann::ordered_json to_json(const std::vector<MseRow>& rows);

std::string estimate_csv(const AcvfEstimate& e, bool with_acf);
std::string benchmark_csv(const std::vector<MseRow>& rows);

/// Pretty-printed document with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace dbacf::io

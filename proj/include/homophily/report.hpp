#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homophily/coloring.hpp"
#include "homophily/graph.hpp"
#include "homophily/indices.hpp"
#include "homophily/oracle.hpp"

namespace homophily {

inline constexpr const char* kToolName = "homophily";
inline constexpr const char* kToolVersion = "1.0.0";

const char* nu_name(NuChoice nu) noexcept;

struct Timing {
  double load_ms = 0.0;
  double analyze_ms = 0.0;
};

// Full per-instance report: graph statistics, moments, z-scores and every
// index. Undefined values are emitted as the string "undefined: <reason>".
nlohmann::ordered_json make_analyze_report(const Graph& g, const Coloring& f, const IndexOptions& options,
                                   const std::optional<Timing>& timing = std::nullopt);

// Indices for `samples` uniform colorings of f's profile, seeds seed..seed+K-1.
// Contains no timing so identical arguments give identical bytes.
nlohmann::ordered_json make_baseline_report(const Graph& g, const Coloring& f, const IndexOptions& options,
                                    std::uint64_t samples, std::uint64_t seed);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
};

struct OracleCheckReport {
  Profile profile;
  std::uint64_t colorings = 0;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

// Compares closed forms against exact enumeration: moments, Cantelli and
// Chebyshev bound validity, sign structure, Sherman-Morrison residual and
// the M-matrix pattern. Throws LimitExceeded past `limit` colorings.
OracleCheckReport oracle_check(const Graph& g, const Profile& p,
                               std::uint64_t limit = kDefaultEnumerationLimit);

// CSV "k,F,ratio,modularity,index_a" for the perfect matching on m edges
// with profile (m, m), one row per k = 0..floor(m/2).
std::string toy_curve_csv(std::uint64_t m);

// Serialization shared by the CLI.
std::string dump_json(const nlohmann::ordered_json& j);
// Flat "path<TAB>value" lines, one per leaf.
std::string dump_tsv(const nlohmann::ordered_json& j);

}  // namespace homophily

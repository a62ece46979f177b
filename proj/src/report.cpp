#include "homophily/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/LU>

#include "homophily/errors.hpp"
#include "homophily/moments.hpp"

namespace homophily {

using json = nlohmann::ordered_json;

namespace {

json value_json(const IndexValue& v) {
  if (v.defined()) return v.value();
  return "undefined: " + v.reason();
}

json optional_json(const std::optional<double>& v, const char* reason) {
  if (v) return *v;
  return std::string("undefined: ") + reason;
}

json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

json index_block(const IndexReport& rep) {
  json out = json::object();
  out["a"] = value_json(rep.a);
  out["one_minus_a"] = rep.a.defined() ? json(1.0 - rep.a.value()) : value_json(rep.a);
  out["one_minus_a_1e6"] = rep.a.defined() ? json((1.0 - rep.a.value()) * 1e6) : value_json(rep.a);
  out["r"] = value_json(rep.r);
  out["one_minus_r"] = rep.r.defined() ? json(1.0 - rep.r.value()) : value_json(rep.r);
  out["h"] = value_json(rep.h);
  json j = json::object();
  for (const auto& [preset, value] : rep.j_theta) j[preset_name(preset)] = value_json(value);
  out["j_theta"] = j;
  out["newman_q"] = value_json(rep.newman_q);
  out["descriptive_ratio"] = value_json(rep.ratio);
  return out;
}

std::vector<std::string> preset_names(const IndexOptions& options) {
  std::vector<std::string> out;
  for (Preset p : options.presets) out.emplace_back(preset_name(p));
  return out;
}

}  // namespace

const char* nu_name(NuChoice nu) noexcept {
  switch (nu) {
    case NuChoice::MaxDegree: return "maxdeg";
    case NuChoice::Classes: return "classes";
    case NuChoice::AverageDegree: return "avgdeg";
  }
  return "maxdeg";
}

json make_analyze_report(const Graph& g, const Coloring& f, const IndexOptions& options,
                         const std::optional<Timing>& timing) {
  const auto start = std::chrono::steady_clock::now();
  const GraphSummary s = summarize(g);
  const IndexReport rep = build_index_report(g, s, f, options);
  const double analyze_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json out;
  out["tool"] = tool_json();
  out["command"] = "analyze";
  out["graph"] = {
      {"n", s.n},
      {"m", s.m},
      {"density", s.density},
      {"delta1", s.delta1},
      {"delta2", s.delta2},
      {"dispersion", s.dispersion},
      {"pi3", s.pi3},
      {"gamma", optional_json(rep.gamma, "n < 4")},
  };
  out["profile"] = std::vector<std::uint64_t>(f.profile().sizes().begin(), f.profile().sizes().end());
  out["classes"] = std::vector<std::string>(f.class_labels().begin(), f.class_labels().end());
  out["observed"] = rep.observed.counts;
  out["expected"] = rep.moments.mbar;
  out["variance"] = rep.moments.var;
  out["z"] = rep.z.z;
  out["active"] = rep.z.active;
  out["indices"] = index_block(rep);
  out["presets"] = preset_names(options);
  out["nu"] = nu_name(options.nu);
  out["notes"] = rep.notes;
  out["seeds"] = json::array();
  json t = json::object();
  if (timing) {
    t["load_ms"] = timing->load_ms;
    t["analyze_ms"] = analyze_ms;
    t["total_ms"] = timing->load_ms + analyze_ms;
  } else {
    t["analyze_ms"] = analyze_ms;
  }
  out["timing_ms"] = t;
  return out;
}

json make_baseline_report(const Graph& g, const Coloring& f, const IndexOptions& options,
                          std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError(InputError::Kind::Malformed, "--samples must be at least 1");
  const GraphSummary s = summarize(g);

  json rows = json::array();
  json seeds = json::array();
  std::map<std::string, std::pair<double, std::uint64_t>> sums;
  auto accumulate = [&](const std::string& key, const IndexValue& v) {
    auto& [total, count] = sums[key];
    if (v.defined()) {
      total += v.value();
      ++count;
    }
  };

  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t sample_seed = seed + i;
    const Coloring sample = random_coloring(f.profile(), sample_seed);
    const IndexReport rep = build_index_report(g, s, sample, options);
    json row = index_block(rep);
    row["seed"] = sample_seed;
    row["observed"] = rep.observed.counts;
    rows.push_back(row);
    seeds.push_back(sample_seed);
    accumulate("a", rep.a);
    accumulate("r", rep.r);
    accumulate("h", rep.h);
    for (const auto& [preset, value] : rep.j_theta) accumulate(std::string("j_theta.") + preset_name(preset), value);
    accumulate("newman_q", rep.newman_q);
    accumulate("descriptive_ratio", rep.ratio);
  }

  json means = json::object();
  for (const auto& [key, acc] : sums) {
    const auto& [total, count] = acc;
    if (count == 0) {
      means[key] = "undefined: no sample defines this index";
    } else {
      means[key] = total / static_cast<double>(count);
    }
  }

  json out;
  out["tool"] = tool_json();
  out["command"] = "baseline";
  out["profile"] = std::vector<std::uint64_t>(f.profile().sizes().begin(), f.profile().sizes().end());
  out["samples"] = samples;
  out["seeds"] = seeds;
  out["presets"] = preset_names(options);
  out["nu"] = nu_name(options.nu);
  out["per_sample"] = rows;
  out["means"] = means;
  return out;
}

bool OracleCheckReport::all_pass() const {
  for (const CheckResult& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

json OracleCheckReport::to_json() const {
  json out;
  out["tool"] = tool_json();
  out["command"] = "oracle-check";
  out["profile"] = std::vector<std::uint64_t>(profile.sizes().begin(), profile.sizes().end());
  out["colorings"] = colorings;
  json list = json::array();
  for (const CheckResult& c : checks) {
    const char* status = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIPPED";
    list.push_back({{"name", c.name}, {"status", status}, {"detail", c.detail}});
  }
  out["checks"] = list;
  out["all_pass"] = all_pass();
  return out;
}

namespace {

CheckResult pass(std::string name, std::string detail = {}) {
  return {std::move(name), CheckStatus::Pass, std::move(detail)};
}
CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), CheckStatus::Fail, std::move(detail)};
}
CheckResult skipped(std::string name, std::string detail) {
  return {std::move(name), CheckStatus::Skipped, std::move(detail)};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Walks every support point as a hypothetical observation and checks that the
// exact tail of `stat` beyond it stays under `bound`. stat and bound are
// evaluated through the closed-form machinery; ties use exact_tail's slack.
struct BoundTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double worst_excess = -1.0;
};

}  // namespace

OracleCheckReport oracle_check(const Graph& g, const Profile& p, std::uint64_t limit) {
  OracleCheckReport rep;
  rep.profile = p;
  const ExactDistribution d = enumerate_colorings(g, p, limit);
  rep.colorings = d.coloring_count;

  const GraphSummary s = summarize(g);
  const ExactSecondOrder closed = exact_second_order(s, p);
  const ExactMoments enumerated = exact_moments(d);
  const std::size_t k = p.classes();

  {
    bool ok = closed.mbar == enumerated.mean;
    for (std::size_t i = 0; ok && i < k; ++i) ok = closed.cov[i] == enumerated.cov[i];
    rep.checks.push_back(ok ? pass("moments", "closed form equals enumeration exactly")
                            : fail("moments", "closed form differs from enumeration"));
  }

  MomentSummary ms;
  for (const Rational& x : closed.mbar) ms.mbar.push_back(to_double(x));
  for (const Rational& x : closed.var) ms.var.push_back(to_double(x));
  const CovarianceStructure cs = covariance_structure(closed);
  constexpr double kSlack = 1e-12;

  auto tally_to_result = [&](const std::string& name, const BoundTally& t) {
    if (t.checked == 0) return skipped(name, "degenerate: no outcome with a nonzero statistic");
    if (t.violations > 0) {
      return fail(name, std::to_string(t.violations) + " of " + std::to_string(t.checked) +
                            " outcomes exceed the bound (worst excess " + fmt(t.worst_excess) + ")");
    }
    return pass(name, std::to_string(t.checked) + " outcomes within bound");
  };

  // Generic Cantelli check for a score: index(x) in [-1, 1], score(x) the
  // centred statistic whose tail the index bounds.
  auto cantelli = [&](const std::string& name, const std::function<IndexValue(const OutcomeVector&)>& index,
                      const std::function<double(const OutcomeVector&)>& score) {
    BoundTally t;
    for (const auto& [x, pr] : d.mass) {
      const IndexValue v = index(x);
      if (!v.defined() || v.value() == 0.0) continue;
      ++t.checked;
      const Side side = v.value() > 0 ? Side::AtLeast : Side::AtMost;
      const double tail = to_double(exact_tail(d, score, score(x), side));
      const double bound = 1.0 - std::abs(v.value());
      const double excess = tail - bound;
      t.worst_excess = std::max(t.worst_excess, excess);
      if (excess > kSlack) ++t.violations;
    }
    rep.checks.push_back(tally_to_result(name, t));
  };

  auto observed = [](const OutcomeVector& x) { return ObservedOutcome{x}; };

  cantelli(
      "cantelli_a", [&](const OutcomeVector& x) { return index_a(z_scores(observed(x), ms), cs); },
      [&](const OutcomeVector& x) {
        const ZScores z = z_scores(observed(x), ms);
        double sum = 0.0;
        for (std::size_t i : z.active_set) sum += z.z[i];
        return sum;
      });
  cantelli(
      "cantelli_r", [&](const OutcomeVector& x) { return index_r(observed(x), ms, cs); },
      [&](const OutcomeVector& x) {
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += static_cast<double>(x[i]);
        return sum;
      });
  for (Preset preset : {Preset::Ratio, Preset::AvgInternalDegree, Preset::Dyadicity}) {
    const std::string name = std::string("cantelli_j_") + preset_name(preset);
    WeightVector w;
    try {
      w = weight_preset(preset, s, p);
    } catch (const Undefined& e) {
      rep.checks.push_back(skipped(name, e.what()));
      continue;
    }
    cantelli(
        name, [&](const OutcomeVector& x) { return index_j_theta(observed(x), ms, cs, w); },
        [&](const OutcomeVector& x) {
          double sum = 0.0;
          for (std::size_t i = 0; i < k; ++i) sum += w.w[i] * static_cast<double>(x[i]);
          return sum;
        });
  }

  if (!cs.corr_inv) {
    rep.checks.push_back(skipped("chebyshev_h", "degenerate: correlation matrix singular"));
  } else {
    BoundTally t;
    auto norm2 = [&](const OutcomeVector& x) { return mahalanobis_sq(z_scores(observed(x), ms), cs).value_or(0.0); };
    const double sa = static_cast<double>(cs.active_set.size());
    for (const auto& [x, pr] : d.mass) {
      const double nz = norm2(x);
      if (!(nz > 0.0)) continue;
      ++t.checked;
      const double tail = to_double(exact_tail(d, norm2, nz, Side::AtLeast));
      const double excess = tail - std::min(1.0, sa / nz);
      t.worst_excess = std::max(t.worst_excess, excess);
      if (excess > kSlack) ++t.violations;
    }
    rep.checks.push_back(tally_to_result("chebyshev_h", t));
  }

  if (!closed.gamma || k < 2) {
    rep.checks.push_back(skipped("sign_structure", !closed.gamma ? "gamma undefined (n < 4)" : "single class"));
  } else {
    const int gs = sgn(*closed.gamma);
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && sgn(closed.cov[i][j]) * gs < 0) ok = false;
      }
    }
    rep.checks.push_back(ok ? pass("sign_structure", "off-diagonals share the sign of gamma")
                            : fail("sign_structure", "off-diagonal with the wrong sign"));
  }

  if (!cs.sigma_inv) {
    rep.checks.push_back(skipped("sherman_morrison", "degenerate"));
    rep.checks.push_back(skipped("m_matrix", "degenerate"));
  } else {
    const Eigen::MatrixXd& inv = *cs.sigma_inv;
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::MatrixXd residual = cs.sigma * inv - Eigen::MatrixXd::Identity(kk, kk);
    const double res = residual.cwiseAbs().rowwise().sum().maxCoeff();
    const Eigen::MatrixXd direct = cs.sigma.fullPivLu().inverse();
    const double diff = (direct - inv).cwiseAbs().maxCoeff() / std::max(1.0, direct.cwiseAbs().maxCoeff());
    const std::string detail = "residual " + fmt(res) + ", relative gap to LU inverse " + fmt(diff);
    rep.checks.push_back(res <= 1e-9 && diff <= 1e-9 ? pass("sherman_morrison", detail)
                                                      : fail("sherman_morrison", detail));

    const double g = cs.gamma.value_or(0.0);
    const double scale = inv.cwiseAbs().maxCoeff();
    bool ok = true;
    for (Eigen::Index i = 0; i < kk; ++i) {
      for (Eigen::Index j = 0; j < kk; ++j) {
        if (g <= 0 && inv(i, j) < -1e-10 * scale) ok = false;
        if (g >= 0 && cs.sigma(i, j) < 0) ok = false;
        if (g >= 0 && i != j && inv(i, j) > 1e-10 * scale) ok = false;
      }
    }
    rep.checks.push_back(ok ? pass("m_matrix", g <= 0 ? "inverse is entrywise nonnegative"
                                                       : "inverse has nonpositive off-diagonals")
                            : fail("m_matrix", "sign pattern violated"));
  }
  return rep;
}

std::string toy_curve_csv(std::uint64_t m) {
  if (m < 2) throw InputError(InputError::Kind::Malformed, "--edges must be at least 2");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) edges.push_back({2 * i, 2 * i + 1});
  const Graph g = Graph::from_edges(2 * m, std::move(edges));
  const GraphSummary s = summarize(g);
  const Profile profile({m, m});
  const ExactSecondOrder exact = exact_second_order(s, profile);
  MomentSummary ms;
  for (const Rational& x : exact.mbar) ms.mbar.push_back(to_double(x));
  for (const Rational& x : exact.var) ms.var.push_back(to_double(x));
  const CovarianceStructure cs = covariance_structure(exact);
  const std::vector<Rational> tail = matching_tail_all(m);

  std::string out = "k,F,ratio,modularity,index_a\n";
  std::vector<ClassId> class_of(2 * m);
  char buf[160];
  for (std::uint64_t k = 0; k <= m / 2; ++k) {
    // Edges [0, k) red-red, [k, 2k) blue-blue, the rest red-blue.
    for (std::uint64_t e = 0; e < m; ++e) {
      const ClassId left = e < k ? 0 : 1;
      const ClassId right = e < k ? 0 : (e < 2 * k ? 1 : 0);
      class_of[2 * e] = left;
      class_of[2 * e + 1] = right;
    }
    const Coloring f(class_of, 2);
    const ObservedOutcome o = homophilic_counts(g, f);
    const double F = to_double(Rational(1 - tail[k]));
    const IndexValue ratio = descriptive_ratio(o, m);
    const IndexValue q = newman_modularity(g, f, o);
    const IndexValue a = index_a(z_scores(o, ms), cs);
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(k), F,
                  ratio.value_or(NAN), q.value_or(NAN), a.value_or(NAN));
    out += buf;
  }
  return out;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

namespace {

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    if (j.empty()) out += prefix + "\t\n";
  } else {
    out += prefix + "\t" + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string dump_tsv(const json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

}  // namespace homophily

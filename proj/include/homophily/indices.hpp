#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homophily/coloring.hpp"
#include "homophily/errors.hpp"
#include "homophily/graph.hpp"
#include "homophily/moments.hpp"

namespace homophily {

struct ZScores {
  std::vector<double> z;           // 0 for inactive classes
  std::vector<bool> active;
  std::vector<std::size_t> active_set;
};

// z_i = (m_i - mbar_i) / sigma_i for classes with var_i above the degeneracy
// threshold (relative to the largest variance).
ZScores z_scores(const ObservedOutcome& o, const MomentSummary& ms);

// Sign-symmetric Cantelli squash of the mean active z-score.
IndexValue index_a(const ZScores& z, const CovarianceStructure& cs);

enum class Preset { Ratio, AvgInternalDegree, Dyadicity, Custom };
enum class NuChoice { MaxDegree, Classes, AverageDegree };

const char* preset_name(Preset p) noexcept;

struct WeightVector {
  std::vector<double> w;
  Preset preset = Preset::Custom;
};

// Throws Undefined when the preset has no valid weights for this input.
WeightVector weight_preset(Preset preset, const GraphSummary& s, const Profile& p,
                           NuChoice nu = NuChoice::MaxDegree);

// j = sgn(T) T^2 / (T^2 + w' Sigma w) with T = w'(m - mbar).
IndexValue index_j_theta(const ObservedOutcome& o, const MomentSummary& ms,
                         const CovarianceStructure& cs, const WeightVector& w);

IndexValue index_r(const ObservedOutcome& o, const MomentSummary& ms, const CovarianceStructure& cs);

// max(0, 1 - s_a / ||z||^2) with ||z||^2 = z' Gamma^-1 z on the active set.
IndexValue index_h(const ZScores& z, const CovarianceStructure& cs);

// Squared Mahalanobis norm of z on the active set; nullopt without corr_inv.
std::optional<double> mahalanobis_sq(const ZScores& z, const CovarianceStructure& cs);

IndexValue newman_modularity(const Graph& g, const Coloring& f, const ObservedOutcome& o);
IndexValue descriptive_ratio(const ObservedOutcome& o, std::uint64_t m);

struct IndexReport {
  ObservedOutcome observed;
  MomentSummary moments;
  ZScores z;
  std::optional<double> gamma;
  IndexValue a = IndexValue::undefined("not computed");
  IndexValue r = IndexValue::undefined("not computed");
  IndexValue h = IndexValue::undefined("not computed");
  std::vector<std::pair<Preset, IndexValue>> j_theta;
  IndexValue newman_q = IndexValue::undefined("not computed");
  IndexValue ratio = IndexValue::undefined("not computed");
  std::vector<std::string> notes;
};

struct IndexOptions {
  std::vector<Preset> presets{Preset::Ratio, Preset::AvgInternalDegree, Preset::Dyadicity};
  NuChoice nu = NuChoice::MaxDegree;
};

// One pass over the edges plus O(s^2) algebra.
IndexReport build_index_report(const Graph& g, const GraphSummary& s, const Coloring& f,
                               const IndexOptions& options = {});

}  // namespace homophily

#include "homophily/indices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace homophily {

namespace {

double sgn(double x) { return (x > 0) - (x < 0); }

// sgn(t) t^2 / (t^2 + v), saturating at +-1 when the variance vanishes.
IndexValue cantelli_squash(double t, double v, double v_tol) {
  if (v <= v_tol) {
    return IndexValue::of(sgn(t));
  }
  const double t2 = t * t;
  return IndexValue::of(sgn(t) * t2 / (t2 + v));
}

}  // namespace

const char* preset_name(Preset p) noexcept {
  switch (p) {
    case Preset::Ratio: return "ratio";
    case Preset::AvgInternalDegree: return "avg_internal_degree";
    case Preset::Dyadicity: return "dyadicity";
    case Preset::Custom: return "custom";
  }
  return "custom";
}

ZScores z_scores(const ObservedOutcome& o, const MomentSummary& ms) {
  const std::size_t k = ms.mbar.size();
  ZScores out;
  out.z.assign(k, 0.0);
  out.active.assign(k, false);
  const double scale = k > 0 ? *std::max_element(ms.var.begin(), ms.var.end()) : 0.0;
  const double tol = kDegeneracyTolerance * scale;
  for (std::size_t i = 0; i < k; ++i) {
    if (scale > 0.0 && ms.var[i] > tol) {
      out.active[i] = true;
      out.active_set.push_back(i);
      out.z[i] = (static_cast<double>(o.counts.at(i)) - ms.mbar[i]) / std::sqrt(ms.var[i]);
    }
  }
  return out;
}

IndexValue index_a(const ZScores& z, const CovarianceStructure& cs) {
  if (z.active_set.empty()) return IndexValue::undefined("all classes degenerate");
  double total = 0.0;
  double magnitude = 0.0;
  for (std::size_t i : z.active_set) {
    total += z.z[i];
    magnitude += std::abs(z.z[i]);
  }
  if (std::abs(total) <= kDegeneracyTolerance * magnitude) total = 0.0;
  // 1' Gamma 1 over the active set is the variance of the summed z-scores.
  double g = 0.0;
  for (std::size_t i : z.active_set) {
    for (std::size_t j : z.active_set) {
      g += cs.corr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  const auto sa = static_cast<double>(z.active_set.size());
  return cantelli_squash(total, g, kDegeneracyTolerance * sa * sa);
}

WeightVector weight_preset(Preset preset, const GraphSummary& s, const Profile& p, NuChoice nu) {
  const std::size_t k = p.classes();
  WeightVector out;
  out.preset = preset;
  out.w.assign(k, 0.0);
  switch (preset) {
    case Preset::Ratio:
      if (s.m == 0) throw Undefined("ratio preset needs at least one edge");
      std::fill(out.w.begin(), out.w.end(), 1.0 / static_cast<double>(s.m));
      break;
    case Preset::AvgInternalDegree: {
      double coef = 0.0;
      switch (nu) {
        case NuChoice::MaxDegree:
          if (s.max_degree == 0) throw Undefined("avg_internal_degree preset needs a nonzero maximum degree");
          coef = 1.0 / static_cast<double>(s.max_degree);
          break;
        case NuChoice::Classes:
          coef = 1.0 / static_cast<double>(k);
          break;
        case NuChoice::AverageDegree:
          if (s.m == 0) throw Undefined("avg_internal_degree preset needs a nonzero average degree");
          coef = static_cast<double>(s.n) / (2.0 * static_cast<double>(s.m));
          break;
      }
      for (std::size_t i = 0; i < k; ++i) out.w[i] = coef * 2.0 / static_cast<double>(p.size(static_cast<ClassId>(i)));
      break;
    }
    case Preset::Dyadicity: {
      bool any = false;
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t c = p.size(static_cast<ClassId>(i));
        if (c < 2) continue;
        out.w[i] = 2.0 / (static_cast<double>(k) * static_cast<double>(c) * static_cast<double>(c - 1));
        any = true;
      }
      if (!any) throw Undefined("dyadicity preset needs a class with at least two vertices");
      break;
    }
    case Preset::Custom:
      throw Undefined("custom weights have no preset");
  }
  return out;
}

IndexValue index_j_theta(const ObservedOutcome& o, const MomentSummary& ms,
                         const CovarianceStructure& cs, const WeightVector& w) {
  const std::size_t k = ms.mbar.size();
  if (w.w.size() != k) return IndexValue::undefined("weight vector has the wrong length");
  double wsum = 0.0;
  for (double x : w.w) {
    if (!(x >= 0.0) || !std::isfinite(x)) return IndexValue::undefined("weights must be finite and nonnegative");
    wsum += x;
  }
  if (wsum == 0.0) return IndexValue::undefined("weight vector is zero");

  double theta = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double observed = static_cast<double>(o.counts.at(i));
    theta += w.w[i] * (observed - ms.mbar[i]);
    magnitude += w.w[i] * (observed + std::abs(ms.mbar[i]));
  }
  if (std::abs(theta) <= kDegeneracyTolerance * magnitude) theta = 0.0;

  const Eigen::Map<const Eigen::VectorXd> wv(w.w.data(), static_cast<Eigen::Index>(k));
  const double v = wv.dot(cs.sigma * wv);
  const double scale = k > 0 ? cs.sigma.cwiseAbs().maxCoeff() : 0.0;
  return cantelli_squash(theta, v, kDegeneracyTolerance * scale * wsum * wsum);
}

IndexValue index_r(const ObservedOutcome& o, const MomentSummary& ms, const CovarianceStructure& cs) {
  WeightVector ones{std::vector<double>(ms.mbar.size(), 1.0), Preset::Custom};
  return index_j_theta(o, ms, cs, ones);
}

std::optional<double> mahalanobis_sq(const ZScores& z, const CovarianceStructure& cs) {
  if (z.active_set.empty() || !cs.corr_inv) return std::nullopt;
  const Eigen::Map<const Eigen::VectorXd> zv(z.z.data(), static_cast<Eigen::Index>(z.z.size()));
  return zv.dot(*cs.corr_inv * zv);
}

IndexValue index_h(const ZScores& z, const CovarianceStructure& cs) {
  if (z.active_set.empty()) return IndexValue::undefined("all classes degenerate");
  const auto norm2 = mahalanobis_sq(z, cs);
  if (!norm2) return IndexValue::undefined("correlation matrix on the active set is singular");
  const auto sa = static_cast<double>(z.active_set.size());
  if (!(*norm2 > 0.0)) return IndexValue::of(0.0);
  return IndexValue::of(std::max(0.0, (*norm2 - sa) / *norm2));
}

IndexValue newman_modularity(const Graph& g, const Coloring& f, const ObservedOutcome& o) {
  const std::size_t m = g.edge_count();
  if (m == 0) return IndexValue::undefined("modularity needs at least one edge");
  std::vector<std::uint64_t> class_degree(f.classes(), 0);
  const auto degrees = g.degrees();
  for (std::size_t v = 0; v < degrees.size(); ++v) class_degree[f[static_cast<VertexId>(v)]] += degrees[v];
  const double dm = static_cast<double>(m);
  double q = 0.0;
  for (std::size_t i = 0; i < f.classes(); ++i) {
    const double share = static_cast<double>(class_degree[i]) / (2.0 * dm);
    q += static_cast<double>(o.counts.at(i)) / dm - share * share;
  }
  return IndexValue::of(q);
}

IndexValue descriptive_ratio(const ObservedOutcome& o, std::uint64_t m) {
  if (m == 0) return IndexValue::undefined("homophily ratio needs at least one edge");
  return IndexValue::of(static_cast<double>(o.total()) / static_cast<double>(m));
}

IndexReport build_index_report(const Graph& g, const GraphSummary& s, const Coloring& f,
                               const IndexOptions& options) {
  IndexReport rep;
  rep.observed = homophilic_counts(g, f);
  const ExactSecondOrder exact = exact_second_order(s, f.profile());
  for (const Rational& x : exact.mbar) rep.moments.mbar.push_back(to_double(x));
  for (const Rational& x : exact.var) rep.moments.var.push_back(to_double(x));
  const CovarianceStructure cs = covariance_structure(exact);
  rep.gamma = cs.gamma;
  if (!rep.gamma) rep.notes.push_back("gamma undefined for n < 4");
  rep.notes.insert(rep.notes.end(), cs.notes.begin(), cs.notes.end());

  rep.z = z_scores(rep.observed, rep.moments);
  rep.a = index_a(rep.z, cs);
  rep.r = index_r(rep.observed, rep.moments, cs);
  rep.h = index_h(rep.z, cs);
  for (Preset p : options.presets) {
    try {
      rep.j_theta.emplace_back(p, index_j_theta(rep.observed, rep.moments, cs,
                                                weight_preset(p, s, f.profile(), options.nu)));
    } catch (const Undefined& e) {
      rep.j_theta.emplace_back(p, IndexValue::undefined(e.what()));
    }
  }
  rep.newman_q = newman_modularity(g, f, rep.observed);
  rep.ratio = descriptive_ratio(rep.observed, s.m);
  return rep;
}

}  // namespace homophily

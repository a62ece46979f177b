#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "homophily/coloring.hpp"
#include "homophily/graph.hpp"
#include "homophily/rational.hpp"

namespace homophily {

using OutcomeVector = std::vector<std::uint64_t>;

// Exact law of M on an enumerable instance.
struct ExactDistribution {
  Profile profile;
  std::uint64_t coloring_count = 0;
  std::map<OutcomeVector, Rational> mass;
};

// n! / (c_1! ... c_s!)
BigInt multinomial(const Profile& p);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

// Visits every coloring of the profile once (lexicographic multiset
// permutations). Throws LimitExceeded when the coloring count exceeds limit.
ExactDistribution enumerate_colorings(const Graph& g, const Profile& p,
                                      std::uint64_t limit = kDefaultEnumerationLimit);

struct ExactMoments {
  std::vector<Rational> mean;
  std::vector<std::vector<Rational>> cov;
};

ExactMoments exact_moments(const ExactDistribution& d);

enum class Side { AtLeast, AtMost };

// Mass of {x : w'x on the given side of threshold}, all exact.
Rational exact_tail_linear(const ExactDistribution& d, std::span<const Rational> w,
                           const Rational& threshold, Side side);

// Mass of {x : stat(x) on the given side of threshold}; values within
// tie_tol * max(1, |threshold|) of the threshold count as attaining it.
Rational exact_tail(const ExactDistribution& d, const std::function<double(const OutcomeVector&)>& stat,
                    double threshold, Side side, double tie_tol = 1e-9);

struct TailEstimate {
  double estimate = 0.0;
  double half_width = 0.0;   // 99% interval, see mc_tail
  std::uint64_t samples = 0;
  std::uint64_t first_seed = 0;  // samples use seeds first_seed, first_seed + 1, ...
  double lower() const;
  double upper() const;
};

TailEstimate mc_tail(const Graph& g, const Profile& p,
                     const std::function<double(const OutcomeVector&)>& stat, double threshold,
                     Side side, std::uint64_t samples, std::uint64_t seed, double tie_tol = 1e-9);

// P(M_i >= k) for the perfect matching on m edges with profile (m, m).
Rational matching_tail(std::uint64_t m, std::uint64_t k);
// P(M_i >= k) for every k in 0..floor(m/2), sharing one exact pass.
std::vector<Rational> matching_tail_all(std::uint64_t m);
// log P(M_i >= k) from log-factorials with compensated summation.
double matching_tail_log(std::uint64_t m, std::uint64_t k);

struct TreeGammaScan {
  std::uint64_t n = 0;
  std::uint64_t tree_count = 0;
  std::uint64_t path_count = 0;
  std::uint64_t star_count = 0;
  bool gamma_defined = false;
  std::optional<Rational> gamma_max;
  std::optional<Rational> gamma_min;
  std::uint64_t argmax_count = 0;
  std::uint64_t argmin_count = 0;
  bool argmax_only_paths = false;   // every maximizer is a path
  bool argmin_only_stars = false;   // every minimizer is a star
  bool all_paths_maximize = false;
  bool all_stars_minimize = false;
};

// Enumerates all labelled trees on n vertices (2 <= n <= 8) via Pruefer
// sequences and locates the gamma extremes.
TreeGammaScan tree_gamma_scan(std::uint64_t n);

// Pruefer sequence -> tree edges on n = seq.size() + 2 vertices.
std::vector<Edge> pruefer_decode(std::span<const std::uint32_t> seq);

// One representative per isomorphism class of connected simple graphs on n
// vertices (1 <= n <= 6).
std::vector<Graph> connected_graphs_up_to_isomorphism(std::size_t n);

}  // namespace homophily

#include "homophily/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "homophily/errors.hpp"

namespace homophily {

BigInt multinomial(const Profile& p) {
  BigInt out(1);
  std::uint64_t placed = 0;
  for (std::uint64_t c : p.sizes()) {
    // C(placed + c, c), accumulated one factor at a time to stay integral.
    for (std::uint64_t i = 1; i <= c; ++i) {
      out *= big(placed + i);
      out /= big(i);
    }
    placed += c;
  }
  return out;
}

ExactDistribution enumerate_colorings(const Graph& g, const Profile& p, std::uint64_t limit) {
  if (p.total() != g.vertex_count()) {
    throw InputError(InputError::Kind::InvalidProfile,
                     "profile sums to " + std::to_string(p.total()) + " but the graph has " +
                         std::to_string(g.vertex_count()) + " vertices");
  }
  const BigInt count = multinomial(p);
  if (count > big(limit)) {
    throw LimitExceeded("enumeration limit " + std::to_string(limit) + " exceeded", count.get_str());
  }

  std::vector<ClassId> labels;
  labels.reserve(g.vertex_count());
  for (std::size_t i = 0; i < p.classes(); ++i) labels.insert(labels.end(), p.size(static_cast<ClassId>(i)), static_cast<ClassId>(i));

  std::map<OutcomeVector, std::uint64_t> hits;
  std::uint64_t visited = 0;
  const auto edges = g.edges();
  do {
    ++hits[homophilic_counts(edges, labels, p.classes()).counts];
    ++visited;
  } while (std::next_permutation(labels.begin(), labels.end()));

  ExactDistribution d;
  d.profile = p;
  d.coloring_count = visited;
  const BigInt total = big(visited);
  for (auto& [outcome, h] : hits) d.mass.emplace(outcome, ratio(big(h), total));
  return d;
}

ExactMoments exact_moments(const ExactDistribution& d) {
  const std::size_t k = d.profile.classes();
  ExactMoments out;
  out.mean.assign(k, Rational(0));
  out.cov.assign(k, std::vector<Rational>(k, Rational(0)));
  for (const auto& [x, pr] : d.mass) {
    for (std::size_t i = 0; i < k; ++i) {
      out.mean[i] += pr * Rational(big(x[i]));
      for (std::size_t j = 0; j < k; ++j) out.cov[i][j] += pr * Rational(big(x[i] * x[j]));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out.cov[i][j] -= out.mean[i] * out.mean[j];
  }
  return out;
}

Rational exact_tail_linear(const ExactDistribution& d, std::span<const Rational> w,
                           const Rational& threshold, Side side) {
  Rational total(0);
  for (const auto& [x, pr] : d.mass) {
    Rational value(0);
    for (std::size_t i = 0; i < x.size(); ++i) value += w[i] * Rational(big(x[i]));
    const bool hit = side == Side::AtLeast ? value >= threshold : value <= threshold;
    if (hit) total += pr;
  }
  return total;
}

namespace {

bool on_side(double value, double threshold, Side side, double tie_tol) {
  const double slack = tie_tol * std::max(1.0, std::abs(threshold));
  return side == Side::AtLeast ? value >= threshold - slack : value <= threshold + slack;
}

}  // namespace

Rational exact_tail(const ExactDistribution& d, const std::function<double(const OutcomeVector&)>& stat,
                    double threshold, Side side, double tie_tol) {
  Rational total(0);
  for (const auto& [x, pr] : d.mass) {
    if (on_side(stat(x), threshold, side, tie_tol)) total += pr;
  }
  return total;
}

double TailEstimate::lower() const { return std::max(0.0, estimate - half_width); }
double TailEstimate::upper() const { return std::min(1.0, estimate + half_width); }

TailEstimate mc_tail(const Graph& g, const Profile& p,
                     const std::function<double(const OutcomeVector&)>& stat, double threshold,
                     Side side, std::uint64_t samples, std::uint64_t seed, double tie_tol) {
  if (samples == 0) throw std::invalid_argument("mc_tail needs at least one sample");
  if (p.total() != g.vertex_count()) {
    throw InputError(InputError::Kind::InvalidProfile, "profile does not match the graph");
  }
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Coloring f = random_coloring(p, seed + i);
    if (on_side(stat(homophilic_counts(g, f).counts), threshold, side, tie_tol)) ++hits;
  }
  TailEstimate t;
  t.samples = samples;
  t.first_seed = seed;
  t.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  // Symmetric around the estimate but wide enough to contain the Wilson score
  // interval plus a continuity correction, so coverage holds near 0 and 1.
  constexpr double kZ99 = 2.5758293035489004;
  const double n = static_cast<double>(samples);
  const double z2 = kZ99 * kZ99;
  const double centre = (t.estimate + z2 / (2 * n)) / (1 + z2 / n);
  const double spread = kZ99 / (1 + z2 / n) * std::sqrt(t.estimate * (1 - t.estimate) / n + z2 / (4 * n * n));
  t.half_width = std::max(t.estimate - (centre - spread), (centre + spread) - t.estimate) + 0.5 / n;
  return t;
}

std::vector<Rational> matching_tail_all(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("matching_tail needs m >= 1");
  const std::uint64_t top = m / 2;
  // A_t = m! / (t! t! (m-2t)!) * 4^(top - t), all integers; the tail is
  // prefactor * sum_{t >= k} A_t / 4^top.
  std::vector<BigInt> terms(top + 1);
  BigInt multi(1);
  for (std::uint64_t t = 0; t <= top; ++t) {
    BigInt four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, top - t);
    terms[t] = multi * four_pow;
    if (t < top) {
      multi *= big((m - 2 * t) * (m - 2 * t - 1));
      multi /= big((t + 1) * (t + 1));
    }
  }
  BigInt m_fact, two_m_fact, two_pow, four_top;
  mpz_fac_ui(m_fact.get_mpz_t(), m);
  mpz_fac_ui(two_m_fact.get_mpz_t(), 2 * m);
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, m);
  mpz_ui_pow_ui(four_top.get_mpz_t(), 4, top);
  const BigInt num_pre = two_pow * m_fact * m_fact;
  const BigInt den = two_m_fact * four_top;

  std::vector<Rational> out(top + 1);
  BigInt suffix(0);
  for (std::uint64_t t = top + 1; t-- > 0;) {
    suffix += terms[t];
    out[t] = ratio(num_pre * suffix, den);
  }
  return out;
}

Rational matching_tail(std::uint64_t m, std::uint64_t k) {
  if (m == 0 || k > m / 2) {
    throw std::out_of_range("matching_tail: need m >= 1 and 0 <= k <= floor(m/2)");
  }
  return matching_tail_all(m)[k];
}

double matching_tail_log(std::uint64_t m, std::uint64_t k) {
  if (m == 0 || k > m / 2) {
    throw std::out_of_range("matching_tail_log: need m >= 1 and 0 <= k <= floor(m/2)");
  }
  const double dm = static_cast<double>(m);
  const double log_pre = dm * std::log(2.0) + 2.0 * std::lgamma(dm + 1.0) - std::lgamma(2.0 * dm + 1.0);
  std::vector<double> logs;
  for (std::uint64_t t = k; t <= m / 2; ++t) {
    const double dt = static_cast<double>(t);
    logs.push_back(std::lgamma(dm + 1.0) - 2.0 * std::lgamma(dt + 1.0) -
                   std::lgamma(dm - 2.0 * dt + 1.0) - 2.0 * dt * std::log(2.0));
  }
  const double peak = *std::max_element(logs.begin(), logs.end());
  // Kahan summation of exp(l - peak).
  double sum = 0.0;
  double carry = 0.0;
  for (double l : logs) {
    const double y = std::exp(l - peak) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return log_pre + peak + std::log(sum);
}

std::vector<Edge> pruefer_decode(std::span<const std::uint32_t> seq) {
  const std::size_t n = seq.size() + 2;
  std::vector<std::uint32_t> degree(n, 1);
  for (std::uint32_t x : seq) ++degree[x];
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::uint32_t x : seq) {
    for (std::uint32_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        edges.push_back({leaf, x});
        --degree[leaf];
        --degree[x];
        break;
      }
    }
  }
  std::uint32_t a = n, b = n;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (degree[v] == 1) (a == n ? a : b) = v;
  }
  edges.push_back({a, b});
  return edges;
}

TreeGammaScan tree_gamma_scan(std::uint64_t n) {
  if (n < 2 || n > 8) throw std::out_of_range("tree_gamma_scan supports 2 <= n <= 8");
  TreeGammaScan scan;
  scan.n = n;

  std::map<std::uint64_t, Rational> gamma_by_pi3;
  struct Seen {
    std::uint64_t pi3;
    bool path;
    bool star;
  };
  std::vector<Seen> trees;

  std::vector<std::uint32_t> seq(n - 2, 0);
  std::vector<std::uint32_t> degrees(n);
  while (true) {
    const std::vector<Edge> edges = pruefer_decode(seq);
    std::fill(degrees.begin(), degrees.end(), 0);
    for (const Edge& e : edges) {
      ++degrees[e.u];
      ++degrees[e.v];
    }
    const GraphSummary s = summarize(n, degrees);
    const std::uint32_t maxdeg = *std::max_element(degrees.begin(), degrees.end());
    trees.push_back({s.pi3, maxdeg <= 2, maxdeg == n - 1});
    if (auto g = gamma_exact(s)) gamma_by_pi3.emplace(s.pi3, *g);

    // Odometer over {0..n-1}^(n-2).
    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }

  scan.tree_count = trees.size();
  for (const Seen& t : trees) {
    scan.path_count += t.path;
    scan.star_count += t.star;
  }
  scan.gamma_defined = !gamma_by_pi3.empty();
  if (!scan.gamma_defined) return scan;

  Rational hi = gamma_by_pi3.begin()->second;
  Rational lo = hi;
  for (const auto& [pi3, g] : gamma_by_pi3) {
    hi = std::max(hi, g);
    lo = std::min(lo, g);
  }
  scan.gamma_max = hi;
  scan.gamma_min = lo;
  scan.argmax_only_paths = true;
  scan.argmin_only_stars = true;
  scan.all_paths_maximize = true;
  scan.all_stars_minimize = true;
  for (const Seen& t : trees) {
    const Rational& g = gamma_by_pi3.at(t.pi3);
    const bool is_max = g == hi;
    const bool is_min = g == lo;
    scan.argmax_count += is_max;
    scan.argmin_count += is_min;
    if (is_max && !t.path) scan.argmax_only_paths = false;
    if (is_min && !t.star) scan.argmin_only_stars = false;
    if (t.path && !is_max) scan.all_paths_maximize = false;
    if (t.star && !is_min) scan.all_stars_minimize = false;
  }
  return scan;
}

std::vector<Graph> connected_graphs_up_to_isomorphism(std::size_t n) {
  if (n < 1 || n > 6) throw std::out_of_range("connected_graphs_up_to_isomorphism supports 1 <= n <= 6");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::array<std::array<int, 6>, 6> bit{};
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      bit[i][j] = bit[j][i] = static_cast<int>(pairs.size());
      pairs.emplace_back(i, j);
    }
  }
  const std::size_t e = pairs.size();
  const std::uint32_t masks = 1u << e;

  // Per permutation, byte-wise lookup tables mapping edge bits to permuted bits.
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::array<std::array<std::uint32_t, 256>, 2>> tables;
  do {
    std::array<std::array<std::uint32_t, 256>, 2> t{};
    for (int chunk = 0; chunk < 2; ++chunk) {
      for (std::uint32_t byte = 0; byte < 256; ++byte) {
        std::uint32_t out = 0;
        for (int b = 0; b < 8; ++b) {
          const std::size_t idx = static_cast<std::size_t>(chunk * 8 + b);
          if (idx >= e || !((byte >> b) & 1u)) continue;
          const auto [u, v] = pairs[idx];
          out |= 1u << bit[perm[u]][perm[v]];
        }
        t[static_cast<std::size_t>(chunk)][byte] = out;
      }
    }
    tables.push_back(t);
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto connected = [&](std::uint32_t mask) {
    std::uint32_t reached = 1;
    std::uint32_t frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t idx = 0; idx < e; ++idx) {
        if (!((mask >> idx) & 1u)) continue;
        const auto [u, v] = pairs[idx];
        if ((frontier >> u) & 1u) next |= 1u << v;
        if ((frontier >> v) & 1u) next |= 1u << u;
      }
      frontier = next & ~reached;
      reached |= next;
    }
    return reached == (1u << n) - 1;
  };

  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    if (!connected(mask)) continue;
    bool minimal = true;
    for (const auto& t : tables) {
      if ((t[0][mask & 0xffu] | t[1][(mask >> 8) & 0xffu]) < mask) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    std::vector<Edge> edges;
    for (std::size_t idx = 0; idx < e; ++idx) {
      if ((mask >> idx) & 1u) edges.push_back({pairs[idx].first, pairs[idx].second});
    }
    out.push_back(Graph::from_edges(n, std::move(edges)));
  }
  return out;
}

}  // namespace homophily

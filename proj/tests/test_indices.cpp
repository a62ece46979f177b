#include <doctest.h>

#include <cmath>
#include <random>

#include "homophily/coloring.hpp"
#include "homophily/indices.hpp"
#include "homophily/moments.hpp"
#include "support.hpp"

using namespace homophily;

namespace {

struct Setup {
  Graph g;
  GraphSummary s;
  Profile p;
  MomentSummary ms;
  CovarianceStructure cs;

  Setup(Graph graph, std::vector<std::uint64_t> sizes)
      : g(std::move(graph)), s(summarize(g)), p(std::move(sizes)), ms(moment_summary(s, p)),
        cs(covariance_structure(s, p)) {}

  ZScores z(std::vector<std::uint64_t> counts) const { return z_scores(ObservedOutcome{std::move(counts)}, ms); }
  IndexValue a(std::vector<std::uint64_t> counts) const { return index_a(z(std::move(counts)), cs); }
  IndexValue r(std::vector<std::uint64_t> counts) const { return index_r(ObservedOutcome{std::move(counts)}, ms, cs); }
  IndexValue h(std::vector<std::uint64_t> counts) const { return index_h(z(std::move(counts)), cs); }
  IndexValue j(std::vector<std::uint64_t> counts, const WeightVector& w) const {
    return index_j_theta(ObservedOutcome{std::move(counts)}, ms, cs, w);
  }
};

const doctest::Approx approx(double x) { return doctest::Approx(x).epsilon(1e-12); }

}  // namespace

TEST_CASE("z-scores") {
  const Setup p3(testing::path(3), {2, 1});
  const ZScores z = p3.z({1, 0});
  CHECK(z.z[0] == approx(1 / std::sqrt(2.0)));
  CHECK(z.z[1] == 0.0);
  CHECK(z.active == std::vector<bool>{true, false});
  CHECK(z.active_set == std::vector<std::size_t>{0});

  const ZScores zero = z_scores(ObservedOutcome{{1, 2}}, MomentSummary{{1.0, 2.0}, {0.5, 3.0}});
  CHECK(zero.z == std::vector<double>{0.0, 0.0});

  const Setup k4(testing::complete(4), {2, 2});
  CHECK(k4.z({1, 1}).active_set.empty());
}

TEST_CASE("index a") {
  CHECK(Setup(testing::path(3), {2, 1}).a({1, 0}).value() == approx(1.0 / 3.0));
  CHECK(Setup(testing::path(4), {2, 2}).a({1, 1}).value() == approx(0.6));
  CHECK(Setup(testing::path(4), {2, 2}).a({0, 0}).value() == approx(-0.6));

  const Setup p3(testing::path(3), {2, 1});
  ZScores z = p3.z({1, 0});
  z.z[0] = 0.0;
  CHECK(index_a(z, p3.cs).value() == 0.0);

  const IndexValue k4 = Setup(testing::complete(4), {2, 2}).a({1, 1});
  CHECK_FALSE(k4.defined());
  CHECK(k4.reason() == "all classes degenerate");
}

TEST_CASE("weight presets") {
  const Setup p4(testing::path(4), {2, 2});
  const WeightVector ratio = weight_preset(Preset::Ratio, p4.s, p4.p);
  CHECK(ratio.w[0] == approx(1.0 / 3.0));
  CHECK(ratio.w[1] == approx(1.0 / 3.0));
  CHECK(weight_preset(Preset::Dyadicity, p4.s, p4.p).w == std::vector<double>{0.5, 0.5});
  CHECK(weight_preset(Preset::AvgInternalDegree, p4.s, p4.p, NuChoice::MaxDegree).w ==
        std::vector<double>{0.5, 0.5});
  CHECK(weight_preset(Preset::AvgInternalDegree, p4.s, p4.p, NuChoice::Classes).w ==
        std::vector<double>{0.5, 0.5});
  CHECK(weight_preset(Preset::AvgInternalDegree, p4.s, p4.p, NuChoice::AverageDegree).w[0] ==
        approx(4.0 / 6.0));

  const Setup empty(Graph::from_edges(4, {}), {2, 2});
  CHECK_THROWS_AS(weight_preset(Preset::Ratio, empty.s, empty.p), Undefined);
  CHECK_THROWS_AS(weight_preset(Preset::AvgInternalDegree, empty.s, empty.p), Undefined);
  CHECK_THROWS_AS(weight_preset(Preset::Dyadicity, p4.s, Profile({1, 1, 1, 1})), Undefined);
}

TEST_CASE("index j_theta") {
  const Setup two(testing::matching(2), {2, 2});
  const WeightVector dyad = weight_preset(Preset::Dyadicity, two.s, two.p);
  CHECK(two.j({1, 1}, dyad).value() == approx(2.0 / 3.0));

  // Theta = 0 gives 0.
  const Setup p4(testing::path(4), {2, 2});
  WeightVector w{{1.0, 1.0}, Preset::Custom};
  CHECK(p4.j({1, 0}, w).value() == 0.0);

  CHECK_FALSE(p4.j({1, 1}, WeightVector{{0.0, 0.0}, Preset::Custom}).defined());
  CHECK_FALSE(p4.j({1, 1}, WeightVector{{-1.0, 1.0}, Preset::Custom}).defined());
  CHECK_FALSE(p4.j({1, 1}, WeightVector{{1.0}, Preset::Custom}).defined());

  // Ratio preset is the all-ones vector scaled by 1/m.
  const WeightVector ratio = weight_preset(Preset::Ratio, p4.s, p4.p);
  CHECK(p4.j({1, 1}, ratio).value() == approx(p4.r({1, 1}).value()));
}

TEST_CASE("index r") {
  CHECK(Setup(testing::path(3), {2, 1}).r({1, 0}).value() == approx(1.0 / 3.0));
  CHECK(Setup(testing::matching(2), {2, 2}).r({1, 1}).value() == approx(2.0 / 3.0));
  // K_{1,3} with (2,2): mean is (1/2, 1/2), so (1, 0) is exactly expected.
  CHECK(Setup(testing::star(3), {2, 2}).r({1, 0}).value() == 0.0);
}

TEST_CASE("index h") {
  CHECK(Setup(testing::path(3), {2, 1}).h({1, 0}).value() == 0.0);
  const Setup p4(testing::path(4), {2, 2});
  CHECK(*mahalanobis_sq(p4.z({1, 1}), p4.cs) == approx(1.5));
  CHECK(p4.h({1, 1}).value() == 0.0);

  // z'Gamma^-1 z = 3 t^2 for z = (t, -t); pick t so that it equals 2 s_a = 4.
  const double t = 2.0 / std::sqrt(3.0);
  const ZScores z{{t, -t}, {true, true}, {0, 1}};
  CHECK(index_h(z, p4.cs).value() == approx(0.5));

  const Setup two(testing::matching(2), {2, 2});
  CHECK(two.h({1, 1}).reason() == "correlation matrix on the active set is singular");
}

TEST_CASE("newman modularity") {
  const Graph m2 = testing::matching(2);
  const Coloring toy({0, 0, 1, 1}, 2);
  CHECK(newman_modularity(m2, toy, homophilic_counts(m2, toy)).value() == approx(0.5));

  const Graph single = Graph::from_edges(2, {{0, 1}});
  const Coloring one({0, 0}, 1);
  CHECK(newman_modularity(single, one, homophilic_counts(single, one)).value() == approx(0.0));

  const Graph p3 = testing::path(3);
  const Coloring f({0, 0, 1}, 2);
  CHECK(newman_modularity(p3, f, homophilic_counts(p3, f)).value() == approx(-0.125));

  // Matching line q = 2(k/m - 1/4) at m = 8.
  const Graph m8 = testing::matching(8);
  for (std::uint32_t k = 0; k <= 4; ++k) {
    std::vector<ClassId> c(16);
    for (std::uint32_t e = 0; e < 8; ++e) {
      c[2 * e] = e < k ? 0 : 1;
      c[2 * e + 1] = e < k ? 0 : (e < 2 * k ? 1 : 0);
    }
    const Coloring col(c, 2);
    CHECK(newman_modularity(m8, col, homophilic_counts(m8, col)).value() == approx(2.0 * (k / 8.0 - 0.25)));
  }
}

TEST_CASE("descriptive ratio") {
  CHECK(descriptive_ratio(ObservedOutcome{{2, 1}}, 3).value() == 1.0);
  CHECK(descriptive_ratio(ObservedOutcome{{1, 1}}, 2).value() == 1.0);
  CHECK(descriptive_ratio(ObservedOutcome{{1, 0}}, 2).value() == 0.5);
  CHECK_FALSE(descriptive_ratio(ObservedOutcome{{0, 0}}, 0).defined());
}

TEST_CASE("report on K4 marks z-based indices undefined") {
  const Graph k4 = testing::complete(4);
  const IndexReport rep = build_index_report(k4, summarize(k4), Coloring({0, 0, 1, 1}, 2));
  CHECK(rep.a.reason() == "all classes degenerate");
  CHECK(rep.h.reason() == "all classes degenerate");
  CHECK(rep.observed.counts == std::vector<std::uint64_t>{1, 1});
  CHECK(rep.j_theta.size() == 3);
}

TEST_CASE("properties: range, monotonicity, scale invariance") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint32_t n = 5 + static_cast<std::uint32_t>(rng() % 25);
    const Graph g = testing::random_graph(n, 0.35, rng);
    if (g.edge_count() == 0) continue;
    const std::uint64_t s = 2 + rng() % 3;
    std::vector<std::uint64_t> sizes(s, 1);
    for (std::uint64_t i = s; i < n; ++i) ++sizes[rng() % s];
    const Setup set(g, sizes);
    const Coloring f = random_coloring(set.p, rng());
    const ObservedOutcome o = homophilic_counts(g, f);
    const IndexReport rep = build_index_report(g, set.s, f);

    auto in_range = [](const IndexValue& v, double lo, double hi) {
      return !v.defined() || (v.value() >= lo && v.value() <= hi);
    };
    CHECK(in_range(rep.a, -1, 1));
    CHECK(in_range(rep.r, -1, 1));
    CHECK(in_range(rep.h, 0, 1));
    for (const auto& [preset, v] : rep.j_theta) CHECK(in_range(v, -1, 1));

    // Bumping any count with moments fixed never lowers a score.
    for (std::size_t i = 0; i < s; ++i) {
      ObservedOutcome up = o;
      ++up.counts[i];
      const IndexValue a0 = index_a(z_scores(o, set.ms), set.cs);
      const IndexValue a1 = index_a(z_scores(up, set.ms), set.cs);
      if (a0.defined()) CHECK(a1.value() >= a0.value() - 1e-12);
      const IndexValue r0 = index_r(o, set.ms, set.cs);
      const IndexValue r1 = index_r(up, set.ms, set.cs);
      if (r0.defined()) CHECK(r1.value() >= r0.value() - 1e-12);
      const WeightVector w = weight_preset(Preset::Ratio, set.s, set.p);
      const IndexValue j0 = index_j_theta(o, set.ms, set.cs, w);
      const IndexValue j1 = index_j_theta(up, set.ms, set.cs, w);
      if (j0.defined()) CHECK(j1.value() >= j0.value() - 1e-12);
    }

    WeightVector w{std::vector<double>(s), Preset::Custom};
    for (double& x : w.w) x = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const IndexValue base = index_j_theta(o, set.ms, set.cs, w);
    for (double lambda : {1e-3, 0.5, 7.0, 1e4}) {
      WeightVector scaled = w;
      for (double& x : scaled.w) x *= lambda;
      const IndexValue v = index_j_theta(o, set.ms, set.cs, scaled);
      REQUIRE(v.defined() == base.defined());
      if (base.defined()) CHECK(v.value() == doctest::Approx(base.value()).epsilon(1e-12));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "homophily/coloring.hpp"
#include "homophily/errors.hpp"
#include "homophily/oracle.hpp"
#include "support.hpp"

using namespace homophily;

namespace {

InputError coloring_error(std::string_view text, const Graph& g) {
  try {
    load_coloring(text, g);
  } catch (const InputError& e) {
    return e;
  }
  FAIL("expected an InputError");
  return InputError(InputError::Kind::Malformed, "");
}

}  // namespace

TEST_CASE("profile validation and parsing") {
  CHECK_THROWS_AS(Profile(std::vector<std::uint64_t>{}), InputError);
  CHECK_THROWS_AS(Profile({2, 0}), InputError);
  const Profile p = Profile::parse("2,2,1");
  CHECK(p.classes() == 3);
  CHECK(p.total() == 5);
  CHECK(p.size(2) == 1);
  CHECK_THROWS_AS(Profile::parse("2,,1"), InputError);
  CHECK_THROWS_AS(Profile::parse("2,x"), InputError);
}

TEST_CASE("coloring file") {
  const Graph g = load_edge_list("a b\nb c");
  const Coloring f = load_coloring("a\tred\nb\tred\nc\tblue\n", g);
  CHECK(f.profile() == Profile({2, 1}));
  CHECK(f.class_label(0) == "red");
  CHECK(f.class_label(1) == "blue");
  CHECK(f[*g.index_of("c")] == 1);

  // Class numbering follows first appearance, not vertex order.
  const Coloring h = load_coloring("# labels\nc blue\na red\nb red\n", g);
  CHECK(h.class_label(0) == "blue");
  CHECK(h.profile() == Profile({1, 2}));
}

TEST_CASE("coloring file errors") {
  const Graph g = load_edge_list("a b\nb c");
  const InputError missing = coloring_error("a\tred\nb\tred\n", g);
  CHECK(missing.kind() == InputError::Kind::MissingVertex);
  CHECK(missing.detail() == "c");

  const InputError dup = coloring_error("a\tred\nb\tred\nc\tblue\na\tblue\n", g);
  CHECK(dup.kind() == InputError::Kind::DuplicateVertex);
  CHECK(dup.detail() == "a");
  CHECK(dup.line() == 4);

  CHECK(coloring_error("a\tred\nb\tred\nc\tblue\nzz\tred\n", g).kind() == InputError::Kind::UnknownVertex);
  CHECK(coloring_error("a\n", g).kind() == InputError::Kind::Malformed);
}

TEST_CASE("homophilic counts") {
  const Graph p3 = load_edge_list("a b\nb c");
  CHECK(homophilic_counts(p3, load_coloring("a\tred\nb\tred\nc\tblue\n", p3)).counts ==
        std::vector<std::uint64_t>{1, 0});

  const Graph k4 = testing::complete(4);
  for (const auto& assign : std::vector<std::vector<ClassId>>{{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 0, 0, 1}}) {
    CHECK(homophilic_counts(k4, Coloring(assign, 2)).counts == std::vector<std::uint64_t>{1, 1});
  }

  const Graph two = load_edge_list("a b\nc d");
  const Coloring f = load_coloring("a r\nc r\nb b\nd b\n", two);
  CHECK(homophilic_counts(two, f).counts == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("property: counts match an independent edge scan") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 30);
    const Graph g = testing::random_graph(n, 0.3, rng);
    const std::uint64_t s = 1 + rng() % std::min<std::uint64_t>(n, 5);
    std::vector<std::uint64_t> sizes(s, 1);
    for (std::uint64_t i = s; i < n; ++i) ++sizes[rng() % s];
    const Coloring f = random_coloring(Profile(sizes), rng());
    const ObservedOutcome o = homophilic_counts(g, f);
    std::uint64_t mono = 0;
    for (const Edge& e : g.edges()) mono += f[e.u] == f[e.v];
    CHECK(o.total() == mono);
    for (std::size_t i = 0; i < s; ++i) {
      CHECK(o.counts[i] <= std::min<std::uint64_t>(g.edge_count(), sizes[i] * (sizes[i] - 1) / 2));
    }
  }
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(4, 2) == 12);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(falling_factorial(0, 0) == 1);
  CHECK(falling_factorial(17, 0) == 1);
  CHECK(falling_factorial(30, 30) == BigInt("265252859812191058636308480000000"));
}

TEST_CASE("random coloring: single class and determinism") {
  const Coloring one = random_coloring(Profile({5}), 99);
  for (ClassId c : one.assignment()) CHECK(c == 0);
  CHECK(random_coloring(Profile({3, 4, 2}), 7) == random_coloring(Profile({3, 4, 2}), 7));
  CHECK(random_coloring(Profile({3, 4, 2}), 7).profile() == Profile({3, 4, 2}));
}

TEST_CASE("random coloring: profile (2,1) is uniform") {
  std::map<std::vector<ClassId>, int> freq;
  const int samples = 60000;
  for (int i = 0; i < samples; ++i) {
    const Coloring f = random_coloring(Profile({2, 1}), static_cast<std::uint64_t>(i));
    const auto a = f.assignment();
    ++freq[std::vector<ClassId>(a.begin(), a.end())];
  }
  CHECK(freq.size() == 3);
  for (const auto& [assign, count] : freq) {
    CHECK(std::abs(count / double(samples) - 1.0 / 3.0) <= 0.01);
  }
}

TEST_CASE("property: sampling converges in total variation") {
  for (const auto& sizes : std::vector<std::vector<std::uint64_t>>{{2, 2}, {2, 1, 1}, {3, 2, 1}, {4, 4}}) {
    const Profile p(sizes);
    const double expected = 1.0 / to_double(Rational(multinomial(p)));
    const int k = 40000;
    std::map<std::vector<ClassId>, int> freq;
    for (int i = 0; i < k; ++i) {
      const Coloring f = random_coloring(p, 1000 + static_cast<std::uint64_t>(i));
      const auto a = f.assignment();
      ++freq[std::vector<ClassId>(a.begin(), a.end())];
    }
    const double support = to_double(Rational(multinomial(p)));
    double tv = (support - static_cast<double>(freq.size())) * expected;
    for (const auto& [assign, count] : freq) tv += std::abs(count / double(k) - expected);
    tv /= 2;
    CAPTURE(p.total());
    CHECK(tv <= 4.0 / std::sqrt(double(k)));
  }
}

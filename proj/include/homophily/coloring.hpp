#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homophily/graph.hpp"
#include "homophily/rational.hpp"

namespace homophily {

using ClassId = std::uint32_t;

// Class sizes c_1..c_s; every size >= 1.
class Profile {
 public:
  Profile() = default;
  // Throws InputError(InvalidProfile) on an empty list or a zero size.
  explicit Profile(std::vector<std::uint64_t> sizes);

  // Parses "2,2,1".
  static Profile parse(std::string_view text);

  std::size_t classes() const noexcept { return sizes_.size(); }
  std::uint64_t size(ClassId i) const { return sizes_.at(i); }
  std::span<const std::uint64_t> sizes() const noexcept { return sizes_; }
  std::uint64_t total() const noexcept;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<std::uint64_t> sizes_;
};

// Vertex -> class assignment, surjective onto [s].
class Coloring {
 public:
  // Class labels default to "1".."s" when empty. Throws InputError if some
  // class in [0, s) is unused or an index is out of range.
  Coloring(std::vector<ClassId> class_of, std::size_t classes,
           std::vector<std::string> class_labels = {});

  std::size_t vertex_count() const noexcept { return class_of_.size(); }
  std::size_t classes() const noexcept { return profile_.classes(); }
  ClassId operator[](VertexId v) const { return class_of_[v]; }
  std::span<const ClassId> assignment() const noexcept { return class_of_; }
  const Profile& profile() const noexcept { return profile_; }
  const std::string& class_label(ClassId i) const { return class_labels_.at(i); }
  std::span<const std::string> class_labels() const noexcept { return class_labels_; }

  friend bool operator==(const Coloring& a, const Coloring& b) { return a.class_of_ == b.class_of_; }

 private:
  std::vector<ClassId> class_of_;
  std::vector<std::string> class_labels_;
  Profile profile_;
};

// Homophilic edge counts m_1..m_s.
struct ObservedOutcome {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
};

// Reads "vertex-id<TAB>class-label" lines ('#' comments). Classes are numbered
// by first appearance. Every graph vertex must appear exactly once.
Coloring load_coloring(std::string_view text, const Graph& g);
Coloring load_coloring(std::istream& in, const Graph& g);
Coloring load_coloring_file(const std::string& path, const Graph& g);

ObservedOutcome homophilic_counts(const Graph& g, const Coloring& f);
ObservedOutcome homophilic_counts(std::span<const Edge> edges, std::span<const ClassId> class_of,
                                  std::size_t classes);

// a (a-1) ... (a-q+1); 1 for q == 0.
BigInt falling_factorial(std::uint64_t a, std::uint64_t q);

// Uniform coloring of the given profile: the class-label multiset shuffled by
// a Fisher-Yates pass driven by a seed-deterministic generator.
Coloring random_coloring(const Profile& p, std::uint64_t seed);

}  // namespace homophily

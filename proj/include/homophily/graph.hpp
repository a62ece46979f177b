#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homophily/rational.hpp"

namespace homophily {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u;
  VertexId v;
};

// Immutable simple undirected graph. Copies share the underlying storage.
class Graph {
 public:
  // Validates: endpoints < labels.size(), no self-loops, no duplicate edges.
  // Throws InputError on violation.
  Graph(std::vector<std::string> labels, std::vector<Edge> edges);

  // Vertices labelled "0".."n-1".
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept;
  std::size_t edge_count() const noexcept;
  std::span<const Edge> edges() const noexcept;
  std::span<const std::uint32_t> degrees() const noexcept;
  std::uint32_t degree(VertexId v) const;
  std::uint32_t max_degree() const noexcept;

  const std::string& label(VertexId v) const;
  std::span<const std::string> labels() const noexcept;
  std::optional<VertexId> index_of(std::string_view label) const;

 private:
  struct Data;
  explicit Graph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  friend Graph load_edge_list(std::string_view, bool);

  std::shared_ptr<const Data> data_;
};

// Parses the edge-list format: "u<ws>v" per line, '#' starts a comment,
// "v <id>" declares a (possibly isolated) vertex. Dense indices follow first
// appearance. With dedupe, repeated edges are merged instead of rejected.
Graph load_edge_list(std::string_view text, bool dedupe = false);
Graph load_edge_list(std::istream& in, bool dedupe = false);
Graph load_edge_list_file(const std::string& path, bool dedupe = false);

struct GraphSummary {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t pi3 = 0;              // two-edge paths: sum of C(d_i, 2)
  std::uint64_t disjoint_pairs = 0;   // ordered pairs of vertex-disjoint edges
  std::uint64_t degree_square_sum = 0;
  std::uint32_t max_degree = 0;
  double density = 0.0;
  double delta1 = 0.0;   // mean degree
  double delta2 = 0.0;   // mean squared degree
  double dispersion = 0.0;  // (delta2 - delta1^2) / delta1, 0 when delta1 == 0
};

GraphSummary summarize(const Graph& g);
GraphSummary summarize(std::uint64_t n, std::span<const std::uint32_t> degrees);

// Exact gamma from the edge-pair count; nullopt when n < 4.
std::optional<Rational> gamma_exact(const GraphSummary& s);
std::optional<double> gamma_invariant(const GraphSummary& s);
// Same invariant through the first two degree moments, evaluated in floating
// point. Used as an independent cross-check of gamma_exact.
std::optional<double> gamma_degree_form(const GraphSummary& s);

}  // namespace homophily

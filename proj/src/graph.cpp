#include "homophily/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "homophily/errors.hpp"

namespace homophily {

struct Graph::Data {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> degrees;
  std::uint32_t max_degree = 0;
  // Keys view into `labels`; Data is never moved after construction.
  std::unordered_map<std::string_view, VertexId> index;

  void finish() {
    degrees.assign(labels.size(), 0);
    for (const Edge& e : edges) {
      ++degrees[e.u];
      ++degrees[e.v];
    }
    max_degree = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
    index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = index.emplace(labels[i], static_cast<VertexId>(i));
      if (!inserted) {
        throw InputError(InputError::Kind::DuplicateVertex, labels[i]);
      }
    }
  }
};

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits at most `max_tokens` whitespace-separated tokens; returns the count
// actually present (which may exceed max_tokens).
std::size_t tokenize(std::string_view line, std::string_view* out, std::size_t max_tokens) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (count < max_tokens) out[count] = line.substr(i, j - i);
    ++count;
    i = j;
  }
  return count;
}

}  // namespace

Graph::Graph(std::vector<std::string> labels, std::vector<Edge> edges) {
  auto data = std::make_shared<Data>();
  const std::size_t n = labels.size();
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw InputError(InputError::Kind::Malformed,
                       "edge " + std::to_string(i) + " has an endpoint >= n");
    }
    if (e.u == e.v) {
      throw InputError(InputError::Kind::SelfLoop, "edge " + std::to_string(i));
    }
    if (!seen.insert(edge_key(e.u, e.v)).second) {
      throw InputError(InputError::Kind::DuplicateEdge, "edge " + std::to_string(i));
    }
  }
  data->labels = std::move(labels);
  data->edges = std::move(edges);
  data->finish();
  data_ = std::move(data);
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Graph(std::move(labels), std::move(edges));
}

std::size_t Graph::vertex_count() const noexcept { return data_->labels.size(); }
std::size_t Graph::edge_count() const noexcept { return data_->edges.size(); }
std::span<const Edge> Graph::edges() const noexcept { return data_->edges; }
std::span<const std::uint32_t> Graph::degrees() const noexcept { return data_->degrees; }
std::uint32_t Graph::degree(VertexId v) const { return data_->degrees.at(v); }
std::uint32_t Graph::max_degree() const noexcept { return data_->max_degree; }
const std::string& Graph::label(VertexId v) const { return data_->labels.at(v); }
std::span<const std::string> Graph::labels() const noexcept { return data_->labels; }

std::optional<VertexId> Graph::index_of(std::string_view label) const {
  auto it = data_->index.find(label);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

namespace {

struct KeyedEdge {
  std::uint64_t key;
  std::uint32_t line;
  std::uint32_t position;  // index into the edge vector
};

// Duplicate detection by sorting (key, line) pairs, which stays cache friendly
// on large inputs. Returns the earliest line that repeats an edge, 0 if none;
// with `drop` it also flags every repeat for removal.
std::size_t find_duplicates(std::vector<KeyedEdge>& keys, std::vector<bool>* drop) {
  std::sort(keys.begin(), keys.end(), [](const KeyedEdge& a, const KeyedEdge& b) {
    return a.key != b.key ? a.key < b.key : a.line < b.line;
  });
  std::size_t first = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i].key != keys[i - 1].key) continue;
    if (first == 0 || keys[i].line < first) first = keys[i].line;
    if (drop) (*drop)[keys[i].position] = true;
  }
  return first;
}

}  // namespace

Graph load_edge_list(std::string_view text, bool dedupe) {
  std::unordered_map<std::string_view, VertexId> ids;
  std::vector<std::string_view> order;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> edge_lines;

  // Rough pre-sizing from the line count keeps rehashing off the hot path.
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
  edges.reserve(lines);
  edge_lines.reserve(lines);
  ids.reserve(lines / 2 + 16);

  auto intern = [&](std::string_view id) -> VertexId {
    auto [it, inserted] = ids.try_emplace(id, static_cast<VertexId>(order.size()));
    if (inserted) order.push_back(id);
    return it->second;
  };

  std::vector<bool> drop;
  // Throws for the earliest repeated edge on a line before `line_no`. With
  // dedupe it instead flags repeats in `drop`.
  auto check_duplicates = [&](std::size_t line_no) {
    std::vector<KeyedEdge> keys(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      keys[i] = {edge_key(edges[i].u, edges[i].v), edge_lines[i], static_cast<std::uint32_t>(i)};
    }
    if (dedupe) drop.assign(edges.size(), false);
    const std::size_t dup = find_duplicates(keys, dedupe ? &drop : nullptr);
    if (dedupe || dup == 0 || dup >= line_no) return;
    const auto it = std::find(edge_lines.begin(), edge_lines.end(), static_cast<std::uint32_t>(dup));
    const Edge& e = edges[static_cast<std::size_t>(it - edge_lines.begin())];
    throw InputError(InputError::Kind::DuplicateEdge,
                     std::string(order[e.u]) + " " + std::string(order[e.v]), dup);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string_view tok[3];
    const std::size_t count = tokenize(line, tok, 3);
    if (count == 0) continue;
    if (tok[0] == "v") {
      if (count != 2) {
        check_duplicates(line_no);
        throw InputError(InputError::Kind::Malformed, "vertex declaration needs exactly one id",
                         line_no);
      }
      intern(tok[1]);
      continue;
    }
    if (count < 2) {
      check_duplicates(line_no);
      throw InputError(InputError::Kind::Malformed, "expected two endpoints", line_no);
    }
    const VertexId a = intern(tok[0]);
    const VertexId b = intern(tok[1]);
    if (a == b) {
      check_duplicates(line_no);
      throw InputError(InputError::Kind::SelfLoop, std::string(tok[0]), line_no);
    }
    edges.push_back({a, b});
    edge_lines.push_back(static_cast<std::uint32_t>(line_no));
  }

  check_duplicates(std::numeric_limits<std::size_t>::max());
  if (dedupe) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!drop[i]) edges[kept++] = edges[i];
    }
    edges.resize(kept);
  }

  auto data = std::make_shared<Graph::Data>();
  data->labels.reserve(order.size());
  for (std::string_view id : order) data->labels.emplace_back(id);
  data->edges = std::move(edges);
  data->finish();
  return Graph(std::shared_ptr<const Graph::Data>(std::move(data)));
}

Graph load_edge_list(std::istream& in, bool dedupe) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = std::move(buffer).str();
  return load_edge_list(std::string_view(text), dedupe);
}

Graph load_edge_list_file(const std::string& path, bool dedupe) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::Io, "cannot open " + path);
  return load_edge_list(in, dedupe);
}

GraphSummary summarize(std::uint64_t n, std::span<const std::uint32_t> degrees) {
  GraphSummary s;
  s.n = n;
  std::uint64_t degree_sum = 0;
  for (std::uint32_t d : degrees) {
    const std::uint64_t dd = d;
    degree_sum += dd;
    s.degree_square_sum += dd * dd;
    s.pi3 += dd * (dd - (dd > 0 ? 1 : 0)) / 2;
    s.max_degree = std::max(s.max_degree, d);
  }
  s.m = degree_sum / 2;
  const std::uint64_t pairs = s.m * (s.m - (s.m > 0 ? 1 : 0)) / 2;
  s.disjoint_pairs = 2 * (pairs - s.pi3);
  if (n >= 2) s.density = static_cast<double>(s.m) / (static_cast<double>(n) * (n - 1) / 2.0);
  if (n >= 1) {
    s.delta1 = static_cast<double>(degree_sum) / static_cast<double>(n);
    s.delta2 = static_cast<double>(s.degree_square_sum) / static_cast<double>(n);
  }
  if (degree_sum > 0) {
    // (sum d^2 / n - (2m/n)^2) / (2m/n) = (n * sum d^2 - (2m)^2) / (2m n), in
    // exact integers until the final division.
    const Rational num = Rational(big(n) * big(s.degree_square_sum) - big(degree_sum) * big(degree_sum));
    s.dispersion = to_double(num / Rational(big(degree_sum) * big(n)));
  }
  return s;
}

GraphSummary summarize(const Graph& g) { return summarize(g.vertex_count(), g.degrees()); }

std::optional<Rational> gamma_exact(const GraphSummary& s) {
  if (s.n < 4) return std::nullopt;
  const BigInt n = big(s.n);
  const BigInt n2 = n * (n - 1);
  const BigInt n4 = n2 * (n - 2) * (n - 3);
  const BigInt m = big(s.m);
  const BigInt pairs = m * (m - 1) / 2;
  const Rational first = ratio(2 * (pairs - big(s.pi3)), n4);
  const Rational density = ratio(m, n2);
  return Rational(first - density * density);
}

std::optional<double> gamma_invariant(const GraphSummary& s) {
  auto g = gamma_exact(s);
  if (!g) return std::nullopt;
  return to_double(*g);
}

std::optional<double> gamma_degree_form(const GraphSummary& s) {
  if (s.n < 4) return std::nullopt;
  const long double n = static_cast<long double>(s.n);
  const long double n4 = n * (n - 1) * (n - 2) * (n - 3);
  const long double d1 = 2.0L * static_cast<long double>(s.m) / n;
  const long double d2 = static_cast<long double>(s.degree_square_sum) / n;
  const long double inner = (2 * n - 3) / (2 * n - 2) * d1 * d1 + d1 / 2 - d2;
  return static_cast<double>(n / n4 * inner);
}

}  // namespace homophily

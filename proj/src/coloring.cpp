#include "homophily/coloring.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "homophily/errors.hpp"

namespace homophily {

Profile::Profile(std::vector<std::uint64_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InputError(InputError::Kind::InvalidProfile, "profile has no classes");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] == 0) {
      throw InputError(InputError::Kind::InvalidProfile,
                       "class " + std::to_string(i + 1) + " is empty");
    }
  }
}

Profile Profile::parse(std::string_view text) {
  std::vector<std::uint64_t> sizes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(pos, end - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError(InputError::Kind::InvalidProfile, "bad class size '" + std::string(part) + "'");
    }
    sizes.push_back(value);
    pos = end + 1;
  }
  return Profile(std::move(sizes));
}

std::uint64_t Profile::total() const noexcept {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::uint64_t{0});
}

Coloring::Coloring(std::vector<ClassId> class_of, std::size_t classes,
                   std::vector<std::string> class_labels)
    : class_of_(std::move(class_of)), class_labels_(std::move(class_labels)) {
  std::vector<std::uint64_t> sizes(classes, 0);
  for (ClassId c : class_of_) {
    if (c >= classes) {
      throw InputError(InputError::Kind::InvalidProfile, "class index out of range");
    }
    ++sizes[c];
  }
  if (class_labels_.empty()) {
    for (std::size_t i = 0; i < classes; ++i) class_labels_.push_back(std::to_string(i + 1));
  } else if (class_labels_.size() != classes) {
    throw InputError(InputError::Kind::InvalidProfile, "label count does not match class count");
  }
  profile_ = Profile(std::move(sizes));
}

std::uint64_t ObservedOutcome::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Coloring load_coloring(std::string_view text, const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr ClassId kUnset = ~ClassId{0};
  std::vector<ClassId> class_of(n, kUnset);
  std::vector<std::string> labels;
  std::unordered_map<std::string, ClassId> class_ids;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;

    std::size_t split = line.find('\t');
    if (split == std::string_view::npos) split = line.find(' ');
    if (split == std::string_view::npos) {
      throw InputError(InputError::Kind::Malformed, "expected vertex<TAB>label", line_no);
    }
    std::string_view vertex = line.substr(0, split);
    std::string_view label = line.substr(split + 1);
    while (!label.empty() && (label.front() == '\t' || label.front() == ' ')) label.remove_prefix(1);
    if (vertex.empty() || label.empty()) {
      throw InputError(InputError::Kind::Malformed, "expected vertex<TAB>label", line_no);
    }

    const auto v = g.index_of(vertex);
    if (!v) throw InputError(InputError::Kind::UnknownVertex, std::string(vertex), line_no);
    if (class_of[*v] != kUnset) {
      throw InputError(InputError::Kind::DuplicateVertex, std::string(vertex), line_no);
    }
    auto [it, inserted] = class_ids.try_emplace(std::string(label), static_cast<ClassId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    class_of[*v] = it->second;
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (class_of[v] == kUnset) {
      throw InputError(InputError::Kind::MissingVertex, g.label(static_cast<VertexId>(v)));
    }
  }
  const std::size_t classes = labels.size();
  return Coloring(std::move(class_of), classes, std::move(labels));
}

Coloring load_coloring(std::istream& in, const Graph& g) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = std::move(buffer).str();
  return load_coloring(std::string_view(text), g);
}

Coloring load_coloring_file(const std::string& path, const Graph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::Io, "cannot open " + path);
  return load_coloring(in, g);
}

ObservedOutcome homophilic_counts(std::span<const Edge> edges, std::span<const ClassId> class_of,
                                  std::size_t classes) {
  ObservedOutcome out{std::vector<std::uint64_t>(classes, 0)};
  for (const Edge& e : edges) {
    const ClassId a = class_of[e.u];
    if (a == class_of[e.v]) ++out.counts[a];
  }
  return out;
}

ObservedOutcome homophilic_counts(const Graph& g, const Coloring& f) {
  return homophilic_counts(g.edges(), f.assignment(), f.classes());
}

BigInt falling_factorial(std::uint64_t a, std::uint64_t q) {
  if (q > a) return BigInt(0);
  BigInt out(1);
  for (std::uint64_t i = 0; i < q; ++i) out *= big(a - i);
  return out;
}

namespace {

// Unbiased draw from [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Coloring random_coloring(const Profile& p, std::uint64_t seed) {
  std::vector<ClassId> labels;
  labels.reserve(p.total());
  for (std::size_t i = 0; i < p.classes(); ++i) labels.insert(labels.end(), p.size(i), static_cast<ClassId>(i));
  std::mt19937_64 rng(seed);
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[bounded(rng, i)]);
  }
  return Coloring(std::move(labels), p.classes());
}

}  // namespace homophily

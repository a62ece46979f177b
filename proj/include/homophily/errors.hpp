#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace homophily {

// Rejected input: edge lists, coloring files, profiles. The CLI maps these to
// exit code 2.
class InputError : public std::runtime_error {
 public:
  enum class Kind {
    Malformed,
    SelfLoop,
    DuplicateEdge,
    MissingVertex,
    UnknownVertex,
    DuplicateVertex,
    InvalidProfile,
    Io,
  };

  InputError(Kind kind, std::string detail, std::size_t line = 0)
      : std::runtime_error(format(kind, detail, line)),
        kind_(kind),
        detail_(std::move(detail)),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  // 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

  static const char* kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::Malformed: return "Malformed";
      case Kind::SelfLoop: return "SelfLoop";
      case Kind::DuplicateEdge: return "DuplicateEdge";
      case Kind::MissingVertex: return "MissingVertex";
      case Kind::UnknownVertex: return "UnknownVertex";
      case Kind::DuplicateVertex: return "DuplicateVertex";
      case Kind::InvalidProfile: return "InvalidProfile";
      case Kind::Io: return "Io";
    }
    return "Unknown";
  }

 private:
  static std::string format(Kind kind, const std::string& detail, std::size_t line) {
    std::string out = kind_name(kind);
    if (line != 0) out += "(line " + std::to_string(line) + ")";
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  Kind kind_;
  std::string detail_;
  std::size_t line_;
};

// Work refused because it would exceed a configured budget (enumeration
// limit). Exit code 3 in the CLI.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::string what, std::string count)
      : std::runtime_error(what + " (count " + count + ")"), count_(std::move(count)) {}
  const std::string& count() const noexcept { return count_; }

 private:
  std::string count_;
};

// A quantity that has no value for the given input, e.g. a weight preset on
// an edgeless graph.
class Undefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Scalar result that may be undefined for degenerate inputs.
class IndexValue {
 public:
  static IndexValue of(double v) { return IndexValue(v, {}); }
  static IndexValue undefined(std::string reason) { return IndexValue(std::nullopt, std::move(reason)); }

  bool defined() const noexcept { return value_.has_value(); }
  double value() const { return value_.value(); }
  double value_or(double fallback) const noexcept { return value_.value_or(fallback); }
  const std::string& reason() const noexcept { return reason_; }

 private:
  IndexValue(std::optional<double> v, std::string reason)
      : value_(v), reason_(std::move(reason)) {}

  std::optional<double> value_;
  std::string reason_;
};

}  // namespace homophily

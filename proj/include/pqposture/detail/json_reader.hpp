#pragma once

// Strict reader over nlohmann::json used by the registry and scenario loaders.
// Every accessor knows its JSON path so errors point at the offending field,
// and finish() rejects keys nobody asked for.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pqposture/status.hpp"

namespace pqposture {

enum class InputErrorKind {
  Syntax,
  Schema,
  UnknownAlgorithm,
  Ordering,
  DanglingReference,
  Invariant,
  Duplicate,
};

constexpr std::string_view to_string(InputErrorKind kind) noexcept {
  switch (kind) {
    case InputErrorKind::Syntax:            return "syntax error";
    case InputErrorKind::Schema:            return "schema violation";
    case InputErrorKind::UnknownAlgorithm:  return "unknown algorithm";
    case InputErrorKind::Ordering:          return "ordering violation";
    case InputErrorKind::DanglingReference: return "dangling reference";
    case InputErrorKind::Invariant:         return "invariant violation";
    case InputErrorKind::Duplicate:         return "duplicate entry";
  }
  return "error";
}

// Error in a registry or scenario document, located by JSON path ("$.layers[1].osi").
class InputError : public Error {
 public:
  InputError(InputErrorKind kind, std::string path, const std::string& detail)
      : Error(std::string(to_string(kind)) + " at " + path + ": " + detail),
        kind_(kind),
        path_(std::move(path)) {}

  InputErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

 private:
  InputErrorKind kind_;
  std::string path_;
};

namespace detail {

using json = nlohmann::json;

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(InputErrorKind::Syntax, "byte " + std::to_string(e.byte), e.what());
  }
}

inline std::string_view type_name(const json& j) {
  return j.type_name();
}

class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object())
      throw InputError(InputErrorKind::Schema, path_,
                       "expected object, found " + std::string(type_name(value_)));
  }

  const std::string& path() const noexcept { return path_; }
  std::string child_path(std::string_view key) const { return path_ + "." + std::string(key); }

  bool has(std::string_view key) const { return value_.contains(key); }

  const json& required(std::string_view key) {
    seen_.emplace(key);
    auto it = value_.find(key);
    if (it == value_.end())
      throw InputError(InputErrorKind::Schema, child_path(key), "missing required field");
    return *it;
  }

  const json* optional(std::string_view key) {
    seen_.emplace(key);
    auto it = value_.find(key);
    if (it == value_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string string(std::string_view key) { return as_string(required(key), child_path(key)); }

  std::optional<std::string> optional_string(std::string_view key) {
    const json* v = optional(key);
    if (!v) return std::nullopt;
    return as_string(*v, child_path(key));
  }

  std::int64_t integer(std::string_view key) { return as_integer(required(key), child_path(key)); }

  std::optional<std::int64_t> optional_integer(std::string_view key) {
    const json* v = optional(key);
    if (!v) return std::nullopt;
    return as_integer(*v, child_path(key));
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_boolean())
      throw InputError(InputErrorKind::Schema, child_path(key), "expected boolean");
    return v->get<bool>();
  }

  std::vector<std::string> strings(std::string_view key) {
    const json* v = optional(key);
    if (!v) return {};
    return as_strings(*v, child_path(key));
  }

  // Rejects any key that was never read.
  void finish() const {
    for (const auto& [key, _] : value_.items())
      if (!seen_.contains(key))
        throw InputError(InputErrorKind::Schema, child_path(key), "unknown field");
  }

  static std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw InputError(InputErrorKind::Schema, path, "expected string");
    return v.get<std::string>();
  }

  static std::int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw InputError(InputErrorKind::Schema, path, "expected integer");
    return v.get<std::int64_t>();
  }

  static const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw InputError(InputErrorKind::Schema, path, "expected array");
    return v;
  }

  static std::vector<std::string> as_strings(const json& v, const std::string& path) {
    as_array(v, path);
    std::vector<std::string> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

inline std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

inline Level read_level(const json& v, const std::string& path) {
  auto text = ObjectReader::as_string(v, path);
  if (auto l = parse_level(text)) return *l;
  throw InputError(InputErrorKind::Schema, path, "unknown level '" + text + "'");
}

inline Mechanism read_mechanism(const json& v, const std::string& path) {
  auto text = ObjectReader::as_string(v, path);
  if (auto m = parse_mechanism(text)) return *m;
  throw InputError(InputErrorKind::Schema, path, "unknown mechanism '" + text + "'");
}

// Reads {"level": ..., "mechanism": ...} fields from an object.
inline Status read_status_fields(ObjectReader& obj) {
  Level level = read_level(obj.required("level"), obj.child_path("level"));
  Mechanism m = read_mechanism(obj.required("mechanism"), obj.child_path("mechanism"));
  if (!is_valid(level, m))
    throw InputError(InputErrorKind::Invariant, obj.path(),
                     "level " + std::string(to_string(level)) + " cannot carry mechanism " +
                         std::string(to_string(m)));
  return Status::make(level, m);
}

}  // namespace detail
}  // namespace pqposture

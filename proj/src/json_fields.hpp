#pragma once

// Field accessors shared by the JSON readers. Every failure names the field.

#include <string>

#include "json.hpp"
#include "sgs/game.hpp"

namespace sgs::detail {

inline std::string field_path(const std::string& parent, const char* key) {
  return parent.empty() ? std::string(key) : parent + "." + key;
}

template <class Json>
const Json& require(const Json& obj, const char* key, const std::string& parent = {}) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(field_path(parent, key) + ": missing field");
  return *it;
}

template <class Json>
double require_real(const Json& obj, const char* key, const std::string& parent = {}) {
  const auto& v = require(obj, key, parent);
  if (!v.is_number()) throw ValidationError(field_path(parent, key) + ": expected number");
  return v.template get<double>();
}

template <class Json>
long long require_int(const Json& obj, const char* key, const std::string& parent = {}) {
  const auto& v = require(obj, key, parent);
  if (!v.is_number_integer()) throw ValidationError(field_path(parent, key) + ": expected integer");
  return v.template get<long long>();
}

}  // namespace sgs::detail

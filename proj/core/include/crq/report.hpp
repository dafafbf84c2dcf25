#pragma once

#include <map>
#include <string>
#include <vector>

#include "crq/rational.hpp"

namespace crq {

/// One line-delimited machine-readable record: a flat ordered field map,
/// rationals serialized as "p/q". Nesting is encoded in field names
/// ("witness.stakes", "interval.lower").
struct Record {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& set(const std::string& key, const std::string& value);
  Record& set(const std::string& key, const Rat& value);
  Record& set(const std::string& key, bool value);
  Record& set(const std::string& key, const std::vector<Rat>& values);

  /// JSON object on one line; keys in insertion order.
  std::string to_json_line() const;
};

std::string json_escape(const std::string& s);

}  // namespace crq

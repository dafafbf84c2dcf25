#include "crq/report.hpp"

namespace crq {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

Record& Record::set(const std::string& key, const std::string& value) {
  fields.emplace_back(key, "\"" + json_escape(value) + "\"");
  return *this;
}

Record& Record::set(const std::string& key, const Rat& value) {
  fields.emplace_back(key, "\"" + to_string(value) + "\"");
  return *this;
}

Record& Record::set(const std::string& key, bool value) {
  fields.emplace_back(key, value ? "true" : "false");
  return *this;
}

Record& Record::set(const std::string& key, const std::vector<Rat>& values) {
  std::string arr = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) arr += ",";
    arr += "\"" + to_string(values[i]) + "\"";
  }
  arr += "]";
  fields.emplace_back(key, arr);
  return *this;
}

std::string Record::to_json_line() const {
  std::string out = "{\"command\":\"" + json_escape(command) + "\"";
  for (const auto& [k, v] : fields) out += ",\"" + json_escape(k) + "\":" + v;
  out += "}";
  return out;
}

}  // namespace crq

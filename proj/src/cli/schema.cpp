#include "nonadd/cli/schema.hpp"

#include <regex>
#include <stdexcept>

#include "schema_text.hpp"

namespace nonadd::cli {

using nlohmann::json;

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "number") return v.is_number();
  if (t == "integer") {
    if (v.is_number_integer()) return true;
    if (!v.is_number_float()) return false;
    const double d = v.get<double>();
    return d == static_cast<double>(static_cast<long long>(d));
  }
  throw std::logic_error("schema uses unknown type '" + t + "'");
}

std::string describe(const json& v) {
  std::string s = v.dump();
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

}  // namespace

SchemaValidator::SchemaValidator(json schema) : root_(std::move(schema)) {}

const json& SchemaValidator::resolve(const json& schema) const {
  const json* s = &schema;
  for (int hops = 0; s->is_object() && s->contains("$ref"); ++hops) {
    if (hops > 32) throw std::logic_error("schema $ref cycle");
    const std::string ref = (*s)["$ref"].get<std::string>();
    if (ref.rfind("#", 0) != 0) throw std::logic_error("only local $ref is supported: " + ref);
    s = &root_.at(json::json_pointer(ref.substr(1)));
  }
  return *s;
}

std::vector<SchemaError> SchemaValidator::validate(const json& instance) const {
  std::vector<SchemaError> out;
  check(root_, instance, "", out, 0);
  return out;
}

void SchemaValidator::check(const json& raw, const json& v, const std::string& path, std::vector<SchemaError>& out,
                            int depth) const {
  if (depth > 64) throw std::logic_error("schema nesting too deep");
  const json& s = resolve(raw);
  if (s.is_boolean()) {
    if (!s.get<bool>()) out.push_back({path, "no value is allowed here"});
    return;
  }
  const std::string where = path.empty() ? "/" : path;

  if (auto it = s.find("type"); it != s.end()) {
    bool ok = false;
    if (it->is_array()) {
      for (const auto& t : *it) ok = ok || has_type(v, t.get<std::string>());
    } else {
      ok = has_type(v, it->get<std::string>());
    }
    if (!ok) {
      out.push_back({path, "expected " + it->dump() + ", got " + describe(v)});
      return;
    }
  }
  if (auto it = s.find("const"); it != s.end() && *it != v) {
    out.push_back({path, "expected " + it->dump() + ", got " + describe(v)});
  }
  if (auto it = s.find("enum"); it != s.end()) {
    bool found = false;
    for (const auto& e : *it) found = found || e == v;
    if (!found) out.push_back({path, "value " + describe(v) + " is not one of " + it->dump()});
  }
  if (v.is_number()) {
    const double d = v.get<double>();
    if (auto it = s.find("minimum"); it != s.end() && d < it->get<double>()) {
      out.push_back({path, "value " + describe(v) + " is below the minimum " + it->dump()});
    }
    if (auto it = s.find("exclusiveMinimum"); it != s.end() && d <= it->get<double>()) {
      out.push_back({path, "value " + describe(v) + " must exceed " + it->dump()});
    }
    if (auto it = s.find("maximum"); it != s.end() && d > it->get<double>()) {
      out.push_back({path, "value " + describe(v) + " is above the maximum " + it->dump()});
    }
  }
  if (v.is_string()) {
    const auto& str = v.get_ref<const std::string&>();
    if (auto it = s.find("minLength"); it != s.end() && str.size() < it->get<std::size_t>()) {
      out.push_back({path, "string is shorter than " + it->dump()});
    }
    if (auto it = s.find("pattern"); it != s.end()) {
      if (!std::regex_search(str, std::regex(it->get<std::string>()))) {
        out.push_back({path, "string " + describe(v) + " does not match " + it->dump()});
      }
    }
  }
  if (v.is_array()) {
    if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>()) {
      out.push_back({path, "array needs at least " + it->dump() + " items"});
    }
    if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>()) {
      out.push_back({path, "array allows at most " + it->dump() + " items"});
    }
    if (auto it = s.find("items"); it != s.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) check(*it, v[i], path + "/" + std::to_string(i), out, depth + 1);
    }
  }
  if (v.is_object()) {
    const json* props = s.contains("properties") ? &s["properties"] : nullptr;
    if (auto it = s.find("required"); it != s.end()) {
      for (const auto& k : *it) {
        if (!v.contains(k.get<std::string>())) {
          out.push_back({path + "/" + escape_token(k.get<std::string>()), "required field is missing"});
        }
      }
    }
    for (const auto& [key, value] : v.items()) {
      const std::string sub = path + "/" + escape_token(key);
      bool matched = false;
      if (props && props->contains(key)) {
        check((*props)[key], value, sub, out, depth + 1);
        matched = true;
      }
      if (auto pp = s.find("patternProperties"); pp != s.end()) {
        for (const auto& [pattern, sub_schema] : pp->items()) {
          if (std::regex_search(key, std::regex(pattern))) {
            check(sub_schema, value, sub, out, depth + 1);
            matched = true;
          }
        }
      }
      if (matched) continue;
      if (auto ap = s.find("additionalProperties"); ap != s.end()) {
        if (ap->is_boolean()) {
          if (!ap->get<bool>()) out.push_back({sub, "unknown field"});
        } else {
          check(*ap, value, sub, out, depth + 1);
        }
      }
    }
  }
  for (const char* kw : {"oneOf", "anyOf"}) {
    auto it = s.find(kw);
    if (it == s.end()) continue;
    std::size_t matches = 0;
    std::vector<SchemaError> best;
    bool have_best = false;
    for (const auto& branch : *it) {
      std::vector<SchemaError> errs;
      check(branch, v, path, errs, depth + 1);
      if (errs.empty()) {
        ++matches;
        continue;
      }
      // Prefer the branch whose first error sits deepest: it matched the most structure.
      if (!have_best || errs.front().path.size() > best.front().path.size()) {
        best = std::move(errs);
        have_best = true;
      }
    }
    const bool one = std::string(kw) == "oneOf";
    if (matches == 0) {
      if (have_best && best.front().path.size() > path.size()) {
        out.insert(out.end(), best.begin(), best.end());
      } else {
        out.push_back({path, "value " + describe(v) + " matches none of the allowed forms at " + where});
      }
    } else if (one && matches > 1) {
      out.push_back({path, "value matches more than one allowed form"});
    }
  }
}

const SchemaValidator& scenario_schema() {
  static const SchemaValidator v(json::parse(kScenarioSchema));
  return v;
}

const SchemaValidator& report_schema() {
  static const SchemaValidator v(json::parse(kReportSchema));
  return v;
}

}  // namespace nonadd::cli

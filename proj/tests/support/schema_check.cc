// Copyright 2026 The hdfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schema_check.h"

#include <fstream>
#include <stdexcept>

namespace hdfuzz::testing {

using nlohmann::json;

namespace {

bool has_type(const json &doc, const std::string &type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  if (type == "integer") return doc.is_number_integer();
  if (type == "number") return doc.is_number();
  throw std::runtime_error("unsupported schema type " + type);
}

void check(const json &schema, const json &doc, const std::string &path,
           std::vector<std::string> &out) {
  if (schema.contains("type")) {
    const json &t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(doc, t.get<std::string>());
    } else {
      for (const json &alt : t) ok = ok || has_type(doc, alt.get<std::string>());
    }
    if (!ok) {
      out.push_back(path + ": expected type " + t.dump() + ", got " + doc.type_name());
      return;
    }
  }
  if (schema.contains("const") && doc != schema["const"]) {
    out.push_back(path + ": expected " + schema["const"].dump());
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const json &v : schema["enum"]) found = found || v == doc;
    if (!found) out.push_back(path + ": " + doc.dump() + " not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const json &k : schema["required"]) {
        if (!doc.contains(k.get<std::string>())) {
          out.push_back(path + ": missing '" + k.get<std::string>() + "'");
        }
      }
    }
    const json props = schema.value("properties", json::object());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string sub = path + "." + it.key();
      if (props.contains(it.key())) {
        check(props[it.key()], it.value(), sub, out);
      } else if (schema.contains("additionalProperties")) {
        const json &extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) out.push_back(sub + ": unexpected property");
        } else {
          check(extra, it.value(), sub, out);
        }
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (size_t i = 0; i < doc.size(); ++i) {
      check(schema["items"], doc[i], path + "[" + std::to_string(i) + "]", out);
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const json &schema, const json &doc) {
  std::vector<std::string> out;
  check(schema, doc, "$", out);
  return out;
}

json load_schema(const std::string &file_name) {
  const std::string path = std::string(HDFUZZ_SCHEMA_DIR) + "/" + file_name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema " + path);
  return json::parse(in);
}

}  // namespace hdfuzz::testing

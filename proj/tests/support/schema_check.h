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

// Validator for the JSON Schema subset used by docs/schemas: type (string or
// list), required, properties, additionalProperties (bool or schema), items,
// enum and const.

#ifndef HDFUZZ_TESTS_SUPPORT_SCHEMA_CHECK_H_
#define HDFUZZ_TESTS_SUPPORT_SCHEMA_CHECK_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace hdfuzz::testing {

// Violations as "path: message"; empty when the document conforms.
std::vector<std::string> schema_violations(const nlohmann::json &schema,
                                           const nlohmann::json &doc);

nlohmann::json load_schema(const std::string &file_name);

}  // namespace hdfuzz::testing

#endif  // HDFUZZ_TESTS_SUPPORT_SCHEMA_CHECK_H_

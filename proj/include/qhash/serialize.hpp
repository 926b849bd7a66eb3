// Copyright 2026 The qhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encodings of the library's values and reports. Objects use sorted
// keys, so equal values always produce byte-identical documents.

#include <string>

#include "json.hpp"
#include "qhash/expander.hpp"
#include "qhash/extractor.hpp"
#include "qhash/group.hpp"
#include "qhash/mac.hpp"
#include "qhash/qhf.hpp"
#include "qhash/resistance.hpp"
#include "qhash/state.hpp"

namespace qhash {

using Json = nlohmann::json;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

/// Decimal coordinate tuple, e.g. [1, 2].
Json to_json(const GroupElement& e);
GroupElement element_from_json(const GroupSpec& g, const Json& j);

/// Array of [re, im] pairs.
Json to_json(const HashState& s);
HashState state_from_json(const Json& j);

Json to_json(const ExtractorSpec& e);
ExtractorSpec extractor_from_json(const Json& j);

Json to_json(const WalkRecord& w);
WalkRecord walk_from_json(const Json& j);

Json to_json(const QHFInstance& inst);
QHFInstance instance_from_json(const Json& j);

Json to_json(const InstanceConfig& c);
/// Accepts either a config object or a serialized instance (its build fields).
InstanceConfig config_from_json(const Json& j);
InstanceConfig config_of(const QHFInstance& inst);

Json to_json(const PlannerReport& r);
Json to_json(const ResistanceReport& r);
Json to_json(const ComparisonRow& r);
Json to_json(const SwapVerifyResult& r);
Json to_json(const SweepReport& r);
Json to_json(const ExtractorQuality& q);
Json to_json(const ForgeReport& r);

Json to_json(const MacScheme& s);
MacScheme scheme_from_json(const Json& j);

}  // namespace qhash

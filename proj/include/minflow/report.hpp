#pragma once

// JSON views of the library results. Objects use sorted keys so that equal
// inputs always serialize to identical bytes.

#include <string>

#include "json.hpp"
#include "minflow/codes.hpp"
#include "minflow/factors.hpp"
#include "minflow/joins.hpp"
#include "minflow/pairs.hpp"

namespace minflow {

using Json = nlohmann::json;

Json to_json(const SlidingBlockCode& code);
Json to_json(const GroupShape& shape);
Json to_json(const EnumerationResult& result);
Json to_json(const PairClassification& c);
Json to_json(const FiberCensus& census);
Json to_json(const DistalCertificate& cert);
Json to_json(const JointLanguage& w);
Json to_json(const DichotomyVerdict& v);
Json to_json(const SrReport& report);
Json to_json(const CoalescenceReport& report);
Json to_json(const OdometerWitness& w);
// Frequencies as the exact ratio "count/steps" next to a 6-decimal float string.
Json to_json(const FrequencyTable& table);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace minflow

#include "minflow/report.hpp"

#include <cstdio>

namespace minflow {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const SlidingBlockCode& code) {
  Json blocks = Json::array();
  for (const auto& [block, out] : code.table()) blocks.push_back({block, std::string(1, out)});
  Json j{{"radius", code.radius()}, {"blocks", blocks}};
  j["normal_form"] = code.normal_form() ? Json(to_string(*code.normal_form())) : Json(nullptr);
  return j;
}

Json to_json(const GroupShape& shape) {
  Json forms = Json::array();
  for (const auto& f : shape.forms) forms.push_back(to_string(f));
  return {{"shape", shape.shape}, {"normal_forms", forms}, {"unrecognized", shape.unrecognized}};
}

Json to_json(const EnumerationResult& result) {
  Json codes = Json::array();
  for (const auto& c : result.codes) codes.push_back(to_json(c));
  return {{"codes", codes},
          {"count", result.codes.size()},
          {"nodes", result.nodes},
          {"check_len", result.check_len},
          {"group", to_json(classify_aut_group(result.codes))}};
}

Json to_json(const PairClassification& c) {
  return {{"verdict", to_string(c.verdict)},
          {"H", c.horizon},
          {"L", c.resolution},
          {"witness_n", optional_json(c.witness_n)},
          {"separation", optional_json(c.separation)},
          {"forward_from", optional_json(c.forward_from)},
          {"backward_to", optional_json(c.backward_to)}};
}

Json to_json(const FiberCensus& census) {
  return {{"address", census.address.to_string()},
          {"level", census.level},
          {"resolution", census.resolution},
          {"windows", census.windows()},
          {"cardinality", census.cardinality},
          {"quotient_cardinality", census.quotient_cardinality},
          {"per_level", census.per_level},
          {"stabilized", census.stabilized}};
}

Json to_json(const DistalCertificate& cert) {
  Json cofiber = Json::array();
  for (const auto& c : cert.cofiber) {
    Json e{{"window", c.window}, {"point", c.point}, {"self", c.is_self}};
    e["classification"] = c.classification ? to_json(*c.classification) : Json(nullptr);
    cofiber.push_back(e);
  }
  return {{"granted", cert.granted},
          {"H", cert.horizon},
          {"L", cert.resolution},
          {"levels", cert.levels},
          {"address", cert.address.to_string()},
          {"census_cardinality", cert.census_cardinality},
          {"cofiber", cofiber},
          {"reason", cert.reason}};
}

Json to_json(const JointLanguage& w) {
  Json outputs = Json::object();
  for (const auto& [first, outs] : w.output_map) outputs[first] = std::string(outs.begin(), outs.end());
  return {{"L", w.resolution},
          {"T", w.steps},
          {"pairs", w.pairs.size()},
          {"single_valued", w.single_valued()},
          {"output_map", outputs}};
}

Json to_json(const DichotomyVerdict& v) {
  Json j{{"case", to_string(v.kind)},
         {"L", v.resolution},
         {"T", v.steps},
         {"fitted_radius", optional_json(v.fitted_radius)},
         {"flipped_probe", {v.flipped_probe.first, v.flipped_probe.second}},
         {"note", v.note}};
  j["code"] = v.code ? to_json(*v.code) : Json(nullptr);
  j["membership_witness"] = v.membership_witness
                                ? Json{v.membership_witness->first, v.membership_witness->second}
                                : Json(nullptr);
  return j;
}

Json to_json(const SrReport& report) {
  auto records = [](const std::vector<SrRecord>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back({{"point", r.point}, {"dichotomy", to_json(r.verdict)}});
    return a;
  };
  return {{"system", report.system},
          {"group", to_json(report.group)},
          {"realized_codes", report.realized_codes},
          {"code_radius", report.code_radius},
          {"factor", report.factor},
          {"almost_automorphic", report.almost_automorphic},
          {"records", records(report.records)},
          {"translated", records(report.translated)},
          {"verdict", report.verdict},
          {"summary", report.summary}};
}

Json to_json(const CoalescenceReport& report) {
  Json flagged = Json::array();
  for (const auto& c : report.flagged) flagged.push_back(to_json(c));
  return {{"system", report.system},
          {"radius", report.radius},
          {"check_len", report.check_len},
          {"codes", report.codes},
          {"flagged", flagged},
          {"coalescent", report.flagged.empty()}};
}

Json to_json(const OdometerWitness& w) {
  return {{"level", w.level},
          {"translations", w.translations},
          {"commuting", w.commuting},
          {"exhaustive", w.exhaustive},
          {"rejected_samples", w.rejected_samples},
          {"ok", w.ok}};
}

Json to_json(const FrequencyTable& table) {
  Json words = Json::array();
  char buf[32];
  for (const auto& [w, c] : table.counts) {
    std::snprintf(buf, sizeof buf, "%.6f",
                  table.steps ? static_cast<double>(c) / static_cast<double>(table.steps) : 0.0);
    words.push_back({{"word", w},
                     {"count", c},
                     {"ratio", std::to_string(c) + "/" + std::to_string(table.steps)},
                     {"frequency", buf}});
  }
  return {{"length", table.length}, {"steps", table.steps}, {"words", words}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace minflow

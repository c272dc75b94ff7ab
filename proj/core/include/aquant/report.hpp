#pragma once

#include "aquant/cochain.hpp"
#include "aquant/groupoid.hpp"
#include "aquant/monodromy.hpp"
#include "aquant/prequant.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace aquant {

// JSON forms of the report objects. Objects serialize with sorted keys, so
// equal reports produce byte-identical text.
void to_json(nlohmann::json& j, const Tolerances& t);
void to_json(nlohmann::json& j, const Resolution& r);
void to_json(nlohmann::json& j, const ChartPoint& p);
void to_json(nlohmann::json& j, const PeriodGroup& p);
void to_json(nlohmann::json& j, const PeriodSample& s);
void to_json(nlohmann::json& j, const IntegrabilityReport& r);
void to_json(nlohmann::json& j, const PrequantReport& r);
void to_json(nlohmann::json& j, const CocycleReport& r);
void to_json(nlohmann::json& j, const MonodromyResult& r);
void to_json(nlohmann::json& j, const HomotopyReport& r);
void to_json(nlohmann::json& j, const ACEquivalence& r);
void to_json(nlohmann::json& j, const BundleEquivalence& r);
void to_json(nlohmann::json& j, const HolonomyResult& r);
void to_json(nlohmann::json& j, const ChernResult& r);
void to_json(nlohmann::json& j, const MultiplicativityReport& r);

// Tolerances parsed from JSON; unknown keys and non-positive values are rejected.
Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base = {});
// Sets one tolerance by name, as in "r=1e-6".
void set_tolerance(Tolerances& t, const std::string& key, double value);

// Stable text form: two-space indentation and a trailing newline.
std::string dump_report(const nlohmann::json& j);

}  // namespace aquant

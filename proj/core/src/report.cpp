#include "aquant/report.hpp"

namespace aquant {

using nlohmann::json;

void to_json(json& j, const Tolerances& t) {
    j = json{{"path", t.path}, {"ode", t.ode},         {"hom", t.hom},         {"r", t.r},
             {"gen", t.gen},   {"integer", t.integer}, {"basic", t.basic},     {"euclid_cap", t.euclid_cap}};
}

void to_json(json& j, const Resolution& r) { j = json{{"n_t", r.n_t}, {"n_eps", r.n_eps}}; }

void to_json(json& j, const ChartPoint& p) {
    j = json{{"chart", p.chart}, {"x", std::vector<double>(p.x.data(), p.x.data() + p.x.size())}};
}

void to_json(json& j, const PeriodGroup& p) {
    j = json{{"generators", p.generators},
             {"classification", to_string(p.classification)},
             {"generator", p.generator},
             {"iterations", p.iterations},
             {"termination", to_string(p.end)},
             {"tol_gen", p.tol_gen},
             {"cap", p.cap},
             {"description", p.describe()}};
}

void to_json(json& j, const PeriodSample& s) {
    j = json{{"point", s.point},
             {"integrals", s.integrals},
             {"classification", to_string(s.group.classification)},
             {"period_group", s.group},
             {"warnings", s.warnings}};
}

void to_json(json& j, const IntegrabilityReport& r) {
    j = json{{"verdict", to_string(r.verdict)},
             {"samples", r.samples},
             {"max_neighbor_jump", r.max_neighbor_jump},
             {"continuity_tol", r.continuity_tol},
             {"notes", r.notes}};
}

void to_json(json& j, const PrequantReport& r) {
    j = json{{"verdict", to_string(r.verdict)},
             {"samples", r.samples},
             {"k", r.k},
             {"max_integer_defect", r.max_integer_defect},
             {"tol_integer", r.tol_integer},
             {"notes", r.notes}};
}

void to_json(json& j, const CocycleReport& r) {
    j = json{{"verdict", r.verdict}, {"residual", r.residual}, {"tolerance", r.tolerance}};
}

void to_json(json& j, const MonodromyResult& r) {
    j = json{{"value", r.value}, {"endpoint_defect", r.endpoint_defect}, {"error_estimate", r.error_estimate}};
}

void to_json(json& j, const HomotopyReport& r) {
    j = json{{"verdict", r.verdict},
             {"endpoint_defect", r.endpoint_defect},
             {"threshold", r.threshold},
             {"row_residual", r.row_residual},
             {"base_endpoint_drift", r.base_endpoint_drift},
             {"error_estimate", r.error_estimate}};
}

void to_json(json& j, const ACEquivalence& r) {
    j = json{{"verdict", r.verdict},
             {"r_difference", r.r_difference},
             {"integral", r.integral},
             {"defect", r.defect},
             {"homotopy", r.homotopy}};
}

void to_json(json& j, const BundleEquivalence& r) {
    j = json{{"verdict", r.verdict},     {"r_difference", r.r_difference}, {"integral", r.integral},
             {"defect", r.defect},       {"strategy", r.strategy},         {"warnings", r.warnings}};
}

void to_json(json& j, const HolonomyResult& r) {
    j = json{{"raw", r.raw}, {"value", r.value}, {"warnings", r.warnings}};
}

void to_json(json& j, const ChernResult& r) { j = json{{"integral", r.integral}, {"number", r.number}}; }

void to_json(json& j, const MultiplicativityReport& r) { j = json{{"residual", r.residual}, {"samples", r.samples}}; }

void set_tolerance(Tolerances& t, const std::string& key, double value) {
    if (key == "euclid_cap") {
        if (value < 1 || value != static_cast<int>(value)) throw InvalidInput("euclid_cap must be a positive integer");
        t.euclid_cap = static_cast<int>(value);
        return;
    }
    if (!(value > 0)) throw InvalidInput("tolerance " + key + " must be positive");
    if (key == "path") t.path = value;
    else if (key == "ode") t.ode = value;
    else if (key == "hom") t.hom = value;
    else if (key == "r") t.r = value;
    else if (key == "gen") t.gen = value;
    else if (key == "integer") t.integer = value;
    else if (key == "basic") t.basic = value;
    else throw InvalidInput("unknown tolerance key: " + key);
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
    if (!j.is_object()) throw InvalidInput("tolerances must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw InvalidInput("tolerance " + key + " must be a number");
        set_tolerance(base, key, value.get<double>());
    }
    return base;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace aquant

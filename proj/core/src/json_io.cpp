// Copyright 2026 The ewfnogo Authors
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

#include "ewfnogo/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ewfnogo/angle.hpp"

namespace ewfnogo {

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

bool is_scalar(const Json &j) { return !j.is_array() && !j.is_object(); }

void dump_value(const Json &j, int indent, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
        } else {
            out += format_number(v);
        }
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool inline_array =
            indent <= 0 || std::all_of(j.begin(), j.end(), [](const Json &e) { return is_scalar(e); });
        out += '[';
        bool first = true;
        for (const Json &e : j) {
            if (!first) {
                out += inline_array ? ", " : ",";
            }
            first = false;
            if (!inline_array) {
                out += '\n' + pad;
            }
            dump_value(e, indent, depth + 1, out);
        }
        if (!inline_array) {
            out += '\n' + close_pad;
        }
        out += ']';
        return;
    }
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ',';
            }
            first = false;
            if (indent > 0) {
                out += '\n' + pad;
            }
            out += Json(it.key()).dump();
            out += indent > 0 ? ": " : ":";
            dump_value(it.value(), indent, depth + 1, out);
        }
        if (indent > 0) {
            out += '\n' + close_pad;
        }
        out += '}';
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

// ---------------------------------------------------------------------------
// Schema helpers.

std::string child(const std::string &path, const std::string &key) { return path + "/" + key; }
std::string child(const std::string &path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json &require(const Json &doc, const std::string &key, const std::string &path) {
    if (!doc.is_object()) {
        throw SchemaError(path.empty() ? "/" : path, "expected an object");
    }
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw SchemaError(child(path, key), "missing required member");
    }
    return *it;
}

void reject_unknown(const Json &doc, const std::set<std::string> &allowed, const std::string &path) {
    if (!doc.is_object()) {
        throw SchemaError(path.empty() ? "/" : path, "expected an object");
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!allowed.contains(it.key())) {
            throw SchemaError(child(path, it.key()), "unknown member");
        }
    }
}

double as_number(const Json &j, const std::string &path) {
    if (!j.is_number()) {
        throw SchemaError(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw SchemaError(path, "expected a finite number");
    }
    return v;
}

std::size_t as_size(const Json &j, const std::string &path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw SchemaError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

const std::string &as_string(const Json &j, const std::string &path) {
    if (!j.is_string()) {
        throw SchemaError(path, "expected a string");
    }
    return j.get_ref<const std::string &>();
}

const Json &as_array(const Json &j, const std::string &path) {
    if (!j.is_array()) {
        throw SchemaError(path, "expected an array");
    }
    return j;
}

bool as_bool(const Json &j, const std::string &path) {
    if (!j.is_boolean()) {
        throw SchemaError(path, "expected a boolean");
    }
    return j.get<bool>();
}

double as_angle(const Json &j, const std::string &path) {
    if (j.is_string()) {
        try {
            return parse_angle(j.get_ref<const std::string &>());
        } catch (const std::invalid_argument &e) {
            throw SchemaError(path, e.what());
        }
    }
    if (j.is_number()) {
        return as_number(j, path);
    }
    throw SchemaError(path, "expected an angle (number of radians or string such as \"3pi/4\")");
}

std::vector<double> as_numbers(const Json &j, const std::string &path) {
    std::vector<double> out;
    std::size_t i = 0;
    for (const Json &e : as_array(j, path)) {
        out.push_back(as_number(e, child(path, i++)));
    }
    return out;
}

std::vector<std::string> as_strings(const Json &j, const std::string &path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const Json &e : as_array(j, path)) {
        out.push_back(as_string(e, child(path, i++)));
    }
    return out;
}

Json variables_to_json(const std::vector<Variable> &vars) {
    Json arr = Json::array();
    for (const Variable &v : vars) {
        arr.push_back(Json::array({v.name, v.cardinality}));
    }
    return arr;
}

std::vector<Variable> variables_from_json(const Json &j, const std::string &path) {
    std::vector<Variable> out;
    std::size_t i = 0;
    for (const Json &e : as_array(j, path)) {
        const std::string p = child(path, i++);
        if (!e.is_array() || e.size() != 2) {
            throw SchemaError(p, "expected [name, cardinality]");
        }
        out.push_back({as_string(e[0], child(p, 0)), as_size(e[1], child(p, 1))});
    }
    return out;
}

std::string tuple_key(const std::vector<Variable> &settings, const SettingTuple &t) {
    std::string key;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) {
            key += ',';
        }
        key += settings[i].name + "=" + std::to_string(t[i]);
    }
    return key;
}

Json numbers(const std::vector<double> &v) {
    Json arr = Json::array();
    for (double x : v) {
        arr.push_back(x);
    }
    return arr;
}

Json optional_numbers(const std::optional<std::vector<double>> &v) { return v ? numbers(*v) : Json(nullptr); }

std::string joined(const std::vector<std::string> &parts, const char *sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i > 0 ? sep : "") + parts[i];
    }
    return out;
}

std::string numbers_text(const std::vector<double> &v) {
    std::vector<std::string> parts;
    for (double x : v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", x);
        parts.emplace_back(buf);
    }
    return "[" + joined(parts, ", ") + "]";
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

Json gap_to_json(const EveGap &g) {
    Json j;
    j["description"] = g.description;
    j["lhs"] = numbers(g.lhs);
    j["rhs"] = numbers(g.rhs);
    j["gap"] = g.gap;
    j["strict"] = g.strict;
    return j;
}

}  // namespace

std::string dump_json(const Json &doc, int indent) {
    std::string out;
    dump_value(doc, indent, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Behavior.

Json to_json(const Behavior &behavior) {
    Json j;
    j["settings"] = variables_to_json(behavior.settings());
    j["outcomes"] = variables_to_json(behavior.outcomes());
    Json table = Json::object();
    for (const SettingTuple &t : behavior.setting_tuples()) {
        table[tuple_key(behavior.settings(), t)] = numbers(behavior.row(t));
    }
    j["table"] = std::move(table);
    if (!behavior.observed().empty()) {
        Json obs = Json::object();
        for (const SettingTuple &t : behavior.setting_tuples()) {
            obs[tuple_key(behavior.settings(), t)] = behavior.observed().at(t);
        }
        j["observed"] = std::move(obs);
    }
    return j;
}

Behavior behavior_from_json(const Json &doc) {
    reject_unknown(doc, {"settings", "outcomes", "table", "observed"}, "");
    const std::vector<Variable> settings = variables_from_json(require(doc, "settings", ""), "/settings");
    const std::vector<Variable> outcomes = variables_from_json(require(doc, "outcomes", ""), "/outcomes");
    const Json &table_doc = require(doc, "table", "");
    if (!table_doc.is_object()) {
        throw SchemaError("/table", "expected an object keyed by setting tuples");
    }
    for (const Variable &v : settings) {
        if (v.cardinality == 0) {
            throw SchemaError("/settings", "setting '" + v.name + "' has cardinality 0");
        }
    }
    std::map<SettingTuple, std::vector<double>> table;
    std::map<SettingTuple, std::vector<std::string>> observed;
    const Json *observed_doc = doc.contains("observed") ? &doc["observed"] : nullptr;
    if (observed_doc && !observed_doc->is_object()) {
        throw SchemaError("/observed", "expected an object keyed by setting tuples");
    }
    std::set<std::string> seen;
    for (const SettingTuple &t : enumerate_tuples(settings)) {
        const std::string key = tuple_key(settings, t);
        const std::string path = child("/table", key);
        if (!table_doc.contains(key)) {
            throw SchemaError(path, "missing row");
        }
        seen.insert(key);
        table[t] = as_numbers(table_doc[key], path);
        if (observed_doc) {
            if (!observed_doc->contains(key)) {
                throw SchemaError(child("/observed", key), "missing observed labels");
            }
            observed[t] = as_strings((*observed_doc)[key], child("/observed", key));
        }
    }
    for (auto it = table_doc.begin(); it != table_doc.end(); ++it) {
        if (!seen.contains(it.key())) {
            throw SchemaError(child("/table", it.key()), "not a setting tuple of the declared settings");
        }
    }
    try {
        return Behavior(settings, outcomes, std::move(table), std::move(observed));
    } catch (const std::invalid_argument &e) {
        throw SchemaError("/table", e.what());
    }
}

std::string behavior_to_csv(const Behavior &behavior) {
    std::ostringstream out;
    std::vector<std::string> header;
    for (const Variable &v : behavior.settings()) {
        header.push_back(v.name);
    }
    for (const Variable &v : behavior.outcomes()) {
        header.push_back(v.name);
    }
    if (!behavior.observed().empty()) {
        header.emplace_back("observed");
    }
    header.emplace_back("p");
    out << joined(header, ",") << '\n';
    const std::vector<SettingTuple> outcome_tuples = enumerate_tuples(behavior.outcomes());
    for (const SettingTuple &s : behavior.setting_tuples()) {
        const std::vector<double> &row = behavior.row(s);
        for (std::size_t k = 0; k < outcome_tuples.size(); ++k) {
            std::vector<std::string> cells;
            for (std::size_t v : s) {
                cells.push_back(std::to_string(v));
            }
            for (std::size_t v : outcome_tuples[k]) {
                cells.push_back(std::to_string(v));
            }
            if (!behavior.observed().empty()) {
                cells.push_back(joined(behavior.observed().at(s), " "));
            }
            cells.push_back(format_number(row[k]));
            out << joined(cells, ",") << '\n';
        }
    }
    return out.str();
}

std::string behavior_to_pretty(const Behavior &behavior) {
    std::ostringstream out;
    const std::vector<SettingTuple> outcome_tuples = enumerate_tuples(behavior.outcomes());
    for (const SettingTuple &s : behavior.setting_tuples()) {
        out << behavior.setting_key(s);
        if (const auto it = behavior.observed().find(s); it != behavior.observed().end()) {
            out << "  (" << joined(it->second, ",") << ")";
        }
        out << '\n';
        const std::vector<double> &row = behavior.row(s);
        for (std::size_t k = 0; k < outcome_tuples.size(); ++k) {
            std::vector<std::string> vals;
            for (std::size_t v : outcome_tuples[k]) {
                vals.push_back(std::to_string(v));
            }
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12f", row[k]);
            out << "  p(" << joined(vals, ",") << ") = " << buf << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Marginal problems.

Json to_json(const MarginalConstraintSet &cs) {
    Json j;
    j["variables"] = variables_to_json(cs.variables());
    Json arr = Json::array();
    for (const MarginalConstraint &c : cs.constraints()) {
        Json e;
        e["subset"] = c.subset;
        e["target"] = numbers(c.target);
        arr.push_back(std::move(e));
    }
    j["constraints"] = std::move(arr);
    return j;
}

MarginalConstraintSet constraints_from_json(const Json &doc) {
    reject_unknown(doc, {"variables", "constraints"}, "");
    std::vector<Variable> vars = variables_from_json(require(doc, "variables", ""), "/variables");
    std::set<std::string> names;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].cardinality == 0) {
            throw SchemaError(child("/variables", i), "cardinality must be >= 1");
        }
        if (!names.insert(vars[i].name).second) {
            throw SchemaError(child("/variables", i), "duplicate variable '" + vars[i].name + "'");
        }
    }
    std::vector<MarginalConstraint> constraints;
    const Json &arr = as_array(require(doc, "constraints", ""), "/constraints");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = child("/constraints", i);
        reject_unknown(arr[i], {"subset", "target"}, p);
        MarginalConstraint c{as_strings(require(arr[i], "subset", p), child(p, "subset")),
                             as_numbers(require(arr[i], "target", p), child(p, "target"))};
        std::size_t expected = 1;
        std::set<std::string> used;
        for (std::size_t k = 0; k < c.subset.size(); ++k) {
            const auto it = std::find_if(vars.begin(), vars.end(),
                                         [&](const Variable &v) { return v.name == c.subset[k]; });
            if (it == vars.end()) {
                throw SchemaError(child(child(p, "subset"), k), "undeclared variable '" + c.subset[k] + "'");
            }
            if (!used.insert(c.subset[k]).second) {
                throw SchemaError(child(child(p, "subset"), k), "repeated variable '" + c.subset[k] + "'");
            }
            expected *= it->cardinality;
        }
        if (c.target.size() != expected) {
            throw SchemaError(child(p, "target"), "expected " + std::to_string(expected) + " entries, got " +
                                                      std::to_string(c.target.size()));
        }
        double total = 0.0;
        for (std::size_t k = 0; k < c.target.size(); ++k) {
            if (c.target[k] < 0.0) {
                throw SchemaError(child(child(p, "target"), k), "negative probability");
            }
            total += c.target[k];
        }
        if (std::abs(total - 1.0) > kLpTol) {
            throw SchemaError(child(p, "target"), "entries do not sum to 1");
        }
        constraints.push_back(std::move(c));
    }
    try {
        return MarginalConstraintSet(std::move(vars), std::move(constraints));
    } catch (const std::invalid_argument &e) {
        throw SchemaError("/constraints", e.what());
    }
}

Json to_json(const FeasibilityResult &result) {
    Json j;
    j["feasible"] = result.feasible;
    j["witness"] = optional_numbers(result.witness);
    j["certificate"] = optional_numbers(result.certificate);
    j["slack"] = result.slack;
    return j;
}

FeasibilityResult feasibility_from_json(const Json &doc) {
    reject_unknown(doc, {"feasible", "witness", "certificate", "slack"}, "");
    FeasibilityResult r;
    r.feasible = as_bool(require(doc, "feasible", ""), "/feasible");
    for (const char *key : {"witness", "certificate"}) {
        const Json &v = require(doc, key, "");
        if (!v.is_null()) {
            (key[0] == 'w' ? r.witness : r.certificate) = as_numbers(v, child("", std::string(key)));
        }
    }
    r.slack = as_number(require(doc, "slack", ""), "/slack");
    return r;
}

// ---------------------------------------------------------------------------
// Reports.

Json to_json(const Distribution &dist) {
    Json j;
    j["variables"] = variables_to_json(dist.variables());
    j["probs"] = numbers(dist.probs());
    return j;
}

Json to_json(const AgencyCheck &check) {
    Json j;
    j["description"] = check.description;
    j["lhs"] = numbers(check.lhs);
    j["rhs"] = numbers(check.rhs);
    j["max_abs_diff"] = check.max_abs_diff;
    j["passed"] = check.passed;
    return j;
}

Json to_json(const ContradictionReport &report) {
    Json j;
    j["scenario"] = report.scenario;
    j["verdict"] = std::string(to_string(report.verdict));
    j["assumptions"] = report.assumptions;
    Json checks = Json::array();
    for (const AgencyCheck &c : report.premise_checks) {
        checks.push_back(to_json(c));
    }
    j["premise_checks"] = std::move(checks);
    j["identifications"] = report.identifications;
    j["identified_marginals"] = to_json(report.identified_marginals);
    j["fine_result"] = to_json(report.fine_result);
    j["certificate_valid"] = report.certificate_valid;
    j["chsh"] = report.chsh;
    return j;
}

Json to_json(const AppendixBReport &report) {
    Json j;
    j["verdict"] = std::string(to_string(report.verdict));
    j["new_oe"] = to_json(report.new_oe);
    Json eq = Json::array();
    for (const AgencyCheck &c : report.agency_equalities) {
        eq.push_back(to_json(c));
    }
    j["agency_equalities"] = std::move(eq);
    Json gaps = Json::array();
    for (const EveGap &g : report.gaps) {
        gaps.push_back(gap_to_json(g));
    }
    j["gaps"] = std::move(gaps);
    j["gap_d0_c0"] = report.gap_d0_c0;
    j["restricted"] = to_json(report.restricted);
    j["restricted_membership"] = to_json(report.restricted_membership);
    j["restricted_chsh"] = report.restricted_chsh;
    j["of_marginals"] = to_json(report.of_marginals);
    j["of_fine"] = to_json(report.of_fine);
    j["of_fine_certificate_valid"] = report.of_fine_certificate_valid;
    Json witness;
    Json table = Json::object();
    for (const auto &[t, dist] : report.witness.table) {
        table["x=" + std::to_string(t.at(0)) + ",y=" + std::to_string(t.at(1))] = to_json(dist);
    }
    witness["table"] = std::move(table);
    Json wchecks = Json::array();
    for (const AgencyCheck &c : report.witness.checks) {
        wchecks.push_back(to_json(c));
    }
    witness["checks"] = std::move(wchecks);
    j["witness"] = std::move(witness);
    return j;
}

std::string report_to_pretty(const ContradictionReport &report) {
    std::ostringstream out;
    out << "scenario: " << report.scenario << '\n';
    out << "verdict:  " << to_string(report.verdict) << '\n';
    out << "assumptions:\n";
    for (const std::string &a : report.assumptions) {
        out << "  - " << a << '\n';
    }
    out << "premise checks:\n";
    for (const AgencyCheck &c : report.premise_checks) {
        out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.description << "  (max diff " << sci(c.max_abs_diff)
            << ")\n";
    }
    out << "identifications:\n";
    for (const std::string &s : report.identifications) {
        out << "  " << s << '\n';
    }
    for (const MarginalConstraint &c : report.identified_marginals.constraints()) {
        out << "  p(" << joined(c.subset, ",") << ") = " << numbers_text(c.target) << '\n';
    }
    out << "joint distribution: " << (report.fine_result.feasible ? "exists" : "does not exist")
        << "  (slack " << sci(report.fine_result.slack) << ", certificate "
        << (report.certificate_valid ? "valid" : "INVALID") << ")\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", report.chsh);
    out << "CHSH: " << buf << '\n';
    return out.str();
}

std::string report_to_pretty(const AppendixBReport &report) {
    std::ostringstream out;
    out << "verdict: " << to_string(report.verdict) << '\n';
    out << "new operational equivalence: [" << (report.new_oe.passed ? "ok" : "FAIL") << "] "
        << report.new_oe.description << "  (max diff " << sci(report.new_oe.max_abs_diff) << ")\n";
    out << "agency equalities (Eve mode):\n";
    for (const AgencyCheck &c : report.agency_equalities) {
        out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.description << "  (max diff "
            << sci(c.max_abs_diff) << ")\n";
    }
    out << "gaps (Eve mode):\n";
    for (const EveGap &g : report.gaps) {
        out << "  [" << (g.strict ? "strict" : "none") << "] " << g.description << "  (gap " << sci(g.gap) << ")\n";
    }
    out << "  |p(d=0|c=0,x=2,y=0) - p(d=0|c=0,x=1,y=0)| = " << sci(report.gap_d0_c0) << '\n';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", report.restricted_chsh);
    out << "restricted x,y in {1,2}: " << (report.restricted_membership.feasible ? "local" : "nonlocal")
        << "  (CHSH " << buf << ")\n";
    out << "x,y in {0,1} joint distribution: " << (report.of_fine.feasible ? "exists" : "does not exist")
        << "  (certificate " << (report.of_fine_certificate_valid ? "valid" : "INVALID") << ")\n";
    out << "witness checks:\n";
    for (const AgencyCheck &c : report.witness.checks) {
        out << "  [" << (c.max_abs_diff <= kAlgebraTol ? "ok" : "FAIL") << "] " << c.description << "  (max diff "
            << sci(c.max_abs_diff) << ")\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Configs.

OFConfig of_config_from_json(const Json &doc, OFConfig base) {
    reject_unknown(doc, {"preparation_angles", "charlie_angle", "debbie_angle", "bob_angle", "prior"}, "");
    if (doc.contains("preparation_angles")) {
        const Json &arr = as_array(doc["preparation_angles"], "/preparation_angles");
        if (arr.size() != 2) {
            throw SchemaError("/preparation_angles", "expected exactly 2 angles");
        }
        for (std::size_t i = 0; i < 2; ++i) {
            base.preparation_angles[i] = BlochAngle(as_angle(arr[i], child("/preparation_angles", i)));
        }
    }
    if (doc.contains("charlie_angle")) {
        base.charlie_basis_angle = BlochAngle(as_angle(doc["charlie_angle"], "/charlie_angle"));
    }
    if (doc.contains("debbie_angle")) {
        base.debbie_basis_angle = BlochAngle(as_angle(doc["debbie_angle"], "/debbie_angle"));
    }
    if (doc.contains("bob_angle")) {
        base.bob_basis_angle = BlochAngle(as_angle(doc["bob_angle"], "/bob_angle"));
    }
    if (doc.contains("prior")) {
        const std::vector<double> p = as_numbers(doc["prior"], "/prior");
        if (p.size() != 2 || p[0] < 0.0 || p[1] < 0.0 || std::abs(p[0] + p[1] - 1.0) > kAlgebraTol) {
            throw SchemaError("/prior", "expected a probability vector of length 2");
        }
        base.prior = {p[0], p[1]};
    }
    return base;
}

LFConfig lf_config_from_json(const Json &doc, LFConfig base) {
    reject_unknown(doc, {"shared_state", "charlie_angle", "debbie_angle", "alice_angle", "bob_angle"}, "");
    if (doc.contains("shared_state")) {
        PureState s = state_from_json(doc["shared_state"], "/shared_state");
        if (s.dim() != 4) {
            throw SchemaError("/shared_state", "expected a two-qubit state");
        }
        base.shared_state = std::move(s);
    }
    if (doc.contains("charlie_angle")) {
        base.charlie_angle = BlochAngle(as_angle(doc["charlie_angle"], "/charlie_angle"));
    }
    if (doc.contains("debbie_angle")) {
        base.debbie_angle = BlochAngle(as_angle(doc["debbie_angle"], "/debbie_angle"));
    }
    if (doc.contains("alice_angle")) {
        base.alice_undo_angle = BlochAngle(as_angle(doc["alice_angle"], "/alice_angle"));
    }
    if (doc.contains("bob_angle")) {
        base.bob_undo_angle = BlochAngle(as_angle(doc["bob_angle"], "/bob_angle"));
    }
    return base;
}

ExtendedOFConfig extended_config_from_json(const Json &doc, ExtendedOFConfig base) {
    reject_unknown(doc,
                   {"preparation_angles", "charlie_angle", "debbie_angle", "bob_angle", "prior", "x2_rotation",
                    "y2_angle"},
                   "");
    Json of_part = Json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() != "x2_rotation" && it.key() != "y2_angle") {
            of_part[it.key()] = it.value();
        }
    }
    base.base = of_config_from_json(of_part, base.base);
    if (doc.contains("x2_rotation")) {
        base.alice_x2_rotation_angle = as_angle(doc["x2_rotation"], "/x2_rotation");
    }
    if (doc.contains("y2_angle")) {
        base.bob_y2_basis_angle = BlochAngle(as_angle(doc["y2_angle"], "/y2_angle"));
    }
    return base;
}

PureState state_from_json(const Json &doc, const std::string &field) {
    if (doc.is_string()) {
        const std::string &name = doc.get_ref<const std::string &>();
        if (name == "singlet") {
            return LFConfig::singlet();
        }
        if (name == "product") {
            return PureState::basis(4, 0);
        }
        throw SchemaError(field.empty() ? "/" : field, "unknown state name '" + name + "'");
    }
    if (doc.is_object()) {
        reject_unknown(doc, {"theta"}, field);
        return make_bloch_state(BlochAngle(as_angle(require(doc, "theta", field), child(field, "theta"))));
    }
    if (doc.is_array()) {
        CVector v(static_cast<Eigen::Index>(doc.size()));
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const std::string p = child(field, i);
            const Json &e = doc[i];
            if (e.is_array()) {
                if (e.size() != 2) {
                    throw SchemaError(p, "expected a number or [re, im]");
                }
                v(static_cast<Eigen::Index>(i)) = {as_number(e[0], child(p, 0)), as_number(e[1], child(p, 1))};
            } else {
                v(static_cast<Eigen::Index>(i)) = as_number(e, p);
            }
        }
        try {
            return PureState(std::move(v));
        } catch (const std::invalid_argument &e) {
            throw SchemaError(field.empty() ? "/" : field, e.what());
        }
    }
    throw SchemaError(field.empty() ? "/" : field, "expected a state name, {\"theta\": ...} or amplitudes");
}

std::vector<std::pair<double, PureState>> ensemble_from_json(const Json &doc) {
    reject_unknown(doc, {"states"}, "");
    const Json &arr = as_array(require(doc, "states", ""), "/states");
    if (arr.empty()) {
        throw SchemaError("/states", "expected at least one state");
    }
    std::vector<std::pair<double, PureState>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = child("/states", i);
        reject_unknown(arr[i], {"weight", "theta", "amplitudes"}, p);
        const double w = as_number(require(arr[i], "weight", p), child(p, "weight"));
        if (w < 0.0) {
            throw SchemaError(child(p, "weight"), "negative weight");
        }
        if (arr[i].contains("theta") == arr[i].contains("amplitudes")) {
            throw SchemaError(p, "expected exactly one of \"theta\" or \"amplitudes\"");
        }
        if (arr[i].contains("theta")) {
            Json t = Json::object();
            t["theta"] = arr[i]["theta"];
            out.emplace_back(w, state_from_json(t, p));
        } else {
            out.emplace_back(w, state_from_json(arr[i]["amplitudes"], child(p, "amplitudes")));
        }
    }
    double total = 0.0;
    for (const auto &[w, s] : out) {
        total += w;
        if (s.dim() != out.front().second.dim()) {
            throw SchemaError("/states", "states differ in dimension");
        }
    }
    if (std::abs(total - 1.0) > kAlgebraTol) {
        throw SchemaError("/states", "weights do not sum to 1");
    }
    return out;
}

}  // namespace ewfnogo

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

#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ewfnogo/angle.hpp"
#include "ewfnogo/json_io.hpp"
#include "ewfnogo/nogo.hpp"
#include "ewfnogo/polytope.hpp"
#include "ewfnogo/scenario.hpp"

namespace ewfnogo::cli {

namespace {

struct Options {
    std::string scenario;
    std::string kind;
    std::string config_path;
    std::string out_path;
    std::string format = "json";

    std::optional<std::string> charlie_angle;
    std::optional<std::string> debbie_angle;
    std::optional<std::string> bob_angle;
    std::optional<std::string> alice_angle;
    std::optional<std::string> prep_angles;
    std::optional<std::string> x2_rotation;
    std::optional<std::string> y2_angle;
    std::optional<std::string> shared_state;

    std::string marginals_path;
    std::string behavior_path;
    std::string lhs_path;
    std::string rhs_path;
};

/// Operational failure with a user-facing message.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string text;
    int code = kExitOk;
};

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw UsageError(path + ": invalid JSON: " + e.what());
    }
}

// Re-raises schema problems with the file name attached.
template <class F>
auto load(const std::string &path, F &&parse) {
    const Json doc = read_json(path);
    try {
        return parse(doc);
    } catch (const SchemaError &e) {
        throw UsageError(path + ": field " + e.what());
    }
}

BlochAngle angle_flag(const std::string &flag, const std::string &text) {
    try {
        return BlochAngle(parse_angle(text));
    } catch (const std::invalid_argument &e) {
        throw UsageError(flag + ": " + e.what());
    }
}

double signed_angle_flag(const std::string &flag, const std::string &text) {
    try {
        return parse_angle(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(flag + ": " + e.what());
    }
}

void reject_flags(const std::string &scenario,
                  std::initializer_list<std::pair<const char *, const std::optional<std::string> *>> flags) {
    for (const auto &[name, value] : flags) {
        if (value->has_value()) {
            throw UsageError(std::string(name) + " does not apply to scenario '" + scenario + "'");
        }
    }
}

OFConfig apply_of_overrides(const Options &o, OFConfig cfg) {
    if (o.prep_angles) {
        std::vector<std::string> parts;
        std::stringstream ss(*o.prep_angles);
        for (std::string item; std::getline(ss, item, ',');) {
            parts.push_back(item);
        }
        if (parts.size() != 2) {
            throw UsageError("--prep-angles: expected two comma-separated angles");
        }
        cfg.preparation_angles = {angle_flag("--prep-angles", parts[0]), angle_flag("--prep-angles", parts[1])};
    }
    if (o.charlie_angle) {
        cfg.charlie_basis_angle = angle_flag("--charlie-angle", *o.charlie_angle);
    }
    if (o.debbie_angle) {
        cfg.debbie_basis_angle = angle_flag("--debbie-angle", *o.debbie_angle);
    }
    if (o.bob_angle) {
        cfg.bob_basis_angle = angle_flag("--bob-angle", *o.bob_angle);
    }
    return cfg;
}

OFConfig of_config(const Options &o) {
    reject_flags("of",
                 {{"--x2-rotation", &o.x2_rotation},
                  {"--y2-angle", &o.y2_angle},
                  {"--alice-angle", &o.alice_angle},
                  {"--shared-state", &o.shared_state}});
    OFConfig cfg;
    if (!o.config_path.empty()) {
        cfg = load(o.config_path, [](const Json &d) { return of_config_from_json(d); });
    }
    return apply_of_overrides(o, cfg);
}

ExtendedOFConfig extended_config(const Options &o, const std::string &scenario) {
    reject_flags(scenario, {{"--alice-angle", &o.alice_angle}, {"--shared-state", &o.shared_state}});
    ExtendedOFConfig cfg;
    if (!o.config_path.empty()) {
        cfg = load(o.config_path, [](const Json &d) { return extended_config_from_json(d); });
    }
    cfg.base = apply_of_overrides(o, cfg.base);
    if (o.x2_rotation) {
        cfg.alice_x2_rotation_angle = signed_angle_flag("--x2-rotation", *o.x2_rotation);
    }
    if (o.y2_angle) {
        cfg.bob_y2_basis_angle = angle_flag("--y2-angle", *o.y2_angle);
    }
    return cfg;
}

LFConfig lf_config(const Options &o) {
    reject_flags("lf",
                 {{"--x2-rotation", &o.x2_rotation}, {"--y2-angle", &o.y2_angle}, {"--prep-angles", &o.prep_angles}});
    LFConfig cfg;
    if (!o.config_path.empty()) {
        cfg = load(o.config_path, [](const Json &d) { return lf_config_from_json(d); });
    }
    if (o.shared_state) {
        Json doc;
        try {
            doc = o.shared_state->find_first_of("[{") == std::string::npos ? Json(*o.shared_state)
                                                                            : Json::parse(*o.shared_state);
        } catch (const Json::parse_error &e) {
            throw UsageError(std::string("--shared-state: invalid JSON: ") + e.what());
        }
        try {
            cfg.shared_state = state_from_json(doc, "--shared-state");
        } catch (const SchemaError &e) {
            throw UsageError(e.what());
        }
        if (cfg.shared_state.dim() != 4) {
            throw UsageError("--shared-state: expected a two-qubit state");
        }
    }
    if (o.charlie_angle) {
        cfg.charlie_angle = angle_flag("--charlie-angle", *o.charlie_angle);
    }
    if (o.debbie_angle) {
        cfg.debbie_angle = angle_flag("--debbie-angle", *o.debbie_angle);
    }
    if (o.alice_angle) {
        cfg.alice_undo_angle = angle_flag("--alice-angle", *o.alice_angle);
    }
    if (o.bob_angle) {
        cfg.bob_undo_angle = angle_flag("--bob-angle", *o.bob_angle);
    }
    return cfg;
}

void require_format(const Options &o, std::initializer_list<const char *> allowed, const std::string &what) {
    for (const char *f : allowed) {
        if (o.format == f) {
            return;
        }
    }
    throw UsageError("--format " + o.format + " is not available for " + what);
}

std::string render_json(const Json &doc) { return dump_json(doc) + "\n"; }

std::string render_behavior(const Options &o, const Behavior &b) {
    if (o.format == "csv") {
        return behavior_to_csv(b);
    }
    if (o.format == "pretty") {
        return behavior_to_pretty(b);
    }
    return render_json(to_json(b));
}

Output cmd_simulate(const Options &o) {
    if (o.scenario == "of") {
        return {render_behavior(o, run_of_scenario(of_config(o)))};
    }
    if (o.scenario == "ofx") {
        return {render_behavior(o, run_extended_of_scenario(extended_config(o, "ofx")))};
    }
    return {render_behavior(o, run_lf_scenario(lf_config(o)))};
}

Output cmd_verify(const Options &o) {
    require_format(o, {"json", "pretty"}, "verify");
    if (o.scenario == "appendix-b") {
        const AppendixBReport r = verify_appendix_b(extended_config(o, "appendix-b"));
        return {o.format == "pretty" ? report_to_pretty(r) : render_json(to_json(r)),
                r.verdict == SeparationVerdict::separation_established ? kExitOk : kExitNegative};
    }
    const ContradictionReport r = o.scenario == "of" ? verify_of_theorem(of_config(o)) : verify_lf_theorem(lf_config(o));
    return {o.format == "pretty" ? report_to_pretty(r) : render_json(to_json(r)),
            r.verdict == Verdict::contradiction_established ? kExitOk : kExitNegative};
}

std::string feasibility_pretty(const FeasibilityResult &r) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "feasible: %s\nslack: %.3e\n", r.feasible ? "yes" : "no", r.slack);
    return buf;
}

Behavior load_behavior(const Options &o) {
    if (o.behavior_path.empty()) {
        throw UsageError("--behavior is required");
    }
    return load(o.behavior_path, [](const Json &d) { return behavior_from_json(d); });
}

ScenarioShape shape_of(const Behavior &b) {
    if (b.settings().size() != 2 || b.outcomes().size() != 2) {
        throw UsageError("behavior must have one setting and one outcome per party");
    }
    return {b.settings()[0].cardinality, b.settings()[1].cardinality, b.outcomes()[0].cardinality,
            b.outcomes()[1].cardinality};
}

Output cmd_check(const Options &o) {
    require_format(o, {"json", "pretty"}, "check");
    if (o.kind == "fine") {
        if (o.marginals_path.empty()) {
            throw UsageError("--marginals is required");
        }
        const MarginalConstraintSet cs =
            load(o.marginals_path, [](const Json &d) { return constraints_from_json(d); });
        const FeasibilityResult r = lp_feasibility(cs);
        return {o.format == "pretty" ? feasibility_pretty(r) : render_json(to_json(r)),
                r.feasible ? kExitOk : kExitNegative};
    }
    if (o.kind == "membership") {
        const Behavior b = load_behavior(o);
        const FeasibilityResult r = membership(b, shape_of(b));
        return {o.format == "pretty" ? feasibility_pretty(r) : render_json(to_json(r)),
                r.feasible ? kExitOk : kExitNegative};
    }
    if (o.kind == "chsh") {
        const Behavior b = load_behavior(o);
        const ScenarioShape shape = shape_of(b);
        if (shape.n_settings_alice != 2 || shape.n_settings_bob != 2 || shape.n_outcomes_alice != 2 ||
            shape.n_outcomes_bob != 2) {
            throw UsageError(o.behavior_path + ": CHSH needs two binary settings and outcomes per party");
        }
        const double value = chsh_value(b);
        const bool violated = value > 2.0 + kLpTol;
        Json j;
        j["chsh"] = value;
        j["local_bound"] = 2.0;
        j["violated"] = violated;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "chsh: %.6f\nlocal bound: 2\nviolated: %s\n", value, violated ? "yes" : "no");
        return {o.format == "pretty" ? std::string(buf) : render_json(j), violated ? kExitNegative : kExitOk};
    }
    if (o.lhs_path.empty() || o.rhs_path.empty()) {
        throw UsageError("--lhs and --rhs are required");
    }
    const auto lhs = load(o.lhs_path, [](const Json &d) { return ensemble_from_json(d); });
    const auto rhs = load(o.rhs_path, [](const Json &d) { return ensemble_from_json(d); });
    if (lhs.front().second.dim() != rhs.front().second.dim()) {
        throw UsageError("--lhs and --rhs ensembles differ in dimension");
    }
    const PreparationEquivalence r = check_preparation_equivalence(lhs, rhs);
    Json j;
    j["equivalent"] = r.equivalent;
    j["trace_distance"] = r.trace_distance;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "equivalent: %s\ntrace distance: %.3e\n", r.equivalent ? "yes" : "no",
                  r.trace_distance);
    return {o.format == "pretty" ? std::string(buf) : render_json(j), r.equivalent ? kExitOk : kExitNegative};
}

void add_output_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--out", o.out_path, "Write the result to this file (atomically) instead of stdout");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
}

void add_config_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--config", o.config_path, "JSON config file; flags below override it");
    cmd->add_option("--charlie-angle", o.charlie_angle, "Charlie's basis angle, e.g. 3pi/4");
    cmd->add_option("--debbie-angle", o.debbie_angle, "Debbie's basis angle");
    cmd->add_option("--bob-angle", o.bob_angle, "Bob's basis angle (undo measurement for lf)");
    cmd->add_option("--prep-angles", o.prep_angles, "Alice's two preparation angles, e.g. pi/4,5pi/4");
    cmd->add_option("--x2-rotation", o.x2_rotation, "Signed rotation applied for x=2 (ofx, appendix-b)");
    cmd->add_option("--y2-angle", o.y2_angle, "Bob's basis angle for y=2 (ofx, appendix-b)");
    cmd->add_option("--alice-angle", o.alice_angle, "Alice's undo measurement angle (lf)");
    cmd->add_option("--shared-state", o.shared_state, "singlet, product, or a JSON amplitude list (lf)");
    add_output_flags(cmd, o);
}

}  // namespace

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        f << content;
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Verifier for the extended Wigner's friend no-go theorems", "ewfnogo"};
    app.require_subcommand(1);
    Options o;

    CLI::App *simulate = app.add_subcommand("simulate", "Run a protocol and print its behavior");
    simulate->add_option("--scenario", o.scenario, "Protocol to run")
        ->required()
        ->check(CLI::IsMember({"of", "lf", "ofx"}));
    add_config_flags(simulate, o);

    CLI::App *verify = app.add_subcommand("verify", "Verify a no-go theorem and print the report");
    verify->add_option("scenario", o.scenario, "of, lf or appendix-b")
        ->required()
        ->check(CLI::IsMember({"of", "lf", "appendix-b"}));
    add_config_flags(verify, o);

    CLI::App *check = app.add_subcommand("check", "Run a single check on an input file");
    check->add_option("kind", o.kind, "fine, chsh, membership or prep-equivalence")
        ->required()
        ->check(CLI::IsMember({"fine", "chsh", "membership", "prep-equivalence"}));
    check->add_option("--marginals", o.marginals_path, "Marginal constraint set (fine)");
    check->add_option("--behavior", o.behavior_path, "Behavior (chsh, membership)");
    check->add_option("--lhs", o.lhs_path, "First ensemble (prep-equivalence)");
    check->add_option("--rhs", o.rhs_path, "Second ensemble (prep-equivalence)");
    add_output_flags(check, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, err, err);
        return kExitError;
    }

    try {
        Output result;
        if (simulate->parsed()) {
            result = cmd_simulate(o);
        } else if (verify->parsed()) {
            result = cmd_verify(o);
        } else {
            result = cmd_check(o);
        }
        if (o.out_path.empty()) {
            out << result.text;
        } else {
            write_file_atomic(o.out_path, result.text);
        }
        return result.code;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace ewfnogo::cli

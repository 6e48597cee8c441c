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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ewfnogo/json_io.hpp"
#include "ewfnogo/polytope.hpp"
#include "support/oracles.hpp"

using namespace ewfnogo;

namespace {

constexpr double kChshTol = 1e-9;
constexpr double kPremiseTol = 1e-12;
constexpr double kFidelityTol = 1e-12;
const double kTsirelson = 2 * std::sqrt(2.0);

int g_failures = 0;

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

bool report(const std::string &id, bool ok, const std::string &title, const std::string &detail) {
    std::printf("%s  %-4s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++g_failures;
    }
    return ok;
}

struct CliRun {
    int code;
    Json doc;
};

CliRun cli_json(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    Json doc;
    try {
        doc = Json::parse(out.str());
    } catch (const Json::parse_error &) {
        doc = Json::object();
    }
    return {code, doc};
}

double worst(const std::vector<AgencyCheck> &checks) {
    double m = 0.0;
    for (const AgencyCheck &c : checks) {
        m = std::max(m, c.max_abs_diff);
    }
    return m;
}

// Re-validates a contradiction report from its JSON form alone.
bool certificate_from_json_ok(const Json &doc) {
    const MarginalConstraintSet cs = constraints_from_json(doc["identified_marginals"]);
    const FeasibilityResult r = feasibility_from_json(doc["fine_result"]);
    return validate_certificate(cs, r);
}

void criterion1() {
    const CliRun run = cli_json({"verify", "of"});
    const Json &d = run.doc;
    const bool contradiction = d.value("verdict", "") == "contradiction_established";
    const double chsh = d.value("chsh", 0.0);
    const bool infeasible = d.contains("fine_result") && !d["fine_result"]["feasible"].get<bool>();
    const bool cert = infeasible && d["certificate_valid"].get<bool>() && certificate_from_json_ok(d);
    report("1", run.code == cli::kExitOk && contradiction && std::abs(chsh - kTsirelson) <= kChshTol && cert,
           "OF no-go",
           "verdict=" + d.value("verdict", std::string("?")) + " chsh=" + fmt("%.12f", chsh) +
               " fine_infeasible=" + (infeasible ? "yes" : "no") + " certificate_valid=" + (cert ? "yes" : "no") +
               " exit=" + std::to_string(run.code));
}

void criterion2() {
    const CliRun run = cli_json({"verify", "lf"});
    const Json &d = run.doc;
    const bool contradiction = d.value("verdict", "") == "contradiction_established";
    const double chsh = d.value("chsh", 0.0);
    const bool cert = d.contains("fine_result") && certificate_from_json_ok(d);
    report("2", run.code == cli::kExitOk && contradiction && std::abs(chsh - kTsirelson) <= kChshTol && cert,
           "LF no-go",
           "verdict=" + d.value("verdict", std::string("?")) + " chsh=" + fmt("%.12f", chsh) +
               " certificate_valid=" + (cert ? "yes" : "no"));
}

void criterion3() {
    const std::vector<AgencyCheck> checks = of_premise_checks(OFConfig{});
    const char *families[] = {"p(c|x,y)=p(c)", "p(d|c,x,y)=p(d|c,y)", "p(b|c,x,y)=p(b|c,y)", "p(c,d|x,y)=p(c,d|x)",
                              "p(a,d|x,y)=p(a,d|x)"};
    bool all_families = true;
    for (const char *f : families) {
        bool found = false;
        for (const AgencyCheck &c : checks) {
            found = found || c.description.rfind(f, 0) == 0;
        }
        all_families = all_families && found;
    }
    const double m = worst(checks);
    report("3", all_families && m <= kPremiseTol, "Agency premises",
           std::to_string(checks.size()) + " instances, max_abs_diff=" + fmt("%.3e", m));
}

void criterion4() {
    const auto st = [](double t) { return make_bloch_state(BlochAngle(t)); };
    const std::vector<std::pair<double, PureState>> lhs{{0.5, st(kPi / 4)}, {0.5, st(5 * kPi / 4)}};
    const std::vector<std::pair<double, PureState>> rhs{{0.5, st(3 * kPi / 4)}, {0.5, st(7 * kPi / 4)}};
    const PreparationEquivalence eq = check_preparation_equivalence(lhs, rhs);

    std::vector<PureState> preps;
    for (double t : {kPi / 4, 5 * kPi / 4, 3 * kPi / 4, 7 * kPi / 4}) {
        preps.push_back(st(t));
    }
    const std::vector<ProjectiveMeasurement> meas{pauli_xz_measurement(BlochAngle(kPi / 2)),
                                                  pauli_xz_measurement(BlochAngle(0.0))};
    const double nc = nc_inequality_value(prepare_and_measure(preps, meas));
    report("4", eq.trace_distance <= kPremiseTol && std::abs(nc - kTsirelson) <= kChshTol, "Operational equivalence",
           "trace_distance=" + fmt("%.3e", eq.trace_distance) + " nc_value=" + fmt("%.12f", nc));
}

// Witness equalities recomputed from the table alone.
double witness_equalities(const WitnessDistribution &w) {
    const auto P = [&](std::size_t x, std::size_t y) { return w.table.at({x, y}); };
    double m = 0.0;
    for (std::size_t y = 1; y < 3; ++y) {
        m = std::max(m, max_abs_diff(P(2, y).marginal({"a", "c", "d"}).probs(), P(2, 0).marginal({"a", "c", "d"}).probs()));
    }
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            m = std::max(m, max_abs_diff(P(x, 2).marginal({"a", "c", "d"}).probs(), P(x, y).marginal({"a", "c", "d"}).probs()));
        }
    }
    for (std::size_t y = 0; y < 3; ++y) {
        m = std::max(m, max_abs_diff(P(2, y).marginal({"a", "c"}).probs(), P(1, y).marginal({"a", "c"}).probs()));
    }
    return m;
}

void criterion5() {
    const CliRun run = cli_json({"verify", "appendix-b"});
    const AppendixBReport r = verify_appendix_b(ExtendedOFConfig{});
    const double sin2 = std::pow(std::sin(kPi / 8), 2);

    const bool a = report("5a", r.new_oe.max_abs_diff <= kChshTol, "Bob y=2 response independent of x",
                          "max_abs_diff=" + fmt("%.3e", r.new_oe.max_abs_diff));
    const bool b = report("5b", std::abs(r.gap_d0_c0 - sin2) <= kChshTol, "Eve-mode gap",
                          "|p(d=0|c=0,x=2)-p(d=0|c=0,x=1)|=" + fmt("%.12f", r.gap_d0_c0) + " expected " +
                              fmt("%.12f", sin2));
    const bool c_member = !r.restricted_membership.feasible;
    const bool c_chsh = std::abs(r.restricted_chsh - kTsirelson) <= kChshTol;
    const bool c = report("5c", c_member && c_chsh, "x,y in {1,2} outside noncontextual polytope",
                          std::string("membership_infeasible=") + (c_member ? "yes" : "no") +
                              " chsh=" + fmt("%.12f", r.restricted_chsh) + " expected " + fmt("%.12f", kTsirelson));
    const bool d_ok = r.of_fine.feasible && r.of_fine.witness.has_value() &&
                      validate_certificate(r.of_marginals, r.of_fine);
    const bool d = report("5d", d_ok, "OF marginals admit a joint",
                          std::string("feasible=") + (r.of_fine.feasible ? "yes" : "no") +
                              " witness_valid=" + (d_ok ? "yes" : "no"));
    const double we = std::max(witness_equalities(r.witness), worst(r.witness.checks));
    const bool e = report("5e", we <= kPremiseTol, "No-superdeterminism witness", "max_abs_diff=" + fmt("%.3e", we));
    const bool verdict = r.verdict == SeparationVerdict::separation_established &&
                         run.doc.value("verdict", "") == "separation_established" && run.code == cli::kExitOk;
    report("5", verdict && a && b && c && d && e, "OF vs noncontextuality separation",
           "verdict=" + std::string(to_string(r.verdict)));
}

void criterion6() {
    std::mt19937_64 rng(20260101);
    int agree = 0, infeasible = 0;
    const int n_fine = 500;
    std::uniform_real_distribution<double> corr(-1.0, 1.0);
    const auto correlated = [](double e) { return Table2x2{(1 + e) / 4, (1 - e) / 4, (1 - e) / 4, (1 + e) / 4}; };
    for (int i = 0; i < n_fine; ++i) {
        // Odd instances: uniform singles with random correlators, often beyond the local bound.
        const oracle::CycleTables t = i % 2 == 0 ? oracle::random_cycle(rng)
                                                 : oracle::CycleTables{correlated(corr(rng)), correlated(corr(rng)),
                                                                       correlated(corr(rng)), correlated(corr(rng))};
        const FeasibilityResult r = fine_check(t.ab, t.ad, t.cb, t.cd);
        const bool chsh_ok = oracle::chsh_from_tables(t.ab, t.ad, t.cb, t.cd) <= 2 + kChshTol;
        agree += (r.feasible == chsh_ok && validate_certificate(fine_constraints(t.ab, t.ad, t.cb, t.cd), r)) ? 1 : 0;
        infeasible += r.feasible ? 0 : 1;
    }

    const oracle::BasisOracle hull = oracle::fine_oracle();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int agree_hull = 0, infeasible_hull = 0;
    const int n_hull = 1000;
    for (int i = 0; i < n_hull; ++i) {
        oracle::CycleTables t = i % 2 == 0 ? oracle::random_cycle(rng)
                                           : oracle::CycleTables{correlated(corr(rng)), correlated(corr(rng)),
                                                                 correlated(corr(rng)), correlated(corr(rng))};
        if (i % 10 == 0) {
            t.cd = oracle::random_table(rng, u(rng), u(rng));
        }
        const MarginalConstraintSet cs = fine_constraints(t.ab, t.ad, t.cb, t.cd);
        std::vector<double> targets;
        for (const MarginalConstraint &c : cs.constraints()) {
            targets.insert(targets.end(), c.target.begin(), c.target.end());
        }
        const FeasibilityResult r = lp_feasibility(cs);
        agree_hull += (r.feasible == hull.feasible(targets) && validate_certificate(cs, r)) ? 1 : 0;
        infeasible_hull += r.feasible ? 0 : 1;
    }
    report("6", agree == n_fine && agree_hull == n_hull, "Fine <=> CHSH",
           std::to_string(agree) + "/" + std::to_string(n_fine) + " agree with CHSH (" + std::to_string(infeasible) +
               " infeasible), " + std::to_string(agree_hull) + "/" + std::to_string(n_hull) +
               " agree with vertex oracle (" + std::to_string(infeasible_hull) + " infeasible)");
}

void criterion7() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    const int n = 200;
    double unitarity = 0.0, normalization = 0.0, fidelity_min = 1.0, overlap = 0.0;
    for (int i = 0; i < n; ++i) {
        const UnitaryOp dil = measurement_dilation(pauli_xz_measurement(BlochAngle(oracle::random_angle(rng))));
        const UnitaryOp rot = y_rotation(oracle::random_angle(rng) - kPi);
        const UnitaryOp both = tensor(rot, UnitaryOp::identity(2)) * dil;
        for (const UnitaryOp *op : {&dil, &rot, &both}) {
            const auto d = static_cast<Eigen::Index>(op->dim());
            unitarity = std::max(unitarity,
                                 (op->matrix().adjoint() * op->matrix() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
        }

        CVector v(4);
        for (int k = 0; k < 4; ++k) {
            v(k) = Complex(g(rng), g(rng));
        }
        const PureState s = PureState::normalized(v);
        double total = 0.0;
        for (double p : born(s, ProjectiveMeasurement::computational(4))) {
            total += p;
        }
        const PureState q = make_bloch_state(BlochAngle(oracle::random_angle(rng)));
        const auto pq = born(q, pauli_xz_measurement(BlochAngle(oracle::random_angle(rng))));
        normalization = std::max({normalization, std::abs(total - 1.0), std::abs(pq[0] + pq[1] - 1.0),
                                  std::abs(s.amplitudes().norm() - 1.0)});

        const PureState in = tensor(make_bloch_state(BlochAngle(oracle::random_angle(rng))), PureState::basis(2, 0));
        fidelity_min = std::min(fidelity_min, fidelity(dil.adjoint().apply(dil.apply(in)), in));

        const double t = oracle::random_angle(rng), w = oracle::random_angle(rng);
        overlap = std::max(overlap, std::abs(fidelity(make_bloch_state(BlochAngle(t)), make_bloch_state(BlochAngle(w))) -
                                             std::pow(std::cos((t - w) / 2), 2)));
    }
    report("7",
           unitarity <= kPremiseTol && normalization <= kPremiseTol && fidelity_min >= 1 - kFidelityTol &&
               overlap <= kPremiseTol,
           "Quantum-core invariants",
           std::to_string(n) + " instances each: unitarity=" + fmt("%.1e", unitarity) + " normalization=" +
               fmt("%.1e", normalization) + " min_undo_fidelity=1-" + fmt("%.1e", 1 - fidelity_min) +
               " overlap_law=" + fmt("%.1e", overlap));
}

void criterion8() {
    const CliRun aligned = cli_json({"verify", "of", "--charlie-angle", "0"});
    const bool a = report("8a", aligned.code == cli::kExitNegative && aligned.doc.value("verdict", "") == "joint_exists",
                          "OF with Charlie aligned to Debbie",
                          "verdict=" + aligned.doc.value("verdict", std::string("?")) +
                              " chsh=" + fmt("%.12f", aligned.doc.value("chsh", 0.0)) +
                              " exit=" + std::to_string(aligned.code));
    const CliRun product = cli_json({"verify", "lf", "--shared-state", "product"});
    const bool b = report("8b", product.code == cli::kExitNegative && product.doc.value("verdict", "") == "joint_exists",
                          "LF with product state",
                          "verdict=" + product.doc.value("verdict", std::string("?")) +
                              " exit=" + std::to_string(product.code));
    report("8", a && b, "Negative controls", std::string(a ? "8a ok" : "8a failed") + (b ? ", 8b ok" : ", 8b failed"));
}

}  // namespace

int main() {
    const auto guarded = [](const char *id, void (*f)()) {
        try {
            f();
        } catch (const std::exception &e) {
            report(id, false, "exception", e.what());
        }
    };
    guarded("1", criterion1);
    guarded("2", criterion2);
    guarded("3", criterion3);
    guarded("4", criterion4);
    guarded("5", criterion5);
    guarded("6", criterion6);
    guarded("7", criterion7);
    guarded("8", criterion8);
    std::printf("%d criterion line(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}

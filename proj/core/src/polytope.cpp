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

#include "ewfnogo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ewfnogo/quantum.hpp"

namespace ewfnogo {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
            return std::numeric_limits<std::size_t>::max();
        }
        r *= base;
    }
    return r;
}

void check_shape(const ScenarioShape &shape) {
    if (shape.n_settings_alice == 0 || shape.n_settings_bob == 0 || shape.n_outcomes_alice == 0 ||
        shape.n_outcomes_bob == 0) {
        throw std::invalid_argument("ScenarioShape: all ranges must be >= 1");
    }
}

void check_matches(const Behavior &b, const ScenarioShape &shape) {
    check_shape(shape);
    const auto &s = b.settings();
    const auto &o = b.outcomes();
    if (s.size() != 2 || o.size() != 2 || s[0].cardinality != shape.n_settings_alice ||
        s[1].cardinality != shape.n_settings_bob || o[0].cardinality != shape.n_outcomes_alice ||
        o[1].cardinality != shape.n_outcomes_bob) {
        throw std::invalid_argument("behavior does not match the scenario shape");
    }
}

}  // namespace

std::size_t ScenarioShape::vertex_count() const {
    const std::size_t a = checked_pow(n_outcomes_alice, n_settings_alice);
    const std::size_t b = checked_pow(n_outcomes_bob, n_settings_bob);
    if (b != 0 && a > std::numeric_limits<std::size_t>::max() / b) {
        return std::numeric_limits<std::size_t>::max();
    }
    return a * b;
}

DeterministicStrategy strategy_at(const ScenarioShape &shape, std::size_t index) {
    check_shape(shape);
    if (index >= shape.vertex_count()) {
        throw std::out_of_range("strategy_at: index out of range");
    }
    DeterministicStrategy s;
    s.alice_map.resize(shape.n_settings_alice);
    s.bob_map.resize(shape.n_settings_bob);
    for (std::size_t y = shape.n_settings_bob; y-- > 0;) {
        s.bob_map[y] = index % shape.n_outcomes_bob;
        index /= shape.n_outcomes_bob;
    }
    for (std::size_t x = shape.n_settings_alice; x-- > 0;) {
        s.alice_map[x] = index % shape.n_outcomes_alice;
        index /= shape.n_outcomes_alice;
    }
    return s;
}

Behavior strategy_behavior(const ScenarioShape &shape, const DeterministicStrategy &strategy) {
    check_shape(shape);
    if (strategy.alice_map.size() != shape.n_settings_alice || strategy.bob_map.size() != shape.n_settings_bob) {
        throw std::invalid_argument("strategy is not total on the declared settings");
    }
    std::map<SettingTuple, std::vector<double>> table;
    for (std::size_t x = 0; x < shape.n_settings_alice; ++x) {
        for (std::size_t y = 0; y < shape.n_settings_bob; ++y) {
            const std::size_t a = strategy.alice_map[x];
            const std::size_t b = strategy.bob_map[y];
            if (a >= shape.n_outcomes_alice || b >= shape.n_outcomes_bob) {
                throw std::invalid_argument("strategy outcome out of range");
            }
            std::vector<double> row(shape.n_outcomes_alice * shape.n_outcomes_bob, 0.0);
            row[a * shape.n_outcomes_bob + b] = 1.0;
            table[{x, y}] = std::move(row);
        }
    }
    return Behavior({{"x", shape.n_settings_alice}, {"y", shape.n_settings_bob}},
                    {{"alice", shape.n_outcomes_alice}, {"bob", shape.n_outcomes_bob}}, std::move(table));
}

std::vector<Behavior> enumerate_vertices(const ScenarioShape &shape) {
    check_shape(shape);
    const std::size_t n = shape.vertex_count();
    if (n > kMaxVertices) {
        throw std::length_error("enumerate_vertices: more than 10^6 deterministic strategies");
    }
    std::vector<Behavior> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(strategy_behavior(shape, strategy_at(shape, i)));
    }
    return out;
}

MarginalConstraintSet membership_constraints(const Behavior &behavior, const ScenarioShape &shape) {
    check_matches(behavior, shape);
    std::vector<Variable> vars;
    for (std::size_t x = 0; x < shape.n_settings_alice; ++x) {
        vars.push_back({"a" + std::to_string(x), shape.n_outcomes_alice});
    }
    for (std::size_t y = 0; y < shape.n_settings_bob; ++y) {
        vars.push_back({"b" + std::to_string(y), shape.n_outcomes_bob});
    }
    std::vector<MarginalConstraint> constraints;
    for (std::size_t x = 0; x < shape.n_settings_alice; ++x) {
        for (std::size_t y = 0; y < shape.n_settings_bob; ++y) {
            std::vector<double> target = behavior.row({x, y});
            for (double &t : target) {
                t = std::max(0.0, t);  // Behavior admits -1e-9 roundoff
            }
            constraints.push_back({{"a" + std::to_string(x), "b" + std::to_string(y)}, std::move(target)});
        }
    }
    return MarginalConstraintSet(std::move(vars), std::move(constraints));
}

FeasibilityResult membership(const Behavior &behavior, const ScenarioShape &shape) {
    if (shape.vertex_count() > kMaxVertices) {
        throw std::length_error("membership: more than 10^6 deterministic strategies");
    }
    return lp_feasibility(membership_constraints(behavior, shape));
}

std::array<std::array<double, 2>, 2> correlators(const Behavior &behavior, const OutcomeSignMap &signs) {
    check_matches(behavior, ScenarioShape{});
    for (int s : {signs.alice[0], signs.alice[1], signs.bob[0], signs.bob[1]}) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("outcome sign map must assign +1 or -1");
        }
    }
    std::array<std::array<double, 2>, 2> e{};
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            const std::vector<double> &p = behavior.row({x, y});
            double v = 0.0;
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    v += signs.alice[a] * signs.bob[b] * p[2 * a + b];
                }
            }
            e[x][y] = v;
        }
    }
    return e;
}

double chsh_value(const Behavior &behavior, const OutcomeSignMap &signs) {
    const auto e = correlators(behavior, signs);
    const double terms[] = {e[0][0], e[0][1], e[1][0], e[1][1]};
    double best = 0.0;
    for (std::size_t minus = 0; minus < 4; ++minus) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            s += i == minus ? -terms[i] : terms[i];
        }
        best = std::max(best, std::abs(s));
    }
    return best;
}

Behavior pm_to_bell(const Behavior &pm) {
    const auto &s = pm.settings();
    const auto &o = pm.outcomes();
    if (s.size() != 2 || s[0].cardinality != 4 || s[1].cardinality != 2 || o.size() != 1 || o[0].cardinality != 2) {
        throw std::invalid_argument("prepare-and-measure behavior must have 4 preparations, 2 binary measurements");
    }
    for (std::size_t m = 0; m < 2; ++m) {
        for (std::size_t k = 0; k < 2; ++k) {
            const double lhs = 0.5 * pm.row({0, m})[k] + 0.5 * pm.row({1, m})[k];
            const double rhs = 0.5 * pm.row({2, m})[k] + 0.5 * pm.row({3, m})[k];
            if (std::abs(lhs - rhs) > kLpTol) {
                throw std::domain_error("preparations violate the 1/2-1/2 operational equivalence");
            }
        }
    }
    std::map<SettingTuple, std::vector<double>> table;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            std::vector<double> row(4);
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    row[2 * a + b] = 0.5 * pm.row({2 * x + a, y})[b];
                }
            }
            table[{x, y}] = std::move(row);
        }
    }
    return Behavior({{"x", 2}, {"y", 2}}, {{"alice", 2}, {"bob", 2}}, std::move(table));
}

double nc_inequality_value(const Behavior &pm_behavior) { return chsh_value(pm_to_bell(pm_behavior)); }

}  // namespace ewfnogo

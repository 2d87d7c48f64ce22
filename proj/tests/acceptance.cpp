// Copyright 2026 The kbudget Authors
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

// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit code is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kbudget/bounds.hpp"
#include "kbudget/circuit.hpp"
#include "kbudget/experiments.hpp"
#include "kbudget/random.hpp"
#include "kbudget/synth.hpp"

#ifndef KBUDGET_CLI_PATH
#error "KBUDGET_CLI_PATH must name the kbudget executable"
#endif

namespace {

using namespace kbudget;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

Verdict bound_anchors() {
    const auto start = Clock::now();
    const bool values = k_lower(2) == 1 && k_lower(3) == 2 && k_lower(4) == 3 &&
                        k_lower(10) == 102 && k_lower(20) == 52428 &&
                        k_upper(10) == 491 && k_upper(20) == 502443;
    const double t = seconds_since(start);
    return {values && t < 1.0, "K_L(2,3,4,10,20)=" + k_lower(2).str() + "," + k_lower(3).str() +
                                   "," + k_lower(4).str() + "," + k_lower(10).str() + "," +
                                   k_lower(20).str() + " K_U(10,20)=" + k_upper(10).str() + "," +
                                   k_upper(20).str() + " t=" + fmt(t) + "s"};
}

Verdict shor_anchor() {
    const auto start = Clock::now();
    const ShorEstimate s = shor_estimate(2048);
    const bool estimate = s.logical_qubits == 4099 && s.circuit_depth == BigInt(274877906944LL) &&
                          s.circuit_depth == (BigInt(1) << 38);
    const BigInt lower = k_lower(4099);
    const bool huge = lower > (BigInt(1) << 4090);
    const double t = seconds_since(start);
    const auto bits = boost::multiprecision::msb(lower) + 1;
    return {estimate && huge && t < 1.0,
            "qubits=" + s.logical_qubits.str() + " depth=" + s.circuit_depth.str() +
                " bitlen(K_L(4099))=" + std::to_string(bits) + " (needs > 4090 for > 2^4090)" +
                " t=" + fmt(t) + "s"};
}

Verdict thermalization_bound() {
    const auto start = Clock::now();
    bool ok = true;
    double worst = -1.0;
    for (double p : {0.3, 0.5}) {
        for (double c : {0.5, 0.9, 0.99}) {
            const auto r = thermalize({1.0, 0.0}, p, std::acos(c), 200, kUnlimitedBudget,
                                      BudgetPolicy::EitherExhausted, 1e-9);
            for (std::size_t m = 0; m < r.distances.size(); ++m) {
                const double excess = r.distances[m] - std::pow(c, static_cast<double>(m));
                worst = std::max(worst, excess);
                ok = ok && excess <= 1e-9;
            }
        }
    }
    const double t = seconds_since(start);
    return {ok && t < 10.0, "max(D_m - cos^m)=" + fmt(worst) + " t=" + fmt(t) + "s"};
}

Verdict thermalization_cost() {
    const double per_digit = k_thermal_per_digit(0.99);
    return {std::abs(per_digit - 687.2) <= 0.5, "per_digit=" + fmt(per_digit)};
}

Verdict ghz_under_two() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (int n : {3, 10, 20}) {
        const RunResult r = run(ghz_chain(n), 2, BudgetPolicy::EitherExhausted, kDefaultSeed);
        Amplitudes<double> ghz = Amplitudes<double>::Zero(r.state.dim());
        ghz[0] = ghz[ghz.size() - 1] = 1.0 / std::sqrt(2.0);
        const double f = fidelity(r.state, PureState<double>::from_amplitudes(ghz));
        ok = ok && r.suppressions.empty() && f >= 1.0 - 1e-10;
        detail += "n=" + std::to_string(n) + ":F=" + fmt(f) +
                  ",supp=" + std::to_string(r.suppressions.size()) + " ";
    }
    const double t = seconds_since(start);
    return {ok && t < 30.0, detail + "t=" + fmt(t) + "s"};
}

Verdict oracle_equivalence() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (BudgetPolicy p : {BudgetPolicy::EitherExhausted, BudgetPolicy::BothExhausted}) {
        const OracleSuiteReport r = oracle_equivalence_suite(200, 3, 2, p, kDefaultSeed, 1e-10);
        ok = ok && r.pass() && r.trials == 200;
        detail += std::string(policy_name(p)) + ":maxdev=" + fmt(r.max_deviation) + " ";
    }
    const double t = seconds_since(start);
    return {ok && t < 60.0, detail + "t=" + fmt(t) + "s"};
}

Verdict reversibility() {
    const ReversibilitySuiteReport suite = reversibility_suite(100, kDefaultSeed);
    const ReversibilityReport counter =
        reversibility_check(ghz_chain(3), 3, BudgetPolicy::EitherExhausted, 1e-9);
    const bool counter_ok = !counter.within_half_budget() && !counter.reversible;
    return {suite.pass() && counter_ok,
            "premise=" + std::to_string(suite.premise_count) +
                " counterexamples=" + std::to_string(suite.counterexamples) +
                " ghz3@K=3:F=" + fmt(counter.fidelity)};
}

Verdict cluster() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (auto [rows, cols] : {std::pair{1, 1}, std::pair{2, 2}}) {
        const ClusterPatch patch = hex_cluster(rows, cols);
        const auto good = cluster_stabilizer_check(patch, 3, BudgetPolicy::EitherExhausted, 1e-10);
        const auto bad = cluster_stabilizer_check(patch, 1, BudgetPolicy::EitherExhausted, 1e-10);
        ok = ok && good.all_pass() && !bad.all_pass();
        detail += std::to_string(rows) + "x" + std::to_string(cols) +
                  ":K3_fail=" + std::to_string(good.failing.size()) +
                  ",K1_fail=" + std::to_string(bad.failing.size()) + " ";
    }
    const double t = seconds_since(start);
    return {ok && t < 10.0, detail + "t=" + fmt(t) + "s"};
}

Verdict two_qubit_tightness() {
    double worst = 1.0;
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
        Rng rng(derive_seed(kDefaultSeed, "schmidt-target", static_cast<std::uint64_t>(t)));
        const PureState<double> target = haar_state(2, rng);
        const SchmidtPrep prep = schmidt_2q_prep(target);
        const RunResult r = run(prep.circuit, 1, BudgetPolicy::EitherExhausted, 0);
        const double f = fidelity(r.state, target);
        worst = std::min(worst, f);
        ok = ok && f >= 1.0 - 1e-9 && r.ledger.max_usage() <= 1 && r.suppressions.empty();
    }
    return {ok, "min_fidelity=" + fmt(worst)};
}

Verdict synthesis_probe() {
    const Ansatz ansatz = Ansatz::three_qubit_default();
    SynthesisOptions options;
    options.restarts = 8;
    std::vector<double> values;
    bool gradients = true;
    for (int t = 0; t < 30; ++t) {
        Rng rng(derive_seed(kDefaultSeed, "synth-target", static_cast<std::uint64_t>(t)));
        const SynthesisResult r = synthesize(haar_state(3, rng), ansatz, options,
                                             derive_seed(kDefaultSeed, "synth-run",
                                                         static_cast<std::uint64_t>(t)));
        values.push_back(r.infidelity);
        gradients = gradients && r.gradient_check_pass;
    }
    std::sort(values.begin(), values.end());
    const double median = 0.5 * (values[14] + values[15]);
    const auto usage = layout_usage(ansatz);
    const bool layout_ok = *std::max_element(usage.begin(), usage.end()) <= 2;
    return {median <= 1e-3 && gradients && layout_ok,
            "median_infidelity=" + fmt(median) + " gradients=" + (gradients ? "ok" : "bad")};
}

std::string capture(const std::string &command, int &status) {
    std::string out;
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    status = pclose(pipe);
    return out;
}

Verdict determinism() {
    const std::string exe = KBUDGET_CLI_PATH;
    const std::vector<std::string> commands{
        "bounds 2 3 4 10 20",
        "bounds 10 20 --format json --shor 2048",
        "ghz 10 --k 2",
        "ghz 4 --k 1 --policy both",
        "thermalize --p 0.3 --cos-phi 0.9 --m 50",
        "thermalize --m 20 --k 6 --format json",
        "cluster --rows 2 --cols 2 --k 3",
        "cluster --k 1",
        "synth --n 2 --trials 3 --seed 5",
        "revcheck --ghz 3 --k 3",
        "verify oracle --seed 7",
        "verify reversibility --seed 7",
        "verify cluster --k 3",
        "verify synth --n 2 --trials 10",
    };
    int mismatches = 0;
    for (const auto &cmd : commands) {
        int s1 = 0, s2 = 0;
        const std::string a = capture("'" + exe + "' " + cmd + " 2>/dev/null", s1);
        const std::string b = capture("'" + exe + "' " + cmd + " 2>/dev/null", s2);
        if (a != b || s1 != s2 || a.empty()) {
            ++mismatches;
            std::cerr << "  nondeterministic or empty: " << cmd << "\n";
        }
    }
    return {mismatches == 0, std::to_string(commands.size()) + " commands, " +
                                 std::to_string(mismatches) + " mismatches"};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Verdict()> check;
};

} // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> criteria{
        {1, "bound anchors", bound_anchors},
        {2, "shor anchor", shor_anchor},
        {3, "thermalization bound", thermalization_bound},
        {4, "thermalization cost per digit", thermalization_cost},
        {5, "ghz under K=2", ghz_under_two},
        {6, "oracle equivalence", oracle_equivalence},
        {7, "reversibility", reversibility},
        {8, "cluster stabilizers", cluster},
        {9, "two-qubit tightness", two_qubit_tightness},
        {10, "synthesis probe", synthesis_probe},
        {11, "cli determinism", determinism},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::stoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--only N]\n";
            return 2;
        }
    }
    int failures = 0;
    for (const Criterion &c : criteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        Verdict v{false, ""};
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << c.id << " (" << c.name << "): " << (v.pass ? "PASS" : "FAIL")
                  << "  " << v.detail << std::endl;
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

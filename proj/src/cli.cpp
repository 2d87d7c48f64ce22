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

#include "kbudget/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kbudget/bounds.hpp"
#include "kbudget/circuit.hpp"
#include "kbudget/circuit_json.hpp"
#include "kbudget/experiments.hpp"
#include "kbudget/random.hpp"
#include "kbudget/synth.hpp"

namespace kbudget {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

using nlohmann::json;

Budget parse_budget(const std::string &text) {
    if (text == "unlimited" || text == "inf") {
        return kUnlimitedBudget;
    }
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || value < 0) {
        throw ParameterError("--k expects a non-negative integer or 'unlimited'");
    }
    return static_cast<Budget>(value);
}

struct CommonOptions {
    std::string k;
    std::string policy;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string format;
    double tol = kDefaultTolerance;
};

void add_common(CLI::App *cmd, CommonOptions &o, const std::string &default_k,
                const std::string &default_format) {
    o.k = default_k;
    o.policy = "either";
    o.format = default_format;
    cmd->add_option("--k", o.k, "Per-qubit budget K, or 'unlimited'")
        ->capture_default_str();
    cmd->add_option("--policy", o.policy, "Suppression policy")
        ->check(CLI::IsMember({"either", "both"}))
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "Equality tolerance")->capture_default_str();
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

struct Outcome {
    std::string text;
    bool pass = true;
};

// ---------------------------------------------------------------------------

Outcome cmd_bounds(const std::vector<int> &ns, int shor_bits,
                   const CommonOptions &o) {
    if (ns.empty() && shor_bits == 0) {
        throw ParameterError("bounds needs at least one n");
    }
    std::vector<BoundReport> rows;
    for (int n : ns) {
        if (n < 1) {
            throw ParameterError("bounds: n must be at least 1");
        }
        rows.push_back(bound_report(n));
    }
    if (o.format == "csv") {
        return {bounds_csv(rows), true};
    }
    json j = {{"schema", "1"}, {"bounds", json::array()}};
    bool ordered = true;
    for (const auto &r : rows) {
        json row = to_json(r);
        if (r.n >= 2) {
            const BigRational ratio = ratio_gap(r.n);
            row["ratio"] = ratio.str();
            row["ratio_approx"] = static_cast<double>(ratio);
            row["half_n"] = r.n / 2.0;
        }
        ordered = ordered && (r.n < 2 || r.k_lower <= r.k_upper);
        j["bounds"].push_back(std::move(row));
    }
    if (shor_bits > 0) {
        const ShorEstimate s = shor_estimate(shor_bits);
        j["shor"] = {{"n_bits", shor_bits},
                     {"logical_qubits", s.logical_qubits.str()},
                     {"circuit_depth", s.circuit_depth.str()},
                     {"k_threshold", s.k_threshold.str()}};
    }
    j["pass"] = ordered;
    return {dump(j), ordered};
}

Outcome cmd_ghz(int n, const CommonOptions &o) {
    const Budget cap = parse_budget(o.k);
    const Circuit c = ghz_chain(n);
    const RunResult r = run(c, cap, policy_from_name(o.policy), o.seed);
    Amplitudes<double> ghz = Amplitudes<double>::Zero(r.state.dim());
    ghz[0] += 1.0 / std::sqrt(2.0);
    ghz[ghz.size() - 1] += 1.0 / std::sqrt(2.0);
    const double f =
        fidelity(r.state, PureState<double>::from_amplitudes(ghz / ghz.norm()));
    const bool pass = f >= 1.0 - o.tol;
    json log = json::array();
    for (const auto &s : r.suppressions) {
        log.push_back(to_json(s));
    }
    json j = {{"schema", "1"},
              {"experiment", "ghz"},
              {"n", n},
              {"k", budget_to_json(cap)},
              {"policy", o.policy},
              {"fidelity", f},
              {"suppressions", r.suppressions.size()},
              {"suppression_log", std::move(log)},
              {"usage", std::vector<Budget>(r.ledger.usages().begin(),
                                            r.ledger.usages().end())},
              {"pass", pass}};
    return {dump(j), pass};
}

Outcome cmd_thermalize(double p, double cos_phi, int m, double d0, double k0_re,
                       double k0_im, double bound_tol, const CommonOptions &o) {
    if (!(cos_phi >= 0.0 && cos_phi < 1.0)) {
        throw ParameterError("--cos-phi must lie in [0, 1); cos(phi) = 1 means "
                             "no interaction and never converges");
    }
    const InitialQubitParams init{d0, {k0_re, k0_im}};
    const ThermalizationReport r =
        thermalize(init, p, std::acos(cos_phi), m, parse_budget(o.k),
                   policy_from_name(o.policy), bound_tol);
    if (o.format == "csv") {
        return {to_csv(r), r.pass()};
    }
    json j = to_json(r);
    if (cos_phi > 0.0) {
        j["k_thermal_per_digit"] = k_thermal_per_digit(cos_phi);
    }
    return {dump(j), r.pass()};
}

json patch_json(const ClusterPatch &patch) {
    json edges = json::array();
    for (const auto &[a, b] : patch.edges) {
        edges.push_back({a, b});
    }
    return {{"num_qubits", patch.circuit.num_qubits},
            {"edges", std::move(edges)},
            {"max_degree", patch.max_degree()}};
}

Outcome cmd_cluster(int rows, int cols, const CommonOptions &o) {
    const ClusterPatch patch = hex_cluster(rows, cols);
    const StabilizerReport r = cluster_stabilizer_check(
        patch, parse_budget(o.k), policy_from_name(o.policy), o.tol);
    json j = to_json(r);
    j["schema"] = "1";
    j["experiment"] = "cluster";
    j["rows"] = rows;
    j["cols"] = cols;
    j["policy"] = o.policy;
    j["patch"] = patch_json(patch);
    return {dump(j), r.all_pass()};
}

Ansatz ansatz_for(int n, const std::string &layout) {
    if (layout.empty()) {
        if (n == 2) {
            return Ansatz::two_qubit_default();
        }
        if (n == 3) {
            return Ansatz::three_qubit_default();
        }
        throw ParameterError("no default layout for n = " + std::to_string(n) +
                             "; pass --layout");
    }
    Ansatz a{n, {}};
    std::stringstream ss(layout);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        const auto dash = pair.find('-');
        if (dash == std::string::npos) {
            throw ParameterError("--layout expects pairs like 0-1,1-2");
        }
        a.cnot_layout.emplace_back(std::stoi(pair.substr(0, dash)),
                                   std::stoi(pair.substr(dash + 1)));
    }
    a.validate();
    return a;
}

Outcome cmd_synth(int n, int trials, const std::string &layout,
                  const SynthesisOptions &options, const CommonOptions &o) {
    if (trials < 1) {
        throw ParameterError("--trials must be at least 1");
    }
    const Ansatz ansatz = ansatz_for(n, layout);
    json results = json::array();
    std::vector<double> infidelities;
    bool gradients_ok = true;
    int converged = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(o.seed, "synth-target", static_cast<std::uint64_t>(t)));
        const PureState<double> target = haar_state(n, rng);
        const SynthesisResult r = synthesize(
            target, ansatz, options,
            derive_seed(o.seed, "synth-run", static_cast<std::uint64_t>(t)));
        json rj = to_json(r, ansatz);
        rj["trial"] = t;
        results.push_back(std::move(rj));
        infidelities.push_back(r.infidelity);
        gradients_ok = gradients_ok && r.gradient_check_pass;
        converged += r.converged ? 1 : 0;
    }
    json j = {{"schema", "1"},
              {"experiment", "synth"},
              {"probe", true},
              {"num_qubits", n},
              {"trials", trials},
              {"restarts", options.restarts},
              {"seed", o.seed},
              {"converged", converged},
              {"median_infidelity", median(infidelities)},
              {"gradient_check_pass", gradients_ok},
              {"results", std::move(results)}};
    return {dump(j), gradients_ok};
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot read circuit file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

Outcome cmd_revcheck(int ghz_n, const std::string &circuit_path,
                     const CommonOptions &o) {
    const Circuit c = circuit_path.empty() ? ghz_chain(ghz_n) : load_circuit(circuit_path);
    const ReversibilityReport r =
        reversibility_check(c, parse_budget(o.k), policy_from_name(o.policy));
    json j = to_json(r);
    j["policy"] = o.policy;
    j["circuit"] = circuit_path.empty()
                       ? json{{"ghz_chain", ghz_n}}
                       : json{{"file", circuit_path}, {"gates", c.gates.size()}};
    return {dump(j), r.implication_holds()};
}

// --- verify suites ----------------------------------------------------------

std::vector<BudgetPolicy> policies_for(const std::string &policy, bool explicit_policy) {
    if (explicit_policy) {
        return {policy_from_name(policy)};
    }
    return {BudgetPolicy::EitherExhausted, BudgetPolicy::BothExhausted};
}

Outcome verify_oracle(int trials, int n, bool explicit_policy,
                      const CommonOptions &o) {
    const Budget cap = parse_budget(o.k);
    json runs = json::array();
    bool pass = true;
    for (BudgetPolicy p : policies_for(o.policy, explicit_policy)) {
        const OracleSuiteReport r =
            oracle_equivalence_suite(trials, n, cap, p, o.seed, o.tol);
        runs.push_back(to_json(r));
        pass = pass && r.pass();
    }
    return {dump({{"schema", "1"}, {"verify", "oracle"}, {"runs", runs}, {"pass", pass}}),
            pass};
}

Outcome verify_reversibility(int trials, bool explicit_k, bool explicit_policy,
                             const CommonOptions &o) {
    std::optional<Budget> cap;
    if (explicit_k) {
        cap = parse_budget(o.k);
    }
    std::optional<BudgetPolicy> policy;
    if (explicit_policy) {
        policy = policy_from_name(o.policy);
    }
    const ReversibilitySuiteReport suite =
        reversibility_suite(trials, o.seed, cap, policy);
    // GHZ_3 uses qubit 1 twice, so reversal needs 4 and K = 3 is too small.
    const ReversibilityReport counter =
        reversibility_check(ghz_chain(3), 3, BudgetPolicy::EitherExhausted);
    const bool pass = suite.pass() && !counter.reversible;
    json j = {{"schema", "1"},
              {"verify", "reversibility"},
              {"suite", to_json(suite)},
              {"counterexample", to_json(counter)},
              {"pass", pass}};
    return {dump(j), pass};
}

Outcome verify_cluster(const CommonOptions &o) {
    const Budget cap = parse_budget(o.k);
    json patches = json::array();
    bool pass = true;
    for (const auto &[rows, cols] : {std::pair{1, 1}, std::pair{2, 2}}) {
        const ClusterPatch patch = hex_cluster(rows, cols);
        const StabilizerReport r =
            cluster_stabilizer_check(patch, cap, policy_from_name(o.policy), o.tol);
        json pj = to_json(r);
        pj["rows"] = rows;
        pj["cols"] = cols;
        pj["patch"] = patch_json(patch);
        patches.push_back(std::move(pj));
        pass = pass && r.all_pass();
    }
    return {dump({{"schema", "1"},
                  {"verify", "cluster"},
                  {"k", budget_to_json(cap)},
                  {"patches", patches},
                  {"pass", pass}}),
            pass};
}

Outcome verify_synth(int n, int trials, const SynthesisOptions &options,
                     const CommonOptions &o) {
    // Two-qubit targets via the Schmidt construction.
    int schmidt_ok = 0;
    double schmidt_min_fidelity = 1.0;
    const int schmidt_trials = 100;
    for (int t = 0; t < schmidt_trials; ++t) {
        Rng rng(derive_seed(o.seed, "schmidt-target", static_cast<std::uint64_t>(t)));
        const PureState<double> target = haar_state(2, rng);
        const SchmidtPrep prep = schmidt_2q_prep(target);
        const RunResult r = run(prep.circuit, 1, BudgetPolicy::EitherExhausted, 0);
        const double f = fidelity(r.state, target);
        schmidt_min_fidelity = std::min(schmidt_min_fidelity, f);
        schmidt_ok += (f >= 1.0 - 1e-9 && r.ledger.max_usage() <= 1) ? 1 : 0;
    }
    Outcome probe = cmd_synth(n, trials, "", options, o);
    const json pj = json::parse(probe.text);
    const double med = pj["median_infidelity"].get<double>();
    const bool probe_ok = pj["gradient_check_pass"].get<bool>() &&
                          (n == 2 ? pj["converged"].get<int>() == trials : med <= 1e-3);
    const bool pass = probe_ok && schmidt_ok == schmidt_trials;
    json j = {{"schema", "1"},
              {"verify", "synth"},
              {"probe", true},
              {"schmidt", {{"trials", schmidt_trials},
                           {"passed", schmidt_ok},
                           {"min_fidelity", schmidt_min_fidelity}}},
              {"variational", {{"num_qubits", n},
                               {"trials", trials},
                               {"converged", pj["converged"]},
                               {"median_infidelity", med},
                               {"gradient_check_pass", pj["gradient_check_pass"]}}},
              {"pass", pass}};
    return {dump(j), pass};
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"Simulator for circuits whose qubits have a bounded number of "
                 "two-qubit interactions"};
    app.name("kbudget");
    app.require_subcommand(1);

    std::function<Outcome()> action;

    CommonOptions bounds_o;
    std::vector<int> bound_ns;
    int shor_bits = 0;
    auto *bounds = app.add_subcommand("bounds", "Exact per-qubit budget bounds K_n");
    bounds->add_option("n", bound_ns, "Qubit counts");
    bounds->add_option("--shor", shor_bits, "Also report the factoring estimate for this key size");
    add_common(bounds, bounds_o, "unlimited", "csv");
    bounds->callback([&] { action = [&] { return cmd_bounds(bound_ns, shor_bits, bounds_o); }; });

    CommonOptions ghz_o;
    int ghz_n = 3;
    auto *ghz = app.add_subcommand("ghz", "Run the GHZ chain under budget K");
    ghz->add_option("n", ghz_n, "Number of qubits")->required();
    add_common(ghz, ghz_o, "2", "json");
    ghz->callback([&] { action = [&] { return cmd_ghz(ghz_n, ghz_o); }; });

    CommonOptions th_o;
    double th_p = 0.5, th_cos = 0.99, th_d0 = 1.0, th_k0_re = 0.0, th_k0_im = 0.0;
    double th_bound_tol = 1e-9;
    int th_m = 100;
    auto *therm = app.add_subcommand("thermalize", "Collision-model thermalization trace");
    therm->add_option("--p", th_p, "Bath ground-state population")->capture_default_str();
    therm->add_option("--cos-phi", th_cos, "Partial swap strength cos(phi)")->capture_default_str();
    therm->add_option("--m", th_m, "Number of collisions")->capture_default_str();
    therm->add_option("--d0", th_d0, "Initial excited population")->capture_default_str();
    therm->add_option("--k0-re", th_k0_re, "Initial coherence, real part")->capture_default_str();
    therm->add_option("--k0-im", th_k0_im, "Initial coherence, imaginary part")->capture_default_str();
    therm->add_option("--bound-tol", th_bound_tol, "Slack on the exponential bound")->capture_default_str();
    add_common(therm, th_o, "unlimited", "csv");
    therm->callback([&] {
        action = [&] {
            return cmd_thermalize(th_p, th_cos, th_m, th_d0, th_k0_re, th_k0_im,
                                  th_bound_tol, th_o);
        };
    });

    CommonOptions cl_o;
    int cl_rows = 1, cl_cols = 1;
    auto *cluster = app.add_subcommand("cluster", "Honeycomb cluster state and stabilizer check");
    cluster->add_option("--rows", cl_rows, "Hexagon rows")->capture_default_str();
    cluster->add_option("--cols", cl_cols, "Hexagon columns")->capture_default_str();
    add_common(cluster, cl_o, "3", "json");
    cluster->callback([&] { action = [&] { return cmd_cluster(cl_rows, cl_cols, cl_o); }; });

    CommonOptions sy_o;
    int sy_n = 3, sy_trials = 1;
    std::string sy_layout;
    SynthesisOptions sy_opts;
    auto *synth = app.add_subcommand("synth", "Variational synthesis probe on Haar targets");
    synth->add_option("--n", sy_n, "Number of qubits")->capture_default_str();
    synth->add_option("--trials", sy_trials, "Number of random targets")->capture_default_str();
    synth->add_option("--layout", sy_layout, "CNOT layout, e.g. 0-1,1-2,0-2");
    synth->add_option("--restarts", sy_opts.restarts, "Starts per target")->capture_default_str();
    synth->add_option("--max-iters", sy_opts.max_iters, "Iterations per start")->capture_default_str();
    add_common(synth, sy_o, "unlimited", "json");
    synth->callback([&] {
        action = [&] { return cmd_synth(sy_n, sy_trials, sy_layout, sy_opts, sy_o); };
    });

    CommonOptions rv_o;
    int rv_ghz = 3;
    std::string rv_circuit;
    auto *revcheck = app.add_subcommand("revcheck", "Run C then its inverse under one ledger");
    revcheck->add_option("--ghz", rv_ghz, "Use the GHZ chain on this many qubits")->capture_default_str();
    revcheck->add_option("--circuit", rv_circuit, "Circuit JSON file");
    add_common(revcheck, rv_o, "4", "json");
    revcheck->callback([&] { action = [&] { return cmd_revcheck(rv_ghz, rv_circuit, rv_o); }; });

    CommonOptions vf_o;
    std::string vf_suite;
    int vf_trials = -1, vf_n = -1;
    SynthesisOptions vf_synth;
    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", vf_suite, "Suite to run")
        ->required()
        ->check(CLI::IsMember({"oracle", "reversibility", "cluster", "synth"}));
    verify->add_option("--trials", vf_trials, "Number of random trials");
    verify->add_option("--n", vf_n, "Qubit count (oracle, synth)");
    add_common(verify, vf_o, "", "json");
    verify->callback([&] {
        action = [&]() -> Outcome {
            const bool explicit_k = verify->count("--k") > 0;
            const bool explicit_policy = verify->count("--policy") > 0;
            if (vf_suite == "oracle") {
                if (!explicit_k) {
                    vf_o.k = "2";
                }
                return verify_oracle(vf_trials < 0 ? 200 : vf_trials,
                                     vf_n < 0 ? 3 : vf_n, explicit_policy, vf_o);
            }
            if (vf_suite == "reversibility") {
                return verify_reversibility(vf_trials < 0 ? 100 : vf_trials,
                                            explicit_k, explicit_policy, vf_o);
            }
            if (vf_suite == "cluster") {
                if (!explicit_k) {
                    vf_o.k = "3";
                }
                return verify_cluster(vf_o);
            }
            const int n = vf_n < 0 ? 3 : vf_n;
            return verify_synth(n, vf_trials < 0 ? (n == 2 ? 100 : 30) : vf_trials,
                                vf_synth, vf_o);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    CommonOptions *common[] = {&bounds_o, &ghz_o, &th_o, &cl_o, &sy_o, &rv_o, &vf_o};
    std::string out_path;
    for (auto *c : common) {
        if (!c->out.empty()) {
            out_path = c->out;
        }
    }
    try {
        const Outcome result = action();
        if (out_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                throw ParameterError("cannot write " + out_path);
            }
            file << result.text;
        }
        return result.pass ? kExitPass : kExitFail;
    } catch (const Error &e) {
        err << "kbudget: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "kbudget: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, out, err);
}

} // namespace kbudget

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

#include "kbudget/synth.hpp"

#include <cmath>
#include <numbers>

#include "kbudget/random.hpp"

namespace kbudget {

void Ansatz::validate() const {
    detail::check_capacity(num_qubits, kDefaultQubitCap);
    for (const auto &[c, t] : cnot_layout) {
        if (c < 0 || t < 0 || c >= num_qubits || t >= num_qubits || c == t) {
            throw InvalidGateError("ansatz CNOT (" + std::to_string(c) + ", " +
                                   std::to_string(t) + ") is invalid");
        }
    }
}

Ansatz Ansatz::two_qubit_default() { return {2, {{0, 1}}}; }

Ansatz Ansatz::three_qubit_default() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }

std::vector<Budget> layout_usage(const Ansatz &ansatz) {
    std::vector<Budget> usage(static_cast<std::size_t>(ansatz.num_qubits), 0);
    for (const auto &[c, t] : ansatz.cnot_layout) {
        ++usage[static_cast<std::size_t>(c)];
        ++usage[static_cast<std::size_t>(t)];
    }
    return usage;
}

namespace {

void check_params(const Ansatz &ansatz, const Eigen::VectorXd &params) {
    if (params.size() != ansatz.num_params()) {
        throw DimensionMismatchError("ansatz expects " +
                                     std::to_string(ansatz.num_params()) +
                                     " parameters");
    }
}

Unitary1Q<double> euler(double a, double b, double c) {
    return rz_matrix(a) * ry_matrix(b) * rz_matrix(c);
}

} // namespace

Circuit ansatz_circuit(const Ansatz &ansatz, const Eigen::VectorXd &params) {
    ansatz.validate();
    check_params(ansatz, params);
    Circuit circuit(ansatz.num_qubits);
    const int n = ansatz.num_qubits;
    for (int l = 0; l < ansatz.num_layers(); ++l) {
        for (int q = 0; q < n; ++q) {
            const Eigen::Index base = 3 * (l * n + q);
            circuit.add(Gate::rz(q, params[base + 2]));
            circuit.add(Gate::ry(q, params[base + 1]));
            circuit.add(Gate::rz(q, params[base]));
        }
        if (l + 1 < ansatz.num_layers()) {
            const auto [c, t] = ansatz.cnot_layout[static_cast<std::size_t>(l)];
            circuit.add(Gate::cnot(c, t));
        }
    }
    return circuit;
}

PureState<double> prepare(const Ansatz &ansatz, const Eigen::VectorXd &params) {
    check_params(ansatz, params);
    const int n = ansatz.num_qubits;
    PureState<double> psi(n);
    auto &amps = psi.mutable_amplitudes();
    const Unitary2Q<double> cnot = cnot_matrix();
    for (int l = 0; l < ansatz.num_layers(); ++l) {
        for (int q = 0; q < n; ++q) {
            const Eigen::Index base = 3 * (l * n + q);
            detail::apply_1q_kernel<double>(
                amps, euler(params[base], params[base + 1], params[base + 2]), q);
        }
        if (l + 1 < ansatz.num_layers()) {
            const auto [c, t] = ansatz.cnot_layout[static_cast<std::size_t>(l)];
            detail::apply_2q_kernel<double>(amps, cnot, c, t);
        }
    }
    return psi;
}

double infidelity(const PureState<double> &target, const Ansatz &ansatz,
                  const Eigen::VectorXd &params) {
    return 1.0 - fidelity(target, prepare(ansatz, params));
}

Eigen::VectorXd infidelity_gradient(const PureState<double> &target,
                                    const Ansatz &ansatz,
                                    const Eigen::VectorXd &params) {
    Eigen::VectorXd grad(params.size());
    Eigen::VectorXd shifted = params;
    const double half_pi = std::numbers::pi / 2;
    for (Eigen::Index j = 0; j < params.size(); ++j) {
        shifted[j] = params[j] + half_pi;
        const double plus = infidelity(target, ansatz, shifted);
        shifted[j] = params[j] - half_pi;
        const double minus = infidelity(target, ansatz, shifted);
        shifted[j] = params[j];
        grad[j] = 0.5 * (plus - minus);
    }
    return grad;
}

Eigen::VectorXd central_difference_gradient(const PureState<double> &target,
                                            const Ansatz &ansatz,
                                            const Eigen::VectorXd &params,
                                            double step) {
    Eigen::VectorXd grad(params.size());
    Eigen::VectorXd shifted = params;
    for (Eigen::Index j = 0; j < params.size(); ++j) {
        shifted[j] = params[j] + step;
        const double plus = infidelity(target, ansatz, shifted);
        shifted[j] = params[j] - step;
        const double minus = infidelity(target, ansatz, shifted);
        shifted[j] = params[j];
        grad[j] = (plus - minus) / (2 * step);
    }
    return grad;
}

double gradient_check(const PureState<double> &target, const Ansatz &ansatz,
                      const Eigen::VectorXd &params) {
    const Eigen::VectorXd exact = infidelity_gradient(target, ansatz, params);
    const Eigen::VectorXd numeric =
        central_difference_gradient(target, ansatz, params);
    const double scale = std::max(numeric.cwiseAbs().maxCoeff(), 1e-8);
    return (exact - numeric).cwiseAbs().maxCoeff() / scale;
}

namespace {

struct LocalResult {
    Eigen::VectorXd params;
    double value;
    int iterations;
};

// BFGS on the inverse Hessian with an Armijo backtracking line search;
// resets to steepest descent whenever the direction stops descending.
LocalResult descend(const PureState<double> &target, const Ansatz &ansatz,
                    Eigen::VectorXd x, const SynthesisOptions &options) {
    const Eigen::Index dim = x.size();
    double f = infidelity(target, ansatz, x);
    Eigen::VectorXd g = infidelity_gradient(target, ansatz, x);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
    int it = 0;
    bool fresh = true;
    for (; it < options.max_iters && f > options.stop_tol; ++it) {
        Eigen::VectorXd d = -h * g;
        double slope = g.dot(d);
        if (!(slope < 0.0)) {
            h.setIdentity();
            d = -g;
            slope = -g.squaredNorm();
            fresh = true;
        }
        if (slope == 0.0) {
            break;
        }
        double t = 1.0;
        Eigen::VectorXd trial = x + t * d;
        double f_trial = infidelity(target, ansatz, trial);
        while (f_trial > f + 1e-4 * t * slope && t > 1e-14) {
            t *= 0.5;
            trial = x + t * d;
            f_trial = infidelity(target, ansatz, trial);
        }
        if (!(f_trial < f)) {
            if (fresh) {
                break; // steepest descent made no progress: stationary point
            }
            h.setIdentity();
            fresh = true;
            continue;
        }
        const Eigen::VectorXd g_new = infidelity_gradient(target, ansatz, trial);
        const Eigen::VectorXd s = trial - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-16) {
            const double rho = 1.0 / sy;
            const Eigen::VectorXd hy = h * y;
            h += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
                 rho * (hy * s.transpose() + s * hy.transpose());
        }
        x = trial;
        f = f_trial;
        g = g_new;
        fresh = false;
    }
    return {std::move(x), f, it};
}

} // namespace

SynthesisResult synthesize(const PureState<double> &target, const Ansatz &ansatz,
                           const SynthesisOptions &options, std::uint64_t seed,
                           std::optional<Eigen::VectorXd> warm_start) {
    ansatz.validate();
    if (target.num_qubits() != ansatz.num_qubits) {
        throw DimensionMismatchError("target and ansatz qubit counts differ");
    }
    if (std::abs(target.norm_squared() - 1.0) > kDefaultTolerance) {
        throw ParameterError("target state is not normalized");
    }
    if (warm_start) {
        check_params(ansatz, *warm_start);
    }
    SynthesisResult best;
    best.infidelity = 2.0;
    const int starts = std::max(1, options.restarts);
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd x0(ansatz.num_params());
        if (s == 0 && warm_start) {
            x0 = *warm_start;
        } else {
            Rng rng(derive_seed(seed, "synth-start", static_cast<std::uint64_t>(s)));
            for (Eigen::Index j = 0; j < x0.size(); ++j) {
                x0[j] = (2.0 * detail::uniform01(rng) - 1.0) * std::numbers::pi;
            }
        }
        if (options.check_gradient) {
            const double err = gradient_check(target, ansatz, x0);
            best.gradient_error = std::max(best.gradient_error, err);
        }
        LocalResult local = descend(target, ansatz, std::move(x0), options);
        if (local.value < best.infidelity) {
            best.infidelity = local.value;
            best.best_params = std::move(local.params);
            best.iterations = local.iterations;
            best.best_start = s;
        }
    }
    best.infidelity = std::clamp(best.infidelity, 0.0, 1.0);
    best.converged = best.infidelity <= options.converge_tol;
    best.gradient_check_pass = best.gradient_error <= options.gradient_tol;
    return best;
}

nlohmann::json to_json(const SynthesisResult &result, const Ansatz &ansatz) {
    auto layout = nlohmann::json::array();
    for (const auto &[c, t] : ansatz.cnot_layout) {
        layout.push_back({c, t});
    }
    std::vector<double> params(result.best_params.data(),
                               result.best_params.data() + result.best_params.size());
    return {
        {"probe", true},
        {"num_qubits", ansatz.num_qubits},
        {"layout", std::move(layout)},
        {"per_qubit_usage", layout_usage(ansatz)},
        {"infidelity", result.infidelity},
        {"converged", result.converged},
        {"iterations", result.iterations},
        {"best_start", result.best_start},
        {"gradient_error", result.gradient_error},
        {"gradient_check_pass", result.gradient_check_pass},
        {"best_params", std::move(params)},
    };
}

} // namespace kbudget

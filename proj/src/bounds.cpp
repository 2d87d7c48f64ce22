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

#include "kbudget/bounds.hpp"

#include "kbudget/errors.hpp"

namespace kbudget {

namespace {

void require_n(int n, int minimum) {
    if (n < minimum) {
        throw ParameterError("qubit count must be at least " +
                             std::to_string(minimum));
    }
}

BigInt pow2(int n) { return BigInt(1) << n; }

} // namespace

BigInt ceil_div(const BigInt &a, const BigInt &b) { return (a + b - 1) / b; }

BigInt k_lower(int n) {
    require_n(n, 1);
    return ceil_div(pow2(n) - 1, n) - 1;
}

BigInt k_upper(int n) {
    require_n(n, 1);
    return ceil_div(23 * pow2(n), 48);
}

BigInt total_cnot_lower(int n) {
    require_n(n, 1);
    return ceil_div(pow2(n) - n - 1, 2);
}

BigRational ratio_gap(int n) {
    require_n(n, 2);
    return BigRational(k_upper(n), k_lower(n));
}

BoundReport bound_report(int n) {
    return {n, k_lower(n), k_upper(n), total_cnot_lower(n)};
}

ShorEstimate shor_estimate(int n_bits) {
    require_n(n_bits, 1);
    const BigInt n(n_bits);
    const BigInt depth = 32 * n * n * n;
    return {2 * n + 3, depth, depth};
}

std::string bounds_csv(const std::vector<BoundReport> &rows) {
    std::string out = "n,K_L,K_U,total_lower\n";
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + r.k_lower.str() + "," +
               r.k_upper.str() + "," + r.total_cnot_lower.str() + "\n";
    }
    return out;
}

nlohmann::json to_json(const BoundReport &row) {
    // Exact values as decimal strings; they overflow any JSON number type.
    return {
        {"n", row.n},
        {"K_L", row.k_lower.str()},
        {"K_U", row.k_upper.str()},
        {"total_lower", row.total_cnot_lower.str()},
    };
}

} // namespace kbudget

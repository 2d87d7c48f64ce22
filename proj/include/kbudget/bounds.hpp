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

#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace kbudget {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// ceil(a / b) for a >= 0, b > 0, as (a + b - 1) div b.
BigInt ceil_div(const BigInt &a, const BigInt &b);

/// Per-qubit lower bound from parameter counting: ceil((2^n - 1) / n) - 1.
BigInt k_lower(int n);
/// Per-qubit upper bound from circuit depth: ceil(23 * 2^n / 48).
BigInt k_upper(int n);
/// Whole-circuit CNOT lower bound, ceil((2^n - n - 1) / 2).
BigInt total_cnot_lower(int n);
/// k_upper(n) / k_lower(n), exact. n >= 2.
BigRational ratio_gap(int n);

struct BoundReport {
    int n = 0;
    BigInt k_lower;
    BigInt k_upper;
    BigInt total_cnot_lower;
};

BoundReport bound_report(int n);

struct ShorEstimate {
    BigInt logical_qubits;  // 2n + 3
    BigInt circuit_depth;   // leading term 32 n^3
    BigInt k_threshold;     // depth bounds K from above
};

ShorEstimate shor_estimate(int n_bits);

/// Header "n,K_L,K_U,total_lower"; exact decimal strings.
std::string bounds_csv(const std::vector<BoundReport> &rows);
nlohmann::json to_json(const BoundReport &row);

} // namespace kbudget

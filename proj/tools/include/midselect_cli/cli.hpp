// Copyright 2026 The midselect Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <midselect/circuit.hpp>
#include <midselect/encodings.hpp>

namespace midselect::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kRuntimeError = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FilterCheck {
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::vector<std::uint64_t> counterexamples;  // first few failing data values
};

/// Acceptance on every data basis state (ancillas start at 0) against the oracle.
/// Data wires are the non-ancilla wires in increasing order.
FilterCheck check_filter(const Circuit& c, const ValidityOracle& oracle);

/// Every valid one-hot input compresses to its position with the zeroed wires at 0,
/// and the inverse restores it.
FilterCheck check_onehot_compression(int n);

/// "4..8" -> {4,...,8}; "4,8,12" -> {4,8,12}; "8" -> {8}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace midselect::cli

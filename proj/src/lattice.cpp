// Copyright 2026 The tqft Authors
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

#include "tqft/lattice.hpp"

#include "tqft/errors.hpp"

namespace tqft {

std::string to_string(Boundary b) {
  return b == Boundary::kPeriodic ? "periodic" : "open";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic") return Boundary::kPeriodic;
  if (s == "open") return Boundary::kOpen;
  throw ValidationError("boundary must be 'periodic' or 'open'; got '" +
                        std::string(s) + "'");
}

std::optional<std::size_t> neighbor(std::size_t site, int offset, std::size_t n_sites,
                                    Boundary boundary) {
  const auto target = static_cast<long long>(site) + offset;
  const auto n = static_cast<long long>(n_sites);
  if (target >= 0 && target < n) return static_cast<std::size_t>(target);
  if (boundary == Boundary::kOpen) return std::nullopt;
  return static_cast<std::size_t>(((target % n) + n) % n);
}

}  // namespace tqft

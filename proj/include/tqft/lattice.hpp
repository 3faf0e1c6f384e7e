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

#ifndef TQFT_LATTICE_HPP
#define TQFT_LATTICE_HPP

#include <optional>
#include <string>
#include <string_view>

namespace tqft {

enum class Boundary { kPeriodic, kOpen };

std::string to_string(Boundary b);
Boundary parse_boundary(std::string_view s);

// Index of the neighbor `offset` sites away (offset = +-1), or nullopt when
// an open boundary cuts the bond.
std::optional<std::size_t> neighbor(std::size_t site, int offset, std::size_t n_sites,
                                    Boundary boundary);

}  // namespace tqft

#endif  // TQFT_LATTICE_HPP

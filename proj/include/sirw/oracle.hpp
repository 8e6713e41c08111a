// Copyright 2026 The sirw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIRW_ORACLE_HPP_
#define SIRW_ORACLE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "sirw/model.hpp"
#include "sirw/rng.hpp"
#include "sirw/sim.hpp"

namespace sirw {

// Brute-force reference: SIR-omega dynamics on an explicitly stored graph.
// Memory is O(edges), so population size is capped.
inline constexpr std::int64_t kMaxExplicitVertices = 10000;

struct ExplicitGraph {
  std::int64_t n = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;

  double mean_degree() const noexcept {
    return n > 0 ? 2.0 * static_cast<double>(edges.size()) / static_cast<double>(n) : 0.0;
  }
};

// G(n, mu/n) by geometric skipping over the pair list (Batagelj & Brandes),
// O(n + edges).
ExplicitGraph generate_er(std::int64_t n, double mu, Rng& rng);

struct ExplicitResult {
  SimResult sim;
  std::int64_t rewire_events = 0;
  // Rewirings whose new endpoint was already a neighbour of the rewiring
  // vertex. Such multi-edges are kept.
  std::int64_t multi_edge_events = 0;

  double multi_edge_frequency() const noexcept {
    return rewire_events > 0
               ? static_cast<double>(multi_edge_events) / static_cast<double>(rewire_events)
               : 0.0;
  }
};

// Gillespie simulation over the edge set. Vertices [0, I(0)) start infected,
// which loses nothing since G(n, p) is exchangeable. W counts S-S edges
// created by rewiring, as in the reduced simulator.
ExplicitResult run_explicit(const ExplicitGraph& graph, const ModelParams& params,
                            const InitialCondition& init, Rng& rng,
                            const SimOptions& options = {});

}  // namespace sirw

#endif  // SIRW_ORACLE_HPP_

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

#ifndef SIRW_SIM_HPP_
#define SIRW_SIM_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sirw/model.hpp"
#include "sirw/rng.hpp"

namespace sirw {

enum class EventKind {
  kRecovery = 0,
  kRewireToInfected,
  kRewireToSusceptible,
  kRewireToRecovered,
  kDrop,
  kInfection,
};
inline constexpr std::size_t kEventKindCount = 6;

const char* event_kind_name(EventKind kind) noexcept;

// Infected-edge counts of the infected vertices, one slot per vertex.
//
// Slots are dense: removing a vertex moves the last slot into its place. A
// Fenwick tree over the slots gives O(log n) selection of the vertex owning
// a uniformly chosen infected edge.
class InfectedEdgeCounts {
 public:
  explicit InfectedEdgeCounts(std::int64_t capacity);

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(counts_.size()); }
  std::int64_t total() const noexcept { return total_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  void push(std::int64_t count);
  // Removes slot `index` and returns the count it held.
  std::int64_t remove(std::int64_t index);
  void add(std::int64_t index, std::int64_t delta);
  // Slot owning the edge of rank `rank` in [0, total()).
  std::int64_t owner_of(std::int64_t rank) const;
  // Zeroes every count, keeping the vertices.
  void clear_edges();

 private:
  void tree_add(std::int64_t index, std::int64_t delta);

  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> tree_;  // 1-based
  std::int64_t capacity_;
  std::int64_t top_bit_ = 0;
  std::int64_t total_ = 0;
};

// Reduced state of the coupled construction: no graph is stored. Free
// endpoints of infected edges are unrevealed susceptibles.
struct SimState {
  std::int64_t s_count = 0;
  std::int64_t r_count = 0;
  std::int64_t w_count = 0;  // rewired S-S edge pool
  InfectedEdgeCounts infected{0};
  double time = 0.0;

  std::int64_t i_count() const noexcept { return infected.size(); }
  std::int64_t ie_count() const noexcept { return infected.total(); }
};

enum class EdgeAttach {
  kPoisson,   // Poisson(S(t-) mu / n), as in the construction
  kBinomial,  // Binomial(S(t-) - 1, mu / n), exact ER degree to the other susceptibles
};

enum class TimeScale {
  kNatural,
  // All rates multiplied by n / (lambda * I_E): S decreases at unit speed.
  kTimeChanged,
};

struct SimOptions {
  EdgeAttach edge_attach = EdgeAttach::kPoisson;
  double outbreak_threshold = 0.005;
  // Record a checkpoint every `checkpoint_stride` events; 0 records only the
  // initial and terminal states.
  std::int64_t checkpoint_stride = 0;
};

struct StepOutcome {
  EventKind kind;
  double dt;          // natural-time holding time
  double total_rate;  // aggregate rate before the event
  std::int64_t ie_before;
};

struct Checkpoint {
  double time;
  std::int64_t s;
  std::int64_t i;
  std::int64_t ie;
  std::int64_t w;
};

struct SimResult {
  std::int64_t final_size = 0;
  // First time I_E hits 0. Infinite if every rate is zero while I_E > 0.
  double terminal_time = 0.0;
  bool outbreak = false;
  std::int64_t initial_infected = 0;
  std::vector<Checkpoint> trajectory;
  std::array<std::int64_t, kEventKindCount> event_counts{};
  std::uint64_t seed = 0;
  TimeScale time_scale = TimeScale::kNatural;

  std::int64_t total_events() const noexcept;
};

SimState init_state(const ModelParams& params, const InitialCondition& init, Rng& rng);

// Fires one event in place. Throws Error(kTerminated) when nothing can fire.
StepOutcome step(SimState& state, const ModelParams& params, EdgeAttach attach, Rng& rng);

SimResult run(const ModelParams& params, const InitialCondition& init, std::uint64_t seed,
              const SimOptions& options = {});

// Same jump chain as run() for the same seed; only holding times differ.
// Requires lambda > 0 and I_E(0) > 0.
SimResult run_time_changed(const ModelParams& params, const InitialCondition& init,
                           std::uint64_t seed, const SimOptions& options = {});

}  // namespace sirw

#endif  // SIRW_SIM_HPP_

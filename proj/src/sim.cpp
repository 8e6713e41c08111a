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

#include "sirw/sim.hpp"

#include <cassert>
#include <limits>
#include <numeric>

#include "sirw/error.hpp"

namespace sirw {

const char* event_kind_name(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kRecovery: return "recovery";
    case EventKind::kRewireToInfected: return "rewire_to_infected";
    case EventKind::kRewireToSusceptible: return "rewire_to_susceptible";
    case EventKind::kRewireToRecovered: return "rewire_to_recovered";
    case EventKind::kDrop: return "drop";
    case EventKind::kInfection: return "infection";
  }
  return "unknown";
}

InfectedEdgeCounts::InfectedEdgeCounts(std::int64_t capacity)
    : tree_(static_cast<std::size_t>(capacity) + 1, 0), capacity_(capacity) {
  counts_.reserve(static_cast<std::size_t>(capacity));
  if (capacity_ > 0) {
    top_bit_ = 1;
    while (top_bit_ * 2 <= capacity_) top_bit_ *= 2;
  }
}

void InfectedEdgeCounts::tree_add(std::int64_t index, std::int64_t delta) {
  for (std::int64_t k = index + 1; k <= capacity_; k += k & -k) {
    tree_[static_cast<std::size_t>(k)] += delta;
  }
}

void InfectedEdgeCounts::push(std::int64_t count) {
  if (size() >= capacity_) {
    throw Error(ErrorCode::kInternal, "infected vertex count exceeds population");
  }
  counts_.push_back(count);
  tree_add(size() - 1, count);
  total_ += count;
}

std::int64_t InfectedEdgeCounts::remove(std::int64_t index) {
  const auto last = size() - 1;
  const auto removed = counts_[static_cast<std::size_t>(index)];
  const auto moved = counts_[static_cast<std::size_t>(last)];
  if (index != last) {
    tree_add(index, moved - removed);
    counts_[static_cast<std::size_t>(index)] = moved;
  }
  tree_add(last, -moved);
  counts_.pop_back();
  total_ -= removed;
  return removed;
}

void InfectedEdgeCounts::add(std::int64_t index, std::int64_t delta) {
  counts_[static_cast<std::size_t>(index)] += delta;
  assert(counts_[static_cast<std::size_t>(index)] >= 0);
  tree_add(index, delta);
  total_ += delta;
}

std::int64_t InfectedEdgeCounts::owner_of(std::int64_t rank) const {
  assert(rank >= 0 && rank < total_);
  std::int64_t pos = 0;
  for (std::int64_t step = top_bit_; step > 0; step >>= 1) {
    const auto next = pos + step;
    if (next <= capacity_ && tree_[static_cast<std::size_t>(next)] <= rank) {
      pos = next;
      rank -= tree_[static_cast<std::size_t>(next)];
    }
  }
  return pos;
}

void InfectedEdgeCounts::clear_edges() {
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(tree_.begin(), tree_.end(), 0);
  total_ = 0;
}

std::int64_t SimResult::total_events() const noexcept {
  return std::accumulate(event_counts.begin(), event_counts.end(), std::int64_t{0});
}

SimState init_state(const ModelParams& params, const InitialCondition& init, Rng& rng) {
  require_valid(params);
  require_valid(init, params.n);
  const auto infected = init.initial_infected(params.n);
  SimState state;
  state.s_count = params.n - infected;
  state.infected = InfectedEdgeCounts(params.n);
  const double p = params.mu / static_cast<double>(params.n);
  for (std::int64_t k = 0; k < infected; ++k) {
    state.infected.push(rng.binomial(state.s_count, p));
  }
  return state;
}

namespace {

void infect(SimState& state, const ModelParams& params, EdgeAttach attach, Rng& rng) {
  auto& infected = state.infected;
  const auto s_prev = state.s_count;
  const double inv_s = 1.0 / static_cast<double>(s_prev);

  // The transmitting edge now joins two infected vertices.
  infected.add(infected.owner_of(rng.index(infected.total())), -1);

  // Every other infected edge whose free endpoint is the new vertex stops
  // being infected. Removing a Binomial number of uniformly chosen edges
  // without replacement has the law of independent 1/S coin flips per edge.
  auto deleted = rng.binomial(infected.total(), inv_s);
  for (; deleted > 0; --deleted) {
    infected.add(infected.owner_of(rng.index(infected.total())), -1);
  }

  const double n = static_cast<double>(params.n);
  const std::int64_t fresh = attach == EdgeAttach::kPoisson
                                 ? rng.poisson(static_cast<double>(s_prev) * params.mu / n)
                                 : rng.binomial(s_prev - 1, params.mu / n);
  const std::int64_t from_pool = rng.binomial(state.w_count, 2.0 * inv_s);
  state.w_count -= from_pool;
  state.s_count -= 1;
  infected.push(fresh + from_pool);

  if (state.s_count == 0) {
    // No susceptible endpoint is left for any free edge.
    infected.clear_edges();
    state.w_count = 0;
  }
}

EventKind break_edge(SimState& state, const ModelParams& params, Rng& rng) {
  auto& infected = state.infected;
  const auto owner = infected.owner_of(rng.index(infected.total()));
  infected.add(owner, -1);
  if (!rng.bernoulli(params.alpha)) return EventKind::kDrop;

  // Target among the n - 1 vertices other than the edge's infected owner.
  const auto others_infected = infected.size() - 1;
  const auto target = rng.index(params.n - 1);
  if (target < others_infected) {
    auto recipient = rng.index(others_infected);
    if (recipient >= owner) ++recipient;
    infected.add(recipient, +1);
    return EventKind::kRewireToInfected;
  }
  if (target < others_infected + state.s_count) {
    state.w_count += 1;
    return EventKind::kRewireToSusceptible;
  }
  return EventKind::kRewireToRecovered;
}

}  // namespace

StepOutcome step(SimState& state, const ModelParams& params, EdgeAttach attach, Rng& rng) {
  const auto i_count = state.i_count();
  const auto ie = state.ie_count();
  if (i_count == 0 && ie == 0) {
    throw Error(ErrorCode::kTerminated, "no infected vertices or edges remain");
  }
  const double recovery = params.gamma * static_cast<double>(i_count);
  const double breaking = params.omega * static_cast<double>(ie);
  const double infection = params.lambda * static_cast<double>(ie);
  const double total = recovery + breaking + infection;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kTerminated, "every event rate is zero");
  }

  StepOutcome out{EventKind::kRecovery, rng.exponential() / total, total, ie};
  const double u = rng.uniform() * total;
  if (u < recovery) {
    state.infected.remove(rng.index(i_count));
    state.r_count += 1;
  } else if (u < recovery + breaking) {
    out.kind = break_edge(state, params, rng);
  } else {
    infect(state, params, attach, rng);
    out.kind = EventKind::kInfection;
  }
  state.time += out.dt;

  assert(state.s_count + state.i_count() + state.r_count == params.n);
  assert(state.w_count >= 0 && state.s_count >= 0);
  return out;
}

namespace {

SimResult run_impl(const ModelParams& params, const InitialCondition& init, std::uint64_t seed,
                   const SimOptions& options, TimeScale scale) {
  Rng rng(seed);
  SimState state = init_state(params, init, rng);
  if (scale == TimeScale::kTimeChanged) {
    if (!(params.lambda > 0.0)) {
      throw Error(ErrorCode::kDomain, "time change requires lambda > 0", "lambda");
    }
    if (state.ie_count() == 0) {
      throw Error(ErrorCode::kTerminated, "I_E(0) = 0: time change undefined");
    }
  }

  SimResult result;
  result.seed = seed;
  result.time_scale = scale;
  result.initial_infected = state.i_count();

  double clock = 0.0;
  auto checkpoint = [&] {
    result.trajectory.push_back(
        {clock, state.s_count, state.i_count(), state.ie_count(), state.w_count});
  };
  checkpoint();

  const double n = static_cast<double>(params.n);
  std::int64_t events = 0;
  bool last_recorded = true;
  while (state.ie_count() > 0) {
    if (!(params.gamma * static_cast<double>(state.i_count()) +
              (params.lambda + params.omega) * static_cast<double>(state.ie_count()) >
          0.0)) {
      clock = std::numeric_limits<double>::infinity();
      break;
    }
    const auto out = step(state, params, options.edge_attach, rng);
    clock += scale == TimeScale::kNatural
                 ? out.dt
                 : out.dt * params.lambda * static_cast<double>(out.ie_before) / n;
    ++events;
    ++result.event_counts[static_cast<std::size_t>(out.kind)];
    last_recorded = false;
    if (options.checkpoint_stride > 0 && events % options.checkpoint_stride == 0) {
      checkpoint();
      last_recorded = true;
    }
  }
  if (!last_recorded) checkpoint();

  result.terminal_time = clock;
  result.final_size = params.n - state.s_count;
  result.outbreak = static_cast<double>(result.final_size) >= options.outbreak_threshold * n;
  return result;
}

}  // namespace

SimResult run(const ModelParams& params, const InitialCondition& init, std::uint64_t seed,
              const SimOptions& options) {
  return run_impl(params, init, seed, options, TimeScale::kNatural);
}

SimResult run_time_changed(const ModelParams& params, const InitialCondition& init,
                           std::uint64_t seed, const SimOptions& options) {
  return run_impl(params, init, seed, options, TimeScale::kTimeChanged);
}

}  // namespace sirw

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

#include "sirw/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sirw/error.hpp"

namespace sirw {

namespace {

void require_explicit_size(std::int64_t n) {
  if (n < 2 || n > kMaxExplicitVertices) {
    throw Error(ErrorCode::kInvalidArgument,
                "explicit-graph oracle needs 2 <= n <= " + std::to_string(kMaxExplicitVertices),
                "n");
  }
}

}  // namespace

ExplicitGraph generate_er(std::int64_t n, double mu, Rng& rng) {
  require_explicit_size(n);
  const double p = mu / static_cast<double>(n);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomain, "mu / n must lie in [0, 1]", "mu");
  }
  ExplicitGraph graph;
  graph.n = n;
  if (p == 0.0) return graph;
  if (p == 1.0) {
    for (std::int32_t v = 1; v < n; ++v) {
      for (std::int32_t w = 0; w < v; ++w) graph.edges.emplace_back(v, w);
    }
    return graph;
  }
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-rng.uniform()) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) {
      graph.edges.emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(w));
    }
  }
  return graph;
}

namespace {

enum class Status : std::uint8_t { kS, kI, kR };

// Index set with O(1) insert/erase, keyed by small non-negative ints.
class IndexSet {
 public:
  explicit IndexSet(std::size_t universe) : pos_(universe, -1) {}

  std::size_t size() const noexcept { return items_.size(); }
  bool contains(std::int32_t x) const noexcept { return pos_[static_cast<std::size_t>(x)] >= 0; }
  std::int32_t at(std::size_t k) const noexcept { return items_[k]; }

  void insert(std::int32_t x) {
    if (contains(x)) return;
    pos_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(items_.size());
    items_.push_back(x);
  }
  void erase(std::int32_t x) {
    const auto p = pos_[static_cast<std::size_t>(x)];
    if (p < 0) return;
    const auto last = items_.back();
    items_[static_cast<std::size_t>(p)] = last;
    pos_[static_cast<std::size_t>(last)] = p;
    items_.pop_back();
    pos_[static_cast<std::size_t>(x)] = -1;
  }

 private:
  std::vector<std::int32_t> items_;
  std::vector<std::int32_t> pos_;
};

class ExplicitEngine {
 public:
  ExplicitEngine(const ExplicitGraph& graph, const ModelParams& params, Rng& rng)
      : params_(params),
        rng_(rng),
        status_(static_cast<std::size_t>(graph.n), Status::kS),
        incidence_(static_cast<std::size_t>(graph.n)),
        si_edges_(graph.edges.size()),
        infected_(static_cast<std::size_t>(graph.n)) {
    ends_.reserve(graph.edges.size());
    for (const auto& [a, b] : graph.edges) {
      const auto id = static_cast<std::int32_t>(ends_.size());
      ends_.push_back({a, b});
      incidence_[static_cast<std::size_t>(a)].push_back(id);
      incidence_[static_cast<std::size_t>(b)].push_back(id);
    }
    rewired_.assign(ends_.size(), false);
    s_count_ = graph.n;
  }

  void seed(std::int64_t count) {
    for (std::int32_t v = 0; v < count; ++v) {
      status(v) = Status::kI;
      infected_.insert(v);
      --s_count_;
    }
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(ends_.size()); ++e) {
      const auto [a, b] = ends_[static_cast<std::size_t>(e)];
      if ((status(a) == Status::kI) != (status(b) == Status::kI) &&
          (status(a) == Status::kS || status(b) == Status::kS)) {
        si_edges_.insert(e);
      }
    }
  }

  ExplicitResult run(const SimOptions& options) {
    ExplicitResult out;
    auto& result = out.sim;
    result.initial_infected = static_cast<std::int64_t>(infected_.size());
    double clock = 0.0;
    auto checkpoint = [&] {
      result.trajectory.push_back({clock, s_count_, static_cast<std::int64_t>(infected_.size()),
                                   static_cast<std::int64_t>(si_edges_.size()), w_count_});
    };
    checkpoint();

    const double pair_rate = params_.lambda + params_.omega;
    std::int64_t events = 0;
    bool last_recorded = true;
    while (si_edges_.size() > 0) {
      const double recovery = params_.gamma * static_cast<double>(infected_.size());
      const double total = recovery + pair_rate * static_cast<double>(si_edges_.size());
      if (!(total > 0.0)) {
        clock = std::numeric_limits<double>::infinity();
        break;
      }
      clock += rng_.exponential() / total;
      const double u = rng_.uniform() * total;
      EventKind kind;
      if (u < recovery) {
        recover(infected_.at(static_cast<std::size_t>(
            rng_.index(static_cast<std::int64_t>(infected_.size())))));
        kind = EventKind::kRecovery;
      } else {
        const auto e = si_edges_.at(
            static_cast<std::size_t>(rng_.index(static_cast<std::int64_t>(si_edges_.size()))));
        if (rng_.bernoulli(params_.lambda / pair_rate)) {
          infect(e);
          kind = EventKind::kInfection;
        } else {
          kind = break_edge(e, out);
        }
      }
      ++events;
      ++result.event_counts[static_cast<std::size_t>(kind)];
      last_recorded = false;
      if (options.checkpoint_stride > 0 && events % options.checkpoint_stride == 0) {
        checkpoint();
        last_recorded = true;
      }
    }
    if (!last_recorded) checkpoint();
    result.terminal_time = clock;
    result.final_size = static_cast<std::int64_t>(status_.size()) - s_count_;
    result.outbreak = static_cast<double>(result.final_size) >=
                      options.outbreak_threshold * static_cast<double>(status_.size());
    return out;
  }

 private:
  Status& status(std::int32_t v) { return status_[static_cast<std::size_t>(v)]; }

  std::int32_t other(std::int32_t e, std::int32_t v) const {
    const auto& ab = ends_[static_cast<std::size_t>(e)];
    return ab[0] == v ? ab[1] : ab[0];
  }

  void detach(std::int32_t e, std::int32_t v) {
    auto& list = incidence_[static_cast<std::size_t>(v)];
    const auto it = std::find(list.begin(), list.end(), e);
    *it = list.back();
    list.pop_back();
  }

  void recover(std::int32_t x) {
    status(x) = Status::kR;
    infected_.erase(x);
    for (const auto e : incidence_[static_cast<std::size_t>(x)]) si_edges_.erase(e);
  }

  void infect(std::int32_t e) {
    const auto& ab = ends_[static_cast<std::size_t>(e)];
    const auto y = status(ab[0]) == Status::kS ? ab[0] : ab[1];
    status(y) = Status::kI;
    infected_.insert(y);
    --s_count_;
    for (const auto f : incidence_[static_cast<std::size_t>(y)]) {
      const auto z = other(f, y);
      if (status(z) == Status::kI) {
        si_edges_.erase(f);
      } else if (status(z) == Status::kS) {
        si_edges_.insert(f);
        if (rewired_[static_cast<std::size_t>(f)]) --w_count_;
      }
    }
  }

  EventKind break_edge(std::int32_t e, ExplicitResult& out) {
    auto& ab = ends_[static_cast<std::size_t>(e)];
    const int s_side = status(ab[0]) == Status::kS ? 0 : 1;
    const auto s = ab[static_cast<std::size_t>(s_side)];
    const auto i = ab[static_cast<std::size_t>(1 - s_side)];
    si_edges_.erase(e);
    if (!rng_.bernoulli(params_.alpha)) {
      detach(e, s);
      detach(e, i);
      return EventKind::kDrop;
    }

    // Uniform over the n - 2 vertices other than s and i.
    const auto lo = std::min(s, i);
    const auto hi = std::max(s, i);
    auto v = static_cast<std::int32_t>(rng_.index(static_cast<std::int64_t>(status_.size()) - 2));
    if (v >= lo) ++v;
    if (v >= hi) ++v;

    ++out.rewire_events;
    for (const auto f : incidence_[static_cast<std::size_t>(s)]) {
      if (f != e && other(f, s) == v) {
        ++out.multi_edge_events;
        break;
      }
    }
    detach(e, i);
    ab[static_cast<std::size_t>(1 - s_side)] = v;
    incidence_[static_cast<std::size_t>(v)].push_back(e);
    rewired_[static_cast<std::size_t>(e)] = true;
    switch (status(v)) {
      case Status::kI:
        si_edges_.insert(e);
        return EventKind::kRewireToInfected;
      case Status::kS:
        ++w_count_;
        return EventKind::kRewireToSusceptible;
      case Status::kR:
        break;
    }
    return EventKind::kRewireToRecovered;
  }

  const ModelParams& params_;
  Rng& rng_;
  std::vector<Status> status_;
  std::vector<std::array<std::int32_t, 2>> ends_;
  std::vector<bool> rewired_;
  std::vector<std::vector<std::int32_t>> incidence_;
  IndexSet si_edges_;
  IndexSet infected_;
  std::int64_t s_count_ = 0;
  std::int64_t w_count_ = 0;
};

}  // namespace

ExplicitResult run_explicit(const ExplicitGraph& graph, const ModelParams& params,
                            const InitialCondition& init, Rng& rng, const SimOptions& options) {
  require_valid(params);
  require_explicit_size(graph.n);
  if (graph.n != params.n) {
    throw Error(ErrorCode::kInvalidArgument, "graph size differs from params.n", "n");
  }
  require_valid(init, graph.n);
  ExplicitEngine engine(graph, params, rng);
  engine.seed(init.initial_infected(graph.n));
  return engine.run(options);
}

}  // namespace sirw

// Copyright 2026 The semsna Authors
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
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "semsna/path_engine.hpp"

namespace semsna::detail {

struct SourceRun {
  bool truncated = false;
  std::uint64_t steps = 0;
};

/// Runs `worker(index, budget) -> std::optional<Partial>` for indices
/// 0..count-1 and hands completed partials to `merge(index, Partial&&)` in
/// index order. A worker returns nullopt when its budget ran out.
///
/// Budget accounting is sequential by index whatever the thread count: index
/// i is merged iff it completed within the budget left by indices < i, and
/// the first index that does not stops the run. Results therefore depend on
/// neither `threads` nor scheduling.
template <class Partial, class MakeWorker, class Merge>
SourceRun run_sources(std::size_t count, unsigned threads, std::uint64_t limit,
                      MakeWorker&& make_worker, Merge&& merge) {
  threads = std::max(1u, threads);
  const std::size_t batch = threads == 1 ? 1 : std::size_t{threads} * 4;
  using Worker = decltype(make_worker());
  std::vector<Worker> workers;
  for (unsigned k = 0; k < threads; ++k) workers.push_back(make_worker());

  SourceRun run;
  std::uint64_t remaining = limit;
  std::vector<std::optional<Partial>> parts;
  std::vector<std::uint64_t> costs;
  for (std::size_t base = 0; base < count; base += batch) {
    const std::size_t n = std::min(batch, count - base);
    parts.assign(n, std::nullopt);
    costs.assign(n, 0);
    auto job = [&, base, n, remaining](unsigned k) {
      for (std::size_t i = k; i < n; i += threads) {
        MatchBudget budget(remaining);
        parts[i] = workers[k](base + i, budget);
        costs[i] = budget.used();
      }
    };
    if (threads == 1 || n == 1) {
      job(0);
    } else {
      std::vector<std::exception_ptr> errors(threads);
      {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) {
          pool.emplace_back([&, k] {
            try {
              job(k);
            } catch (...) {
              errors[k] = std::current_exception();
            }
          });
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!parts[i] || costs[i] > remaining) {
        run.steps += remaining;
        run.truncated = true;
        return run;
      }
      remaining -= costs[i];
      run.steps += costs[i];
      merge(base + i, std::move(*parts[i]));
    }
  }
  return run;
}

}  // namespace semsna::detail

#pragma once

#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "gamedyn/analysis.hpp"
#include "gamedyn/generators.hpp"

namespace gamedyn {

enum class CheckKind { Success, Lemma12 };

struct ClassCheckFailure {
  std::int64_t index;
  std::string structure;      // serialized best-reply sets
  std::string witness_state;  // 1-based, empty for lemma12 checks
};

struct ClassCheckResult {
  std::int64_t checked = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t skipped = 0;  // lemma12 checks skip non-qualifying structures
  std::vector<ClassCheckFailure> failures;  // ascending index
};

/// Run a verdict over every structure in the stream, realized as a 0/1
/// payoff game. Work is split into contiguous index ranges per worker and
/// merged by index, so the result is independent of the worker count.
inline ClassCheckResult check_class(const StructureStream& stream,
                                    const StrategyMapping& strategy,
                                    CheckKind kind = CheckKind::Success,
                                    int workers = 1,
                                    std::int64_t node_budget = kDefaultNodeBudget) {
  const std::int64_t total = stream.size();
  if (workers < 1) workers = 1;
  if (static_cast<std::int64_t>(workers) > total && total > 0)
    workers = static_cast<int>(total);

  std::vector<ClassCheckResult> parts(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

  auto run_range = [&](int w, std::int64_t begin, std::int64_t end) {
    ClassCheckResult& out = parts[static_cast<std::size_t>(w)];
    try {
      for (std::int64_t i = begin; i < end; ++i) {
        BestReplyStructure s = stream.at(i);
        Game game = realize_game(s);
        if (kind == CheckKind::Lemma12) {
          if (game.players() != 2 || !s.generic()) {
            ++out.skipped;
            continue;
          }
          bool dominant = false;
          for (Player p = 0; p < 2 && !dominant; ++p)
            dominant = strictly_dominant_action(game, p).has_value();
          if (dominant) {
            ++out.skipped;
            continue;
          }
          ++out.checked;
          if (check_lemma12(game)) {
            ++out.passed;
          } else {
            ++out.failed;
            out.failures.push_back({i, serialize_structure(s), ""});
          }
        } else {
          ++out.checked;
          Verdict v = decide_success(strategy(game), game, node_budget);
          if (v.succeeded()) {
            ++out.passed;
          } else {
            ++out.failed;
            out.failures.push_back(
                {i, serialize_structure(s),
                 format_state(decode_state(v.space, v.recall, *v.witness))});
          }
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(total, begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ClassCheckResult merged;
  for (auto& part : parts) {
    merged.checked += part.checked;
    merged.passed += part.passed;
    merged.failed += part.failed;
    merged.skipped += part.skipped;
    merged.failures.insert(merged.failures.end(), part.failures.begin(),
                           part.failures.end());
  }
  return merged;
}

}  // namespace gamedyn

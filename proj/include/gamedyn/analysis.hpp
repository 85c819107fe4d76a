#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gamedyn/dynamics.hpp"
#include "gamedyn/game.hpp"
#include "gamedyn/rng.hpp"

namespace gamedyn {

inline constexpr std::int64_t kDefaultNodeBudget = 1'000'000;

/// Positive-probability transition graph over the r-recall state space.
/// Node IDs flatten the r profiles row-major, oldest profile most
/// significant. Every edge shifts the window by one profile, so a
/// successor's first r-1 profiles equal the source's last r-1.
struct TransitionGraph {
  ProfileSpace space;
  int recall;
  std::int64_t node_count;
  std::vector<std::vector<std::int64_t>> successors;  // sorted per node
  std::vector<std::vector<Rat>> edge_probs;           // aligned with successors
  std::vector<std::int64_t> absorbing;                // self-loop-only nodes
  std::vector<std::int64_t> pne_repeats;              // r-fold repeats of a PNE

  std::int64_t profile_count() const { return space.profile_count(); }
};

inline std::int64_t encode_state(const ProfileSpace& space, const RecallState& s) {
  std::int64_t id = 0;
  for (const Profile& p : s.profiles)
    id = id * space.profile_count() + space.flatten(p);
  return id;
}

inline RecallState decode_state(const ProfileSpace& space, int recall,
                                std::int64_t node) {
  std::vector<Profile> profiles(static_cast<std::size_t>(recall));
  for (int t = recall - 1; t >= 0; --t) {
    profiles[static_cast<std::size_t>(t)] =
        space.unflatten(node % space.profile_count());
    node /= space.profile_count();
  }
  return RecallState{std::move(profiles)};
}

/// "(1,2)|(2,2)" with 1-based actions, oldest profile first.
inline std::string format_state(const RecallState& s) {
  std::string out;
  for (std::size_t t = 0; t < s.profiles.size(); ++t) {
    if (t) out += "|";
    out += format_profile(s.profiles[t]);
  }
  return out;
}

namespace detail {

inline std::int64_t required_nodes(const ProfileSpace& space, int recall,
                                   std::int64_t budget) {
  __int128 total = 1;
  for (int t = 0; t < recall; ++t) {
    total *= space.profile_count();
    if (total > budget)
      throw resource_error(
          "transition graph requires " +
          (total <= INT64_MAX ? std::to_string(static_cast<std::int64_t>(total))
                              : std::string("more than ") + std::to_string(INT64_MAX)) +
          " nodes at this size; node budget is " + std::to_string(budget));
  }
  return static_cast<std::int64_t>(total);
}

}  // namespace detail

inline TransitionGraph build_graph(const StrategyVector& strategy,
                                   const Game& game,
                                   std::int64_t node_budget = kDefaultNodeBudget) {
  if (strategy.space() != game.space())
    throw std::invalid_argument("build_graph: strategy/game space mismatch");
  const ProfileSpace& space = game.space();
  const int r = strategy.recall();
  const std::int64_t nodes = detail::required_nodes(space, r, node_budget);
  const std::int64_t profiles = space.profile_count();
  const std::int64_t tail_base = nodes / profiles;  // |A|^(r-1)

  TransitionGraph g{space, r, nodes, {}, {}, {}, {}};
  g.successors.resize(static_cast<std::size_t>(nodes));
  g.edge_probs.resize(static_cast<std::size_t>(nodes));

  for (std::int64_t v = 0; v < nodes; ++v) {
    RecallState state = decode_state(space, r, v);
    const std::int64_t shifted = (v % tail_base) * profiles;
    auto dist = transition_distribution(strategy, state);
    auto& succ = g.successors[static_cast<std::size_t>(v)];
    auto& prob = g.edge_probs[static_cast<std::size_t>(v)];
    succ.reserve(dist.size());
    prob.reserve(dist.size());
    for (const auto& [p, w] : dist) {
      succ.push_back(shifted + space.flatten(p));
      prob.push_back(w);
    }
  }

  for (std::int64_t v = 0; v < nodes; ++v)
    if (g.successors[static_cast<std::size_t>(v)].size() == 1 &&
        g.successors[static_cast<std::size_t>(v)][0] == v)
      g.absorbing.push_back(v);

  for (const Profile& p : find_pne(game)) {
    std::int64_t id = 0;
    for (int t = 0; t < r; ++t) id = id * profiles + space.flatten(p);
    g.pne_repeats.push_back(id);
  }
  return g;
}

/// Nodes whose only outgoing edge is a self-loop. Shift consistency forces
/// each to decode to an r-fold repeat of a single profile.
inline std::vector<std::int64_t> absorbing_states(const TransitionGraph& g) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; v < g.node_count; ++v)
    if (g.successors[static_cast<std::size_t>(v)].size() == 1 &&
        g.successors[static_cast<std::size_t>(v)][0] == v)
      out.push_back(v);
  return out;
}

/// Forward closure from `from`, including the start node, sorted.
inline std::vector<std::int64_t> reachable_set(const TransitionGraph& g,
                                               std::int64_t from) {
  if (from < 0 || from >= g.node_count)
    throw std::invalid_argument("reachable_set: node out of range");
  std::vector<char> seen(static_cast<std::size_t>(g.node_count), 0);
  std::deque<std::int64_t> queue{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t w : g.successors[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; v < g.node_count; ++v)
    if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

enum class Outcome { SelfStabilizes, NoPne, Fails };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::SelfStabilizes: return "self-stabilizes";
    case Outcome::NoPne: return "no-pne";
    case Outcome::Fails: return "fails";
  }
  return "?";
}

/// Decision for one (strategy, game) pair. On failure carries the smallest
/// state that cannot reach any absorbing equilibrium repeat, the full set of
/// such states, and the witness's forward closure as a certificate.
struct Verdict {
  Outcome outcome;
  ProfileSpace space;
  int recall;
  std::int64_t nodes;
  std::vector<Profile> pne;
  std::vector<std::int64_t> absorbing_pne;
  std::optional<std::int64_t> witness;
  std::vector<std::int64_t> non_reaching;
  std::vector<std::int64_t> witness_reachable;

  bool succeeded() const { return outcome != Outcome::Fails; }
};

inline Verdict decide_success(const StrategyVector& strategy, const Game& game,
                              std::int64_t node_budget = kDefaultNodeBudget) {
  const ProfileSpace& space = game.space();
  const int r = strategy.recall();
  detail::required_nodes(space, r, node_budget);

  std::vector<Profile> pne = find_pne(game);
  if (pne.empty())
    return Verdict{Outcome::NoPne, space, r, 0, {}, {}, std::nullopt, {}, {}};

  TransitionGraph g = build_graph(strategy, game, node_budget);

  std::vector<char> target(static_cast<std::size_t>(g.node_count), 0);
  std::vector<std::int64_t> absorbing_pne;
  {
    std::vector<char> absorbing(static_cast<std::size_t>(g.node_count), 0);
    for (std::int64_t v : g.absorbing) absorbing[static_cast<std::size_t>(v)] = 1;
    for (std::int64_t v : g.pne_repeats)
      if (absorbing[static_cast<std::size_t>(v)]) {
        target[static_cast<std::size_t>(v)] = 1;
        absorbing_pne.push_back(v);
      }
  }

  // reverse reachability from the absorbing equilibrium repeats
  std::vector<std::vector<std::int64_t>> reverse(
      static_cast<std::size_t>(g.node_count));
  for (std::int64_t v = 0; v < g.node_count; ++v)
    for (std::int64_t w : g.successors[static_cast<std::size_t>(v)])
      reverse[static_cast<std::size_t>(w)].push_back(v);

  std::vector<char> can_reach(static_cast<std::size_t>(g.node_count), 0);
  std::deque<std::int64_t> queue;
  for (std::int64_t v : absorbing_pne) {
    can_reach[static_cast<std::size_t>(v)] = 1;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t u : reverse[static_cast<std::size_t>(v)])
      if (!can_reach[static_cast<std::size_t>(u)]) {
        can_reach[static_cast<std::size_t>(u)] = 1;
        queue.push_back(u);
      }
  }

  std::vector<std::int64_t> non_reaching;
  for (std::int64_t v = 0; v < g.node_count; ++v)
    if (!can_reach[static_cast<std::size_t>(v)]) non_reaching.push_back(v);

  if (non_reaching.empty())
    return Verdict{Outcome::SelfStabilizes, space,      r, g.node_count,
                   std::move(pne),          absorbing_pne, std::nullopt, {},
                   {}};

  const std::int64_t witness = non_reaching.front();
  return Verdict{Outcome::Fails,
                 space,
                 r,
                 g.node_count,
                 std::move(pne),
                 std::move(absorbing_pne),
                 witness,
                 std::move(non_reaching),
                 reachable_set(g, witness)};
}

/// Full-communication check for two-player generic games without strictly
/// dominant actions: from every non-equilibrium profile, every profile must
/// be reachable under the canonical historyless dynamics.
inline bool check_lemma12(const Game& game) {
  if (game.players() != 2)
    throw std::invalid_argument("check_lemma12 requires a two-player game");
  if (!is_generic(game))
    throw std::invalid_argument("check_lemma12 requires a generic game");
  for (Player i = 0; i < 2; ++i)
    if (strictly_dominant_action(game, i))
      throw std::invalid_argument("check_lemma12: player " + std::to_string(i + 1) +
                                  " has a strictly dominant action");

  TransitionGraph g = build_graph(canonical_h(game), game);
  std::vector<char> pne(static_cast<std::size_t>(g.node_count), 0);
  for (const Profile& p : find_pne(game))
    pne[static_cast<std::size_t>(game.space().flatten(p))] = 1;

  for (std::int64_t v = 0; v < g.node_count; ++v) {
    if (pne[static_cast<std::size_t>(v)]) continue;
    if (static_cast<std::int64_t>(reachable_set(g, v).size()) != g.node_count)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sampling.

struct SimulationTrace {
  std::vector<Profile> profiles;  // initial r profiles, then one per step
  int recall;
  bool absorbed;
  std::uint64_t seed;
  std::string rng;

  std::int64_t steps() const {
    return static_cast<std::int64_t>(profiles.size()) - recall;
  }
};

namespace detail {

inline bool is_absorbing_state(const StrategyVector& strategy,
                               const RecallState& state) {
  const Profile& p = state.latest();
  for (const Profile& q : state.profiles)
    if (q != p) return false;
  for (Player i = 0; i < strategy.players(); ++i) {
    ActionDistribution d = strategy.act(i, state);
    if (!d.is_point_mass() || d.weights()[0].first != p[static_cast<std::size_t>(i)])
      return false;
  }
  return true;
}

inline Action sample_action(const ActionDistribution& d, SeededRng& rng) {
  if (d.is_point_mass()) return d.weights()[0].first;
  std::int64_t scale = 1;
  for (const auto& [a, w] : d.weights()) scale = std::lcm(scale, w.den());
  const std::uint64_t t = rng.bounded(static_cast<std::uint64_t>(scale));
  std::uint64_t cum = 0;
  for (const auto& [a, w] : d.weights()) {
    cum += static_cast<std::uint64_t>(w.num() * (scale / w.den()));
    if (t < cum) return a;
  }
  return d.weights().back().first;
}

}  // namespace detail

/// Seeded finite run. Stops early when an absorbing state is entered.
/// Identical (seed, inputs) give identical traces on every platform.
inline SimulationTrace simulate(const StrategyVector& strategy, const Game& game,
                                RecallState initial, std::int64_t max_steps,
                                std::uint64_t seed) {
  if (strategy.space() != game.space())
    throw std::invalid_argument("simulate: strategy/game space mismatch");
  if (initial.recall() != strategy.recall())
    throw std::invalid_argument("simulate: initial state recall mismatch");
  for (const Profile& p : initial.profiles)
    detail::check_profile(game.space(), p);

  SeededRng rng(seed);
  SimulationTrace trace{initial.profiles, strategy.recall(), false, seed,
                        SeededRng::kAlgorithm};
  RecallState state = std::move(initial);
  for (std::int64_t step = 0; step < max_steps; ++step) {
    if (detail::is_absorbing_state(strategy, state)) {
      trace.absorbed = true;
      return trace;
    }
    Profile next(static_cast<std::size_t>(strategy.players()));
    for (Player i = 0; i < strategy.players(); ++i)
      next[static_cast<std::size_t>(i)] =
          detail::sample_action(strategy.act(i, state), rng);
    trace.profiles.push_back(next);
    state.profiles.erase(state.profiles.begin());
    state.profiles.push_back(std::move(next));
  }
  trace.absorbed = detail::is_absorbing_state(strategy, state);
  return trace;
}

/// For deterministic dynamics: the unique forward orbit, as the sequence of
/// visited states (initial state first). Stops after max_steps or on
/// entering an absorbing state.
inline std::vector<RecallState> walk_orbit(const StrategyVector& strategy,
                                           RecallState initial,
                                           std::int64_t max_steps) {
  std::vector<RecallState> orbit{initial};
  RecallState state = std::move(initial);
  for (std::int64_t step = 0; step < max_steps; ++step) {
    Profile next(static_cast<std::size_t>(strategy.players()));
    for (Player i = 0; i < strategy.players(); ++i) {
      ActionDistribution d = strategy.act(i, state);
      if (!d.is_point_mass())
        throw std::invalid_argument("walk_orbit requires a deterministic strategy");
      next[static_cast<std::size_t>(i)] = d.weights()[0].first;
    }
    RecallState successor{{state.profiles.begin() + 1, state.profiles.end()}};
    successor.profiles.push_back(std::move(next));
    if (successor == state) break;  // absorbing
    state = std::move(successor);
    orbit.push_back(state);
  }
  return orbit;
}

}  // namespace gamedyn

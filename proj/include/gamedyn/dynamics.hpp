#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>

#include "gamedyn/game.hpp"
#include "gamedyn/rational.hpp"

namespace gamedyn {

/// The last r profiles of play, oldest first.
struct RecallState {
  std::vector<Profile> profiles;

  int recall() const { return static_cast<int>(profiles.size()); }
  const Profile& latest() const { return profiles.back(); }

  friend bool operator==(const RecallState& a, const RecallState& b) {
    return a.profiles == b.profiles;
  }
};

/// Exact finite distribution over one player's actions. Weights are sorted
/// by action, strictly positive, and sum to exactly one.
class ActionDistribution {
 public:
  static ActionDistribution point_mass(Action a) {
    ActionDistribution d;
    d.weights_.emplace_back(a, Rat(1));
    return d;
  }

  static ActionDistribution uniform_over(int k) {
    ActionDistribution d;
    for (Action a = 0; a < k; ++a) d.weights_.emplace_back(a, Rat(1, k));
    return d;
  }

  static ActionDistribution from_weights(
      std::vector<std::pair<Action, Rat>> weights) {
    std::sort(weights.begin(), weights.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ActionDistribution d;
    Rat sum(0);
    for (const auto& [a, w] : weights) {
      if (w.is_zero()) continue;
      if (w < Rat(0))
        throw std::invalid_argument("ActionDistribution: negative weight");
      if (!d.weights_.empty() && d.weights_.back().first == a)
        d.weights_.back().second += w;
      else
        d.weights_.emplace_back(a, w);
      sum += w;
    }
    if (d.weights_.empty() || !sum.is_one())
      throw std::invalid_argument("ActionDistribution: weights must sum to one");
    return d;
  }

  const std::vector<std::pair<Action, Rat>>& weights() const { return weights_; }
  bool is_point_mass() const { return weights_.size() == 1; }

  Rat prob_of(Action a) const {
    for (const auto& [act, w] : weights_)
      if (act == a) return w;
    return Rat(0);
  }

  friend bool operator==(const ActionDistribution& a, const ActionDistribution& b) {
    return a.weights_ == b.weights_;
  }
  friend bool operator!=(const ActionDistribution& a, const ActionDistribution& b) {
    return !(a == b);
  }

 private:
  std::vector<std::pair<Action, Rat>> weights_;
};

/// Equal-odds mixture of two distributions.
inline ActionDistribution mix_half(const ActionDistribution& a,
                                   const ActionDistribution& b) {
  std::vector<std::pair<Action, Rat>> w;
  const Rat half(1, 2);
  for (const auto& [act, p] : a.weights()) w.emplace_back(act, p * half);
  for (const auto& [act, p] : b.weights()) w.emplace_back(act, p * half);
  return ActionDistribution::from_weights(std::move(w));
}

/// One r-recall stationary strategy per player. Each per-player function is
/// a pure map from states to exact distributions; builders in this header
/// receive a single player's payoff tensor, so a player's strategy can never
/// read another player's utilities.
class StrategyVector {
 public:
  using PlayerFn = std::function<ActionDistribution(const RecallState&)>;

  StrategyVector(ProfileSpace space, int recall, bool deterministic,
                 std::vector<PlayerFn> players)
      : space_(std::move(space)),
        recall_(recall),
        deterministic_(deterministic),
        players_(std::move(players)) {
    if (recall_ < 1) throw std::invalid_argument("StrategyVector: recall must be >= 1");
    if (static_cast<int>(players_.size()) != space_.players())
      throw std::invalid_argument("StrategyVector: one strategy per player required");
  }

  const ProfileSpace& space() const { return space_; }
  int recall() const { return recall_; }
  bool deterministic() const { return deterministic_; }
  int players() const { return space_.players(); }

  ActionDistribution act(Player i, const RecallState& state) const {
    detail::check_player(space_, i);
    if (state.recall() != recall_)
      throw std::invalid_argument("StrategyVector: state recall mismatch");
    for (const Profile& p : state.profiles) detail::check_profile(space_, p);
    return players_[static_cast<std::size_t>(i)](state);
  }

 private:
  ProfileSpace space_;
  int recall_;
  bool deterministic_;
  std::vector<PlayerFn> players_;
};

/// A rule assigning a strategy vector to every game on a fixed space.
using StrategyMapping = std::function<StrategyVector(const Game&)>;

// ---------------------------------------------------------------------------
// Canonical historyless stochastic dynamics.

namespace detail {

inline StrategyVector::PlayerFn make_h_player(const ProfileSpace& space,
                                              std::vector<std::int64_t> own,
                                              Player i) {
  const int k = space.actions(i);
  return [space, own = std::move(own), i, k](const RecallState& s) {
    const Profile& a = s.latest();
    if (is_best_replying_own(space, own, i, a))
      return ActionDistribution::point_mass(a[i]);
    return ActionDistribution::uniform_over(k);
  };
}

}  // namespace detail

/// Historyless stochastic dynamics: a player already best-replying repeats
/// its action; otherwise it plays uniformly at random over its whole action
/// set.
inline StrategyVector canonical_h(const Game& game) {
  std::vector<StrategyVector::PlayerFn> fns;
  for (Player i = 0; i < game.players(); ++i)
    fns.push_back(detail::make_h_player(game.space(), game.payoff_tensor(i), i));
  return StrategyVector(game.space(), 1, false, std::move(fns));
}

// ---------------------------------------------------------------------------
// Deterministic historyless rules.

/// Deterministic historyless rule for a single player, built from that
/// player's payoffs alone.
using DeterministicPlayerRule = std::function<Action(const Profile&)>;

/// Constructor shape for deterministic historyless uncoupled mappings: the
/// rule for each player is produced from only that player's payoff tensor.
using DeterministicHistorylessMapping = std::function<DeterministicPlayerRule(
    const ProfileSpace&, Player, const std::vector<std::int64_t>&)>;

/// Repeat the current action when best-replying, otherwise switch to the
/// lowest-numbered best reply.
inline DeterministicPlayerRule min_br_player_rule(
    const ProfileSpace& space, Player i, const std::vector<std::int64_t>& own) {
  return [space, own, i](const Profile& a) {
    auto br = detail::best_replies_own(space, own, i, a);
    if (std::find(br.begin(), br.end(), a[i]) != br.end()) return a[i];
    return br.front();
  };
}

inline DeterministicHistorylessMapping min_br_mapping() {
  return [](const ProfileSpace& space, Player i,
            const std::vector<std::int64_t>& own) {
    return min_br_player_rule(space, i, own);
  };
}

/// Wrap a deterministic historyless mapping as a strategy vector.
inline StrategyVector deterministic_historyless_strategy(
    const Game& game, const DeterministicHistorylessMapping& mapping) {
  std::vector<StrategyVector::PlayerFn> fns;
  for (Player i = 0; i < game.players(); ++i) {
    DeterministicPlayerRule rule =
        mapping(game.space(), i, game.payoff_tensor(i));
    fns.push_back([rule = std::move(rule)](const RecallState& s) {
      return ActionDistribution::point_mass(rule(s.latest()));
    });
  }
  return StrategyVector(game.space(), 1, true, std::move(fns));
}

inline StrategyVector min_br(const Game& game) {
  return deterministic_historyless_strategy(game, min_br_mapping());
}

// ---------------------------------------------------------------------------
// Deterministic 3-recall dynamics.

enum class Det3StateType { Query, MoveOn, Repeat };

/// State taxonomy for the 3-recall rule on (a,b,c): a repeated tail marks a
/// query, a repeated head followed by a change marks a move-on.
inline Det3StateType classify_det3_state(const Profile& a, const Profile& b,
                                         const Profile& c) {
  if (b == c) return Det3StateType::Query;
  if (a == b) return Det3StateType::MoveOn;
  return Det3StateType::Repeat;
}

namespace detail {

inline StrategyVector::PlayerFn make_det3_player(const ProfileSpace& space,
                                                 std::vector<std::int64_t> own,
                                                 Player i) {
  return [space, own = std::move(own), i](const RecallState& s) {
    const Profile& a = s.profiles[0];
    const Profile& b = s.profiles[1];
    const Profile& c = s.profiles[2];
    switch (classify_det3_state(a, b, c)) {
      case Det3StateType::Query: {
        auto br = best_replies_own(space, own, i, c);
        const Action out =
            std::find(br.begin(), br.end(), c[i]) != br.end() ? c[i] : br.front();
        return ActionDistribution::point_mass(out);
      }
      case Det3StateType::MoveOn:
        return ActionDistribution::point_mass(space.cyclic_successor(a)[i]);
      case Det3StateType::Repeat:
        return ActionDistribution::point_mass(c[i]);
    }
    throw std::logic_error("unreachable");
  };
}

}  // namespace detail

/// Deterministic 3-recall dynamics. Players use repetition to track the
/// current equilibrium candidate: a repeated profile is queried (each player
/// answers with a best reply, preferring not to move), a rejected candidate
/// is advanced to its cyclic successor, and anything else is repeated to
/// establish a new candidate.
inline StrategyVector det3(const Game& game) {
  std::vector<StrategyVector::PlayerFn> fns;
  for (Player i = 0; i < game.players(); ++i)
    fns.push_back(detail::make_det3_player(game.space(), game.payoff_tensor(i), i));
  return StrategyVector(game.space(), 3, true, std::move(fns));
}

// ---------------------------------------------------------------------------
// Deterministic 2-recall dynamics (requires at least four actions each).

enum class Det2StateType { MoveOn, Query, Repeat };

/// State taxonomy for the 2-recall rule on (a,b), decided by per-coordinate
/// residues. With every action count at least four, no state can be both a
/// move-on and a query state.
inline Det2StateType classify_det2_state(const ProfileSpace& space,
                                         const Profile& a, const Profile& b) {
  const int n = space.players();
  bool move_on = a != b;
  for (int j = 0; j < n && move_on; ++j) {
    const int k = space.actions(j);
    int d = (a[j] - b[j]) % k;
    if (d < 0) d += k;
    move_on = d == 0 || d == 1;
  }
  if (move_on) return Det2StateType::MoveOn;
  bool query = true;
  for (int j = 0; j < n && query; ++j) {
    const int k = space.actions(j);
    int d = (b[j] - a[j]) % k;
    if (d < 0) d += k;
    query = d >= 0 && d <= 2;
  }
  return query ? Det2StateType::Query : Det2StateType::Repeat;
}

namespace detail {

inline StrategyVector::PlayerFn make_det2_player(const ProfileSpace& space,
                                                 std::vector<std::int64_t> own,
                                                 Player i) {
  const int k = space.actions(i);
  return [space, own = std::move(own), i, k](const RecallState& s) {
    const Profile& a = s.profiles[0];
    const Profile& b = s.profiles[1];
    switch (classify_det2_state(space, a, b)) {
      case Det2StateType::MoveOn:
        return ActionDistribution::point_mass(space.cyclic_successor(a)[i]);
      case Det2StateType::Query: {
        if (is_best_replying_own(space, own, i, b))
          return ActionDistribution::point_mass(b[i]);
        return ActionDistribution::point_mass((b[i] + k - 1) % k);
      }
      case Det2StateType::Repeat:
        return ActionDistribution::point_mass(b[i]);
    }
    throw std::logic_error("unreachable");
  };
}

}  // namespace detail

/// Deterministic 2-recall dynamics for spaces where every player has at
/// least four actions. Candidates advance lexicographically; at a query
/// state each player answers by repeating when best-replying and stepping
/// one action back otherwise.
inline StrategyVector det2(const Game& game) {
  for (int kc : game.space().action_counts())
    if (kc < 4)
      throw std::invalid_argument(
          "det2 requires every player to have at least four actions");
  std::vector<StrategyVector::PlayerFn> fns;
  for (Player i = 0; i < game.players(); ++i)
    fns.push_back(detail::make_det2_player(game.space(), game.payoff_tensor(i), i));
  return StrategyVector(game.space(), 2, true, std::move(fns));
}

// ---------------------------------------------------------------------------
// Padding reductions between profile spaces.

/// Duplicate one player's last action: the new action is payoff-identical to
/// it for everyone.
inline Game pad_action_game(const Game& game, Player player) {
  detail::check_player(game.space(), player);
  std::vector<int> counts = game.space().action_counts();
  counts[static_cast<std::size_t>(player)] += 1;
  ProfileSpace padded(counts);
  const Action dup = game.space().actions(player) - 1;  // action being duplicated

  std::vector<std::vector<std::int64_t>> payoffs(
      static_cast<std::size_t>(game.players()));
  for (Player j = 0; j < game.players(); ++j) {
    auto& tensor = payoffs[static_cast<std::size_t>(j)];
    tensor.resize(static_cast<std::size_t>(padded.profile_count()));
    for (std::int64_t f = 0; f < padded.profile_count(); ++f) {
      Profile p = padded.unflatten(f);
      if (p[player] > dup) p[player] = dup;
      tensor[static_cast<std::size_t>(f)] = game.payoff(j, p);
    }
  }
  return Game(std::move(padded), std::move(payoffs));
}

/// Append an apathetic player: existing payoffs ignore it, and it earns 1
/// exactly when playing its first action.
inline Game apathetic_extension(const Game& game, int extra_actions = 2) {
  if (extra_actions < 2)
    throw std::invalid_argument("apathetic_extension: extra player needs >= 2 actions");
  std::vector<int> counts = game.space().action_counts();
  counts.push_back(extra_actions);
  ProfileSpace extended(counts);

  const int n = game.players();
  std::vector<std::vector<std::int64_t>> payoffs(static_cast<std::size_t>(n + 1));
  for (Player j = 0; j <= n; ++j)
    payoffs[static_cast<std::size_t>(j)].resize(
        static_cast<std::size_t>(extended.profile_count()));
  for (std::int64_t f = 0; f < extended.profile_count(); ++f) {
    Profile p = extended.unflatten(f);
    Profile inner(p.begin(), p.end() - 1);
    for (Player j = 0; j < n; ++j)
      payoffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(f)] =
          game.payoff(j, inner);
    payoffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(f)] =
        p.back() == 0 ? 1 : 0;
  }
  return Game(std::move(extended), std::move(payoffs));
}

namespace detail {

inline ActionDistribution clamp_distribution(const ActionDistribution& d,
                                             Action max_action) {
  std::vector<std::pair<Action, Rat>> w;
  for (const auto& [a, p] : d.weights())
    w.emplace_back(std::min(a, max_action), p);
  return ActionDistribution::from_weights(std::move(w));
}

}  // namespace detail

/// Run historyless dynamics for a larger space on a game missing one action:
/// the base mapping is applied to the action-padded game, and whenever the
/// affected player shows its last action, each player independently flips a
/// fair coin to interpret it as either duplicate. The affected player's
/// outputs are clamped back into the smaller action set.
inline StrategyVector pad_action_reduction(const StrategyMapping& base,
                                           Player player, const Game& game) {
  detail::check_player(game.space(), player);
  Game padded = pad_action_game(game, player);
  auto base_sv = std::make_shared<const StrategyVector>(base(padded));
  if (base_sv->recall() != 1)
    throw std::invalid_argument("pad_action_reduction requires a historyless base");

  const Action last = game.space().actions(player) - 1;
  std::vector<StrategyVector::PlayerFn> fns;
  for (Player j = 0; j < game.players(); ++j) {
    fns.push_back([base_sv, player, j, last](const RecallState& s) {
      const Profile& a = s.latest();
      RecallState low{{a}};
      ActionDistribution d_low = base_sv->act(j, low);
      if (j == player) d_low = detail::clamp_distribution(d_low, last);
      if (a[player] != last) return d_low;
      Profile high_p = a;
      high_p[player] = last + 1;
      RecallState high{{high_p}};
      ActionDistribution d_high = base_sv->act(j, high);
      if (j == player) d_high = detail::clamp_distribution(d_high, last);
      return mix_half(d_high, d_low);
    });
  }
  return StrategyVector(game.space(), 1, false, std::move(fns));
}

/// Run historyless dynamics for an (n+1)-player space on an n-player game:
/// the base mapping is applied to the apathetic extension with the extra
/// player's coordinate pinned to its first action.
inline StrategyVector pad_player_reduction(const StrategyMapping& base,
                                           const Game& game,
                                           int extra_actions = 2) {
  Game extended = apathetic_extension(game, extra_actions);
  auto base_sv = std::make_shared<const StrategyVector>(base(extended));
  if (base_sv->recall() != 1)
    throw std::invalid_argument("pad_player_reduction requires a historyless base");

  std::vector<StrategyVector::PlayerFn> fns;
  for (Player j = 0; j < game.players(); ++j) {
    fns.push_back([base_sv, j](const RecallState& s) {
      Profile p = s.latest();
      p.push_back(0);
      return base_sv->act(j, RecallState{{std::move(p)}});
    });
  }
  return StrategyVector(game.space(), 1, base_sv->deterministic(), std::move(fns));
}

// ---------------------------------------------------------------------------
// Transition law and conformance checking.

/// Next-profile distribution: the product of the players' independent
/// distributions at `state`. Support is nonempty and masses sum to one.
inline std::map<Profile, Rat> transition_distribution(const StrategyVector& f,
                                                      const RecallState& state) {
  const int n = f.players();
  std::vector<ActionDistribution> dists;
  dists.reserve(static_cast<std::size_t>(n));
  for (Player i = 0; i < n; ++i) dists.push_back(f.act(i, state));

  std::map<Profile, Rat> out;
  Profile p(static_cast<std::size_t>(n));
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  while (true) {
    Rat prob(1);
    for (Player i = 0; i < n; ++i) {
      const auto& [a, w] = dists[static_cast<std::size_t>(i)].weights()[pick[static_cast<std::size_t>(i)]];
      p[static_cast<std::size_t>(i)] = a;
      prob *= w;
    }
    out.emplace(p, prob);
    int i = n - 1;
    while (i >= 0 &&
           ++pick[static_cast<std::size_t>(i)] ==
               dists[static_cast<std::size_t>(i)].weights().size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

/// Conformance report for historyless stationary dynamics: condition 1
/// flags a player that may move while already best-replying, condition 2
/// flags a player that can never move while not best-replying.
struct Observation4Report {
  struct Violation {
    Profile profile;
    Player player;
    int condition;  // 1 or 2
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline Observation4Report check_observation4(const StrategyVector& strategy,
                                             const Game& game) {
  if (strategy.recall() != 1)
    throw std::invalid_argument("check_observation4 requires a historyless strategy");
  if (strategy.space() != game.space())
    throw std::invalid_argument("check_observation4: strategy/game space mismatch");

  Observation4Report report;
  const std::int64_t total = game.space().profile_count();
  for (std::int64_t fidx = 0; fidx < total; ++fidx) {
    Profile a = game.space().unflatten(fidx);
    RecallState s{{a}};
    for (Player i = 0; i < game.players(); ++i) {
      const Rat stay = strategy.act(i, s).prob_of(a[static_cast<std::size_t>(i)]);
      const bool br = is_best_replying(game, a, i);
      if (br && !stay.is_one())
        report.violations.push_back({a, i, 1});
      else if (!br && stay.is_one())
        report.violations.push_back({a, i, 2});
    }
  }
  return report;
}

}  // namespace gamedyn

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamedyn {

using Action = int;   // 0-based internally; printed and serialized 1-based
using Player = int;

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One action per player; index i is player i's action.
using Profile = std::vector<Action>;

/// The shape (k_1,...,k_n) of a game: player count plus per-player action
/// counts. Profiles flatten to a single index in row-major order, the last
/// player varying fastest, so ascending flat index is ascending
/// lexicographic order on profiles.
class ProfileSpace {
 public:
  explicit ProfileSpace(std::vector<int> action_counts)
      : counts_(std::move(action_counts)) {
    if (counts_.size() < 2)
      throw std::invalid_argument("ProfileSpace: at least two players required");
    std::int64_t total = 1;
    for (int k : counts_) {
      if (k < 2)
        throw std::invalid_argument(
            "ProfileSpace: every player needs at least two actions");
      if (total > (std::int64_t{1} << 62) / k)
        throw resource_error("ProfileSpace: profile count overflows");
      total *= k;
    }
    profile_count_ = total;
  }

  int players() const { return static_cast<int>(counts_.size()); }
  int actions(Player i) const { return counts_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& action_counts() const { return counts_; }
  std::int64_t profile_count() const { return profile_count_; }

  bool contains(const Profile& p) const {
    if (static_cast<int>(p.size()) != players()) return false;
    for (int i = 0; i < players(); ++i)
      if (p[i] < 0 || p[i] >= counts_[i]) return false;
    return true;
  }

  std::int64_t flatten(const Profile& p) const {
    std::int64_t idx = 0;
    for (int i = 0; i < players(); ++i) idx = idx * counts_[i] + p[i];
    return idx;
  }

  Profile unflatten(std::int64_t idx) const {
    Profile p(counts_.size());
    for (int i = players() - 1; i >= 0; --i) {
      p[i] = static_cast<Action>(idx % counts_[i]);
      idx /= counts_[i];
    }
    return p;
  }

  /// Flat index over the opponents of `player` (all coordinates but one),
  /// row-major in player order. Best replies depend only on this value.
  std::int64_t opponent_index(Player player, const Profile& p) const {
    std::int64_t idx = 0;
    for (int j = 0; j < players(); ++j)
      if (j != player) idx = idx * counts_[j] + p[j];
    return idx;
  }

  std::int64_t opponent_count(Player player) const {
    return profile_count_ / counts_[player];
  }

  /// Cyclic successor: the lexicographic successor of p on the 0-based
  /// row-major index, wrapping at the last profile. Each coordinate is
  /// either unchanged or advanced by one modulo its action count.
  Profile cyclic_successor(const Profile& p) const {
    return unflatten((flatten(p) + 1) % profile_count_);
  }

  friend bool operator==(const ProfileSpace& a, const ProfileSpace& b) {
    return a.counts_ == b.counts_;
  }
  friend bool operator!=(const ProfileSpace& a, const ProfileSpace& b) {
    return !(a == b);
  }

 private:
  std::vector<int> counts_;
  std::int64_t profile_count_ = 0;
};

/// Finite normal-form game with one exact integer payoff tensor per player,
/// stored flat in the space's row-major profile order. Immutable after
/// construction.
class Game {
 public:
  Game(ProfileSpace space, std::vector<std::vector<std::int64_t>> payoffs,
       std::string name = "")
      : space_(std::move(space)),
        payoffs_(std::move(payoffs)),
        name_(std::move(name)) {
    if (static_cast<int>(payoffs_.size()) != space_.players())
      throw std::invalid_argument("Game: one payoff tensor per player required");
    for (const auto& t : payoffs_)
      if (static_cast<std::int64_t>(t.size()) != space_.profile_count())
        throw std::invalid_argument("Game: payoff tensor size mismatch");
  }

  const ProfileSpace& space() const { return space_; }
  int players() const { return space_.players(); }
  const std::string& name() const { return name_; }

  std::int64_t payoff(Player i, const Profile& p) const {
    return payoffs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(space_.flatten(p))];
  }
  std::int64_t payoff_flat(Player i, std::int64_t flat) const {
    return payoffs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(flat)];
  }
  const std::vector<std::int64_t>& payoff_tensor(Player i) const {
    return payoffs_[static_cast<std::size_t>(i)];
  }

 private:
  ProfileSpace space_;
  std::vector<std::vector<std::int64_t>> payoffs_;
  std::string name_;
};

namespace detail {

inline void check_profile(const ProfileSpace& space, const Profile& p) {
  if (!space.contains(p))
    throw std::invalid_argument("profile not valid in this space");
}

inline void check_player(const ProfileSpace& space, Player i) {
  if (i < 0 || i >= space.players())
    throw std::invalid_argument("player index out of range");
}

/// Best replies from a single player's payoff tensor. Keeping this free of
/// the full Game lets strategy builders receive only their own payoffs.
inline std::vector<Action> best_replies_own(const ProfileSpace& space,
                                            const std::vector<std::int64_t>& own,
                                            Player player, const Profile& profile) {
  const int k = space.actions(player);
  Profile probe = profile;
  probe[player] = 0;
  std::int64_t base = space.flatten(probe);
  // stride of player's coordinate in the flat index
  std::int64_t stride = 1;
  for (int j = player + 1; j < space.players(); ++j) stride *= space.actions(j);

  std::int64_t best = own[static_cast<std::size_t>(base)];
  for (Action a = 1; a < k; ++a)
    best = std::max(best, own[static_cast<std::size_t>(base + stride * a)]);
  std::vector<Action> out;
  for (Action a = 0; a < k; ++a)
    if (own[static_cast<std::size_t>(base + stride * a)] == best) out.push_back(a);
  return out;
}

inline bool is_best_replying_own(const ProfileSpace& space,
                                 const std::vector<std::int64_t>& own,
                                 Player player, const Profile& profile) {
  const int k = space.actions(player);
  Profile probe = profile;
  const std::int64_t here = own[static_cast<std::size_t>(space.flatten(profile))];
  for (Action a = 0; a < k; ++a) {
    probe[player] = a;
    if (own[static_cast<std::size_t>(space.flatten(probe))] > here) return false;
  }
  return true;
}

}  // namespace detail

/// The set of actions maximizing `player`'s payoff against the opponents'
/// coordinates of `profile`. Nonempty, sorted ascending.
inline std::vector<Action> best_replies(const Game& game, const Profile& profile,
                                        Player player) {
  detail::check_profile(game.space(), profile);
  detail::check_player(game.space(), player);
  return detail::best_replies_own(game.space(), game.payoff_tensor(player), player,
                                  profile);
}

inline bool is_best_replying(const Game& game, const Profile& profile,
                             Player player) {
  detail::check_profile(game.space(), profile);
  detail::check_player(game.space(), player);
  return detail::is_best_replying_own(game.space(), game.payoff_tensor(player),
                                      player, profile);
}

/// All pure Nash equilibria, in lexicographic profile order.
inline std::vector<Profile> find_pne(const Game& game) {
  std::vector<Profile> out;
  const std::int64_t total = game.space().profile_count();
  for (std::int64_t f = 0; f < total; ++f) {
    Profile p = game.space().unflatten(f);
    bool pne = true;
    for (Player i = 0; i < game.players() && pne; ++i)
      pne = detail::is_best_replying_own(game.space(), game.payoff_tensor(i), i, p);
    if (pne) out.push_back(std::move(p));
  }
  return out;
}

/// The best-reply correspondence: for each player, per opponent profile, the
/// sorted nonempty set of best replies. This is the quotient on which every
/// dynamics in this library depends; two games with equal structures are
/// indistinguishable to them.
class BestReplyStructure {
 public:
  BestReplyStructure(ProfileSpace space,
                     std::vector<std::vector<std::vector<Action>>> replies)
      : space_(std::move(space)), replies_(std::move(replies)) {
    generic_ = true;
    for (Player i = 0; i < space_.players(); ++i) {
      if (static_cast<std::int64_t>(replies_[i].size()) != space_.opponent_count(i))
        throw std::invalid_argument("BestReplyStructure: reply table size mismatch");
      for (const auto& set : replies_[static_cast<std::size_t>(i)]) {
        if (set.empty())
          throw std::invalid_argument("BestReplyStructure: empty best-reply set");
        if (set.size() != 1) generic_ = false;
      }
    }
  }

  const ProfileSpace& space() const { return space_; }
  bool generic() const { return generic_; }

  const std::vector<Action>& at(Player player, const Profile& profile) const {
    return replies_[static_cast<std::size_t>(player)]
                   [static_cast<std::size_t>(space_.opponent_index(player, profile))];
  }
  const std::vector<Action>& at_opp(Player player, std::int64_t opp_index) const {
    return replies_[static_cast<std::size_t>(player)][static_cast<std::size_t>(opp_index)];
  }

  friend bool operator==(const BestReplyStructure& a, const BestReplyStructure& b) {
    return a.space_ == b.space_ && a.replies_ == b.replies_;
  }

 private:
  ProfileSpace space_;
  std::vector<std::vector<std::vector<Action>>> replies_;
  bool generic_;
};

inline BestReplyStructure best_reply_structure(const Game& game) {
  const ProfileSpace& space = game.space();
  std::vector<std::vector<std::vector<Action>>> replies(
      static_cast<std::size_t>(space.players()));
  for (Player i = 0; i < space.players(); ++i) {
    replies[static_cast<std::size_t>(i)].resize(
        static_cast<std::size_t>(space.opponent_count(i)));
    const std::int64_t total = space.profile_count();
    for (std::int64_t f = 0; f < total; ++f) {
      Profile p = space.unflatten(f);
      if (p[i] != 0) continue;  // one representative per opponent profile
      replies[static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(space.opponent_index(i, p))] =
          detail::best_replies_own(space, game.payoff_tensor(i), i, p);
    }
  }
  return BestReplyStructure(space, std::move(replies));
}

/// True iff every best-reply set is a singleton.
inline bool is_generic(const Game& game) {
  const ProfileSpace& space = game.space();
  const std::int64_t total = space.profile_count();
  for (Player i = 0; i < space.players(); ++i)
    for (std::int64_t f = 0; f < total; ++f) {
      Profile p = space.unflatten(f);
      if (p[i] != 0) continue;
      if (detail::best_replies_own(space, game.payoff_tensor(i), i, p).size() != 1)
        return false;
    }
  return true;
}

/// The action that is the unique best reply at every profile, if one exists.
inline std::optional<Action> strictly_dominant_action(const Game& game,
                                                      Player player) {
  detail::check_player(game.space(), player);
  const ProfileSpace& space = game.space();
  std::optional<Action> dominant;
  const std::int64_t total = space.profile_count();
  for (std::int64_t f = 0; f < total; ++f) {
    Profile p = space.unflatten(f);
    if (p[player] != 0) continue;
    auto br = detail::best_replies_own(space, game.payoff_tensor(player), player, p);
    if (br.size() != 1) return std::nullopt;
    if (!dominant) dominant = br[0];
    if (*dominant != br[0]) return std::nullopt;
  }
  return dominant;
}

/// "(a,b,c)" with 1-based actions, matching report and file conventions.
inline std::string format_profile(const Profile& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i] + 1);
  }
  out += ")";
  return out;
}

}  // namespace gamedyn

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gamedyn/game.hpp"
#include "gamedyn/rng.hpp"

namespace gamedyn {

enum class GameClass { All, Generic };

inline const char* game_class_name(GameClass c) {
  return c == GameClass::All ? "all" : "generic";
}

/// What to enumerate: best-reply structures over a profile space, either
/// every structure of the class exactly once or an i.i.d. uniform sample.
struct EnumerationSpec {
  std::vector<int> action_counts;
  GameClass game_class = GameClass::All;
  bool sampled = false;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  std::int64_t exhaustive_cap = 10'000'000;

  static EnumerationSpec exhaustive(std::vector<int> counts, GameClass cls) {
    EnumerationSpec s;
    s.action_counts = std::move(counts);
    s.game_class = cls;
    return s;
  }
  static EnumerationSpec sample(std::vector<int> counts, GameClass cls,
                                std::int64_t count, std::uint64_t seed) {
    EnumerationSpec s;
    s.action_counts = std::move(counts);
    s.game_class = cls;
    s.sampled = true;
    s.sample_count = count;
    s.seed = seed;
    return s;
  }
};

/// Number of best-reply structures: per player, one choice per opponent
/// profile, with 2^k - 1 nonempty action subsets in the full class and k
/// singletons in the generic class.
inline std::int64_t count_structures(const EnumerationSpec& spec) {
  ProfileSpace space(spec.action_counts);
  unsigned __int128 total = 1;
  for (Player i = 0; i < space.players(); ++i) {
    const int k = space.actions(i);
    if (k > 62) throw resource_error("count_structures: action count too large");
    const std::int64_t choices =
        spec.game_class == GameClass::All ? (std::int64_t{1} << k) - 1 : k;
    for (std::int64_t o = 0; o < space.opponent_count(i); ++o) {
      total *= static_cast<unsigned __int128>(choices);
      if (total > static_cast<unsigned __int128>(INT64_MAX))
        throw resource_error("count_structures: structure count overflows");
    }
  }
  return static_cast<std::int64_t>(total);
}

/// Indexable stream of best-reply structures. Exhaustive mode decodes the
/// index as mixed-radix digits (player-major, last digit fastest), so every
/// structure appears exactly once and item i is a pure function of (spec, i).
/// Sampled mode derives an independent generator per index.
class StructureStream {
 public:
  explicit StructureStream(EnumerationSpec spec)
      : spec_(std::move(spec)), space_(spec_.action_counts) {
    for (Player i = 0; i < space_.players(); ++i) {
      const int k = space_.actions(i);
      choices_.push_back(spec_.game_class == GameClass::All
                             ? (std::int64_t{1} << k) - 1
                             : k);
    }
    if (spec_.sampled) {
      if (spec_.sample_count < 0)
        throw std::invalid_argument("StructureStream: negative sample count");
      size_ = spec_.sample_count;
    } else {
      const std::int64_t count = count_structures(spec_);
      if (count > spec_.exhaustive_cap)
        throw resource_error("exhaustive enumeration needs " +
                             std::to_string(count) + " structures; cap is " +
                             std::to_string(spec_.exhaustive_cap));
      size_ = count;
    }
  }

  const ProfileSpace& space() const { return space_; }
  const EnumerationSpec& spec() const { return spec_; }
  std::int64_t size() const { return size_; }

  BestReplyStructure at(std::int64_t index) const {
    if (index < 0 || index >= size_)
      throw std::invalid_argument("StructureStream: index out of range");
    std::vector<std::vector<std::vector<Action>>> replies(
        static_cast<std::size_t>(space_.players()));
    if (spec_.sampled) {
      SeededRng rng = SeededRng::derive(spec_.seed, static_cast<std::uint64_t>(index));
      for (Player i = 0; i < space_.players(); ++i) {
        auto& table = replies[static_cast<std::size_t>(i)];
        table.resize(static_cast<std::size_t>(space_.opponent_count(i)));
        for (auto& set : table)
          set = decode_digit(i, static_cast<std::int64_t>(rng.bounded(
                                    static_cast<std::uint64_t>(choices_[static_cast<std::size_t>(i)]))));
      }
    } else {
      // digits peeled off least significant first: last player, last
      // opponent profile varies fastest
      std::int64_t rest = index;
      for (Player i = space_.players() - 1; i >= 0; --i) {
        auto& table = replies[static_cast<std::size_t>(i)];
        table.resize(static_cast<std::size_t>(space_.opponent_count(i)));
        for (std::int64_t o = space_.opponent_count(i) - 1; o >= 0; --o) {
          const std::int64_t c = choices_[static_cast<std::size_t>(i)];
          table[static_cast<std::size_t>(o)] = decode_digit(i, rest % c);
          rest /= c;
        }
      }
    }
    return BestReplyStructure(space_, std::move(replies));
  }

  /// Inverse of exhaustive decoding.
  std::int64_t index_of(const BestReplyStructure& s) const {
    if (spec_.sampled)
      throw std::invalid_argument("index_of is defined for exhaustive streams only");
    if (s.space() != space_)
      throw std::invalid_argument("index_of: structure space mismatch");
    std::int64_t index = 0;
    for (Player i = 0; i < space_.players(); ++i)
      for (std::int64_t o = 0; o < space_.opponent_count(i); ++o)
        index = index * choices_[static_cast<std::size_t>(i)] +
                encode_digit(i, s.at_opp(i, o));
    return index;
  }

 private:
  std::vector<Action> decode_digit(Player i, std::int64_t digit) const {
    std::vector<Action> set;
    if (spec_.game_class == GameClass::All) {
      const std::int64_t mask = digit + 1;  // nonempty subsets only
      for (Action a = 0; a < space_.actions(i); ++a)
        if (mask & (std::int64_t{1} << a)) set.push_back(a);
    } else {
      set.push_back(static_cast<Action>(digit));
    }
    return set;
  }

  std::int64_t encode_digit(Player, const std::vector<Action>& set) const {
    if (spec_.game_class == GameClass::All) {
      std::int64_t mask = 0;
      for (Action a : set) mask |= std::int64_t{1} << a;
      return mask - 1;
    }
    if (set.size() != 1)
      throw std::invalid_argument("index_of: non-singleton set in generic class");
    return set[0];
  }

  EnumerationSpec spec_;
  ProfileSpace space_;
  std::vector<std::int64_t> choices_;
  std::int64_t size_ = 0;
};

/// Smallest integer game inducing the given best replies: payoff 1 on the
/// chosen actions, 0 elsewhere.
inline Game realize_game(const BestReplyStructure& s) {
  const ProfileSpace& space = s.space();
  std::vector<std::vector<std::int64_t>> payoffs(
      static_cast<std::size_t>(space.players()));
  for (Player i = 0; i < space.players(); ++i)
    payoffs[static_cast<std::size_t>(i)].resize(
        static_cast<std::size_t>(space.profile_count()));
  for (std::int64_t f = 0; f < space.profile_count(); ++f) {
    Profile p = space.unflatten(f);
    for (Player i = 0; i < space.players(); ++i) {
      const auto& br = s.at(i, p);
      const bool in = std::find(br.begin(), br.end(), p[static_cast<std::size_t>(i)]) != br.end();
      payoffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] = in ? 1 : 0;
    }
  }
  return Game(space, std::move(payoffs));
}

/// Uniform integer payoffs in [0, 2^31 - 1], deterministic in the seed. For
/// the generic class, draws are rejected until every best reply is unique.
inline Game random_game(const std::vector<int>& action_counts, std::uint64_t seed,
                        GameClass game_class = GameClass::All,
                        int max_attempts = 10'000) {
  ProfileSpace space(action_counts);
  SeededRng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<std::int64_t>> payoffs(
        static_cast<std::size_t>(space.players()));
    for (auto& tensor : payoffs) {
      tensor.resize(static_cast<std::size_t>(space.profile_count()));
      for (auto& v : tensor)
        v = static_cast<std::int64_t>(rng.bounded(std::uint64_t{1} << 31));
    }
    Game g(space, std::move(payoffs));
    if (game_class == GameClass::All || is_generic(g)) return g;
  }
  throw resource_error("random_game: genericity rejection cap exceeded");
}

/// Nested integer-set arrays, 1-based: one array per player, one set per
/// opponent profile.
inline std::string serialize_structure(const BestReplyStructure& s) {
  std::string out = "[";
  for (Player i = 0; i < s.space().players(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::int64_t o = 0; o < s.space().opponent_count(i); ++o) {
      if (o) out += ",";
      out += "[";
      const auto& set = s.at_opp(i, o);
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(set[j] + 1);
      }
      out += "]";
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace gamedyn

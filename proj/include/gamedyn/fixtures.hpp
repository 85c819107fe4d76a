#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gamedyn/dynamics.hpp"
#include "gamedyn/game.hpp"

namespace gamedyn {

/// 2-by-2-by-2 game with a single equilibrium at (1,1,1) that historyless
/// stochastic play cannot reach once player 3 shows its second action:
/// action 2 is always among player 3's best replies, so player 3 never
/// leaves it.
inline Game lemma10_game() {
  // payoff[x][y][z] = (u1, u2, u3), all 1-based in the table
  static constexpr std::array<std::array<std::array<std::array<std::int64_t, 3>, 2>, 2>, 2>
      table{{
          {{{{{{1, 1, 1}}, {{1, 0, 1}}}}, {{{{1, 0, 0}}, {{0, 1, 1}}}}}},
          {{{{{{0, 1, 0}}, {{0, 1, 1}}}}, {{{{0, 0, 0}}, {{1, 0, 1}}}}}},
      }};
  ProfileSpace space({2, 2, 2});
  std::vector<std::vector<std::int64_t>> payoffs(3);
  for (auto& t : payoffs) t.resize(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const std::int64_t f = space.flatten({x, y, z});
        for (Player i = 0; i < 3; ++i)
          payoffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] =
              table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]
                   [static_cast<std::size_t>(z)][static_cast<std::size_t>(i)];
      }
  return Game(std::move(space), std::move(payoffs), "lemma10");
}

/// Generic 2-by-2-by-k3-by-k4 game: player 1 matches player 2, players 3
/// and 4 match each other, and player 2 matches player 1 except when
/// players 3 and 4 both play 1, in which case it mismatches. From
/// (1,1,1,1), players 3 and 4 never move and players 1 and 2 chase each
/// other forever.
inline Game lemma14_game(int k3, int k4) {
  if (k3 < 2 || k4 < 2)
    throw std::invalid_argument("lemma14_game: action counts must be >= 2");
  ProfileSpace space({2, 2, k3, k4});
  std::vector<std::vector<std::int64_t>> payoffs(4);
  for (auto& t : payoffs) t.resize(static_cast<std::size_t>(space.profile_count()));
  for (std::int64_t f = 0; f < space.profile_count(); ++f) {
    Profile a = space.unflatten(f);
    const bool match12 = a[0] == a[1];
    const bool both_one = a[2] == 0 && a[3] == 0;
    const bool match34 = a[2] == a[3];
    payoffs[0][static_cast<std::size_t>(f)] = match12 ? 1 : 0;
    payoffs[1][static_cast<std::size_t>(f)] = (match12 != both_one) ? 1 : 0;
    payoffs[2][static_cast<std::size_t>(f)] = match34 ? 1 : 0;
    payoffs[3][static_cast<std::size_t>(f)] = match34 ? 1 : 0;
  }
  return Game(std::move(space), std::move(payoffs),
              "lemma14(" + std::to_string(k3) + "," + std::to_string(k4) + ")");
}

namespace detail {

/// 3-by-3-by-3 base game for lemma15_game; entry (x,y,z) holds
/// (u1,u2,u3).
inline std::int64_t lemma15_base_payoff(Player i, int x, int y, int z) {
  static constexpr std::array<std::array<std::array<std::array<std::int64_t, 3>, 3>, 3>, 3>
      table{{
          {{{{{{0, 0, 0}}, {{0, 4, 4}}, {{2, 1, 2}}}},
            {{{{4, 4, 0}}, {{4, 0, 4}}, {{3, 1, 3}}}},
            {{{{1, 2, 3}}, {{1, 3, 3}}, {{0, 0, 0}}}}}},
          {{{{{{4, 0, 4}}, {{4, 4, 0}}, {{3, 1, 3}}}},
            {{{{0, 4, 4}}, {{0, 0, 0}}, {{2, 1, 2}}}},
            {{{{1, 3, 3}}, {{1, 2, 2}}, {{0, 0, 0}}}}}},
          {{{{{{2, 2, 1}}, {{3, 3, 1}}, {{0, 0, 0}}}},
            {{{{3, 3, 1}}, {{2, 2, 1}}, {{0, 0, 0}}}},
            {{{{0, 0, 0}}, {{0, 0, 0}}, {{6, 6, 6}}}}}},
      }};
  return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]
              [static_cast<std::size_t>(z)][static_cast<std::size_t>(i)];
}

}  // namespace detail

/// Three-player game, at least three actions each, built by padding a
/// 3-by-3-by-3 base: actions beyond the third pay their owner 0 and look
/// like the third action to everyone else. Unique equilibrium (3,3,3), yet
/// any profile containing both a 1 and a 2 keeps that property under
/// historyless stochastic play.
inline Game lemma15_game(int k1, int k2, int k3) {
  if (k1 < 3 || k2 < 3 || k3 < 3)
    throw std::invalid_argument("lemma15_game: action counts must be >= 3");
  ProfileSpace space({k1, k2, k3});
  std::vector<std::vector<std::int64_t>> payoffs(3);
  for (auto& t : payoffs) t.resize(static_cast<std::size_t>(space.profile_count()));
  for (std::int64_t f = 0; f < space.profile_count(); ++f) {
    Profile a = space.unflatten(f);
    const int x = std::min(a[0], 2);
    const int y = std::min(a[1], 2);
    const int z = std::min(a[2], 2);
    for (Player i = 0; i < 3; ++i)
      payoffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] =
          a[static_cast<std::size_t>(i)] > 2
              ? 0
              : detail::lemma15_base_payoff(i, x, y, z);
  }
  return Game(std::move(space), std::move(payoffs),
              "lemma15(" + std::to_string(k1) + "," + std::to_string(k2) + "," +
                  std::to_string(k3) + ")");
}

/// Adversarial pair for a given deterministic historyless uncoupled rule on
/// a 2-by-k space. In U, player 1 prefers action 1 and player 2 wants to
/// match at 1 or sit at >= 2 when player 1 plays 2. U' bribes player 1 with
/// payoff 2 at (2,b2), b2 >= 2, exactly where the supplied rule would send
/// player 2 back to 1 from (1,b2). Any rule that repeats when best-replying
/// and moves when not then cycles forever from (2,1) without reaching the
/// equilibrium (1,1).
inline std::pair<Game, Game> theorem18_adversary(
    const DeterministicHistorylessMapping& mapping, int k) {
  if (k < 2) throw std::invalid_argument("theorem18_adversary: k must be >= 2");
  ProfileSpace space({2, k});
  const std::int64_t total = space.profile_count();

  std::vector<std::int64_t> u1(static_cast<std::size_t>(total));
  std::vector<std::int64_t> u2(static_cast<std::size_t>(total));
  for (std::int64_t f = 0; f < total; ++f) {
    Profile a = space.unflatten(f);
    u1[static_cast<std::size_t>(f)] = a[0] == 0 ? 1 : 0;
    u2[static_cast<std::size_t>(f)] =
        ((a[0] == 0 && a[1] == 0) || (a[0] == 1 && a[1] >= 1)) ? 1 : 0;
  }
  Game u_game(space, {u1, u2}, "theorem18-u(" + std::to_string(k) + ")");

  DeterministicPlayerRule rule2 = mapping(space, 1, u2);
  std::vector<std::int64_t> u1_prime = u1;
  for (Action b2 = 1; b2 < k; ++b2)
    if (rule2({0, b2}) == 0)
      u1_prime[static_cast<std::size_t>(space.flatten({1, b2}))] = 2;

  Game u_prime(space, {std::move(u1_prime), std::move(u2)},
               "theorem18-uprime(" + std::to_string(k) + ")");
  return {std::move(u_game), std::move(u_prime)};
}

// ---------------------------------------------------------------------------
// Catalog of named fixtures for the command line and tests.

struct FixtureGame {
  std::string name;
  Game game;
  std::vector<Profile> unique_pne;    // if nonempty, find_pne must equal this
  std::vector<Profile> contains_pne;  // must each appear in find_pne
  std::string failing_strategy;       // strategy expected to fail, "" if none
  Profile witness;                    // start from which that strategy fails

  /// Re-verify the equilibrium annotations against the game itself.
  void verify() const {
    std::vector<Profile> pne = find_pne(game);
    if (!unique_pne.empty() && pne != unique_pne)
      throw std::logic_error("fixture " + name + ": equilibrium annotation mismatch");
    for (const Profile& p : contains_pne)
      if (std::find(pne.begin(), pne.end(), p) == pne.end())
        throw std::logic_error("fixture " + name + ": expected equilibrium missing");
  }
};

inline std::vector<std::string> fixture_names() {
  return {"lemma10", "lemma14", "lemma15", "theorem18u", "theorem18uprime"};
}

/// Build a catalog fixture by name. Parameter lists (1-based action counts)
/// default to the smallest legal size.
inline FixtureGame make_fixture(const std::string& name,
                                std::vector<int> params = {}) {
  FixtureGame f{name, lemma10_game(), {}, {}, "", {}};
  if (name == "lemma10") {
    if (!params.empty())
      throw std::invalid_argument("fixture lemma10 takes no parameters");
    f.unique_pne = {{0, 0, 0}};
    f.failing_strategy = "h";
    f.witness = {0, 0, 1};
  } else if (name == "lemma14") {
    if (params.empty()) params = {2, 2};
    if (params.size() != 2)
      throw std::invalid_argument("fixture lemma14 takes parameters k3,k4");
    f.game = lemma14_game(params[0], params[1]);
    f.contains_pne = {{1, 1, 1, 1}};
    f.failing_strategy = "h";
    f.witness = {0, 0, 0, 0};
  } else if (name == "lemma15") {
    if (params.empty()) params = {3, 3, 3};
    if (params.size() != 3)
      throw std::invalid_argument("fixture lemma15 takes parameters k1,k2,k3");
    f.game = lemma15_game(params[0], params[1], params[2]);
    f.unique_pne = {{2, 2, 2}};
    f.failing_strategy = "h";
    f.witness = {0, 1, 0};
  } else if (name == "theorem18u" || name == "theorem18uprime") {
    if (params.empty()) params = {2};
    if (params.size() != 1)
      throw std::invalid_argument("fixture " + name + " takes parameter k");
    auto [u, uprime] = theorem18_adversary(min_br_mapping(), params[0]);
    if (name == "theorem18u") {
      f.game = std::move(u);
      f.unique_pne = {{0, 0}};
    } else {
      f.game = std::move(uprime);
      f.contains_pne = {{0, 0}};
      f.failing_strategy = "min-br";
      f.witness = {1, 0};
    }
  } else {
    throw std::invalid_argument("unknown fixture: " + name);
  }
  f.verify();
  return f;
}

}  // namespace gamedyn

#include <doctest.h>

#include "gamedyn/analysis.hpp"
#include "gamedyn/fixtures.hpp"

using namespace gamedyn;

TEST_CASE("lemma10 payoff table") {
  Game g = lemma10_game();
  CHECK(g.space().action_counts() == std::vector<int>{2, 2, 2});
  // spot checks against the defining matrices, 1-based (x,y,z)
  CHECK(g.payoff(0, {0, 0, 0}) == 1);  // (1,1,1) -> u1 = 1
  CHECK(g.payoff(2, {0, 0, 1}) == 1);  // (1,1,2) -> u3 = 1
  CHECK(g.payoff(1, {1, 0, 0}) == 1);  // (2,1,1) -> u2 = 1
  CHECK(g.payoff(0, {1, 1, 1}) == 1);  // (2,2,2) -> u1 = 1
  CHECK(g.payoff(2, {1, 1, 0}) == 0);  // (2,2,1) -> u3 = 0
  CHECK(find_pne(g) == std::vector<Profile>{{0, 0, 0}});
}

TEST_CASE("lemma14 games") {
  CHECK_THROWS_AS(lemma14_game(1, 2), std::invalid_argument);

  Game g = lemma14_game(2, 2);
  CHECK(is_generic(g));
  // the literal payoff rules admit (1,1,2,2) as well as (2,2,2,2)
  CHECK(find_pne(g) == std::vector<Profile>{{0, 0, 1, 1}, {1, 1, 1, 1}});

  Verdict v = decide_success(canonical_h(g), g);
  CHECK(v.outcome == Outcome::Fails);
  TransitionGraph graph = build_graph(canonical_h(g), g);
  auto reach = reachable_set(graph, g.space().flatten({0, 0, 0, 0}));
  for (std::int64_t r : reach) {
    Profile p = g.space().unflatten(r);
    CHECK(p != Profile{1, 1, 1, 1});
    // players 3 and 4 never leave their first actions
    CHECK(p[2] == 0);
    CHECK(p[3] == 0);
  }

  // matching breaks down when the matchers' action counts differ: the
  // shorter player is indifferent against an unmatchable action
  CHECK(is_generic(lemma14_game(3, 3)));
  CHECK_FALSE(is_generic(lemma14_game(3, 2)));
  CHECK_FALSE(is_generic(lemma14_game(2, 4)));
}

TEST_CASE("lemma15 games") {
  CHECK_THROWS_AS(lemma15_game(2, 3, 3), std::invalid_argument);

  for (auto [k1, k2, k3] :
       {std::tuple{3, 3, 3}, std::tuple{4, 3, 3}, std::tuple{3, 4, 4}}) {
    Game g = lemma15_game(k1, k2, k3);
    CHECK(find_pne(g) == std::vector<Profile>{{2, 2, 2}});
    for (Player i = 0; i < 3; ++i)
      CHECK_FALSE(strictly_dominant_action(g, i).has_value());

    Verdict v = decide_success(canonical_h(g), g);
    CHECK(v.outcome == Outcome::Fails);

    // the named start (1,2,1) cannot reach the equilibrium repeat, and every
    // profile it reaches keeps both a first and a second action in play
    TransitionGraph graph = build_graph(canonical_h(g), g);
    auto reach = reachable_set(graph, g.space().flatten({0, 1, 0}));
    for (std::int64_t r : reach) {
      Profile p = g.space().unflatten(r);
      CHECK(p != Profile{2, 2, 2});
      bool has_one = false, has_two = false;
      for (Action a : p) {
        has_one = has_one || a == 0;
        has_two = has_two || a == 1;
      }
      CHECK(has_one);
      CHECK(has_two);
    }
  }

  // padded actions pay their owner nothing and mirror action 3 for others
  Game g = lemma15_game(5, 3, 3);
  CHECK(g.payoff(0, {4, 1, 2}) == 0);
  CHECK(g.payoff(1, {4, 1, 2}) == g.payoff(1, {2, 1, 2}));
  CHECK(g.payoff(2, {3, 0, 1}) == g.payoff(2, {2, 0, 1}));
}

TEST_CASE("theorem18 adversary payoffs and orbits") {
  for (int k : {2, 3, 4}) {
    auto [u, uprime] = theorem18_adversary(min_br_mapping(), k);

    // player 1 earns 1 exactly on its first action in U
    for (std::int64_t f = 0; f < u.space().profile_count(); ++f) {
      Profile p = u.space().unflatten(f);
      CHECK(u.payoff(0, p) == (p[0] == 0 ? 1 : 0));
    }
    CHECK(find_pne(u) == std::vector<Profile>{{0, 0}});
    CHECK(strictly_dominant_action(u, 0) == Action{0});

    // min-br answers (1,b2) with action 1 for player 2, so every (2,b2)
    // with b2 >= 2 gets the raised payoff in U'
    for (Action b2 = 1; b2 < k; ++b2) CHECK(uprime.payoff(0, {1, b2}) == 2);
    CHECK(uprime.payoff(0, {1, 0}) == 0);

    // (1,1) stays an equilibrium of U'
    auto pne = find_pne(uprime);
    CHECK(std::find(pne.begin(), pne.end(), Profile{0, 0}) != pne.end());

    // the orbit from (2,1) never reaches (1,1)
    StrategyVector f = min_br(uprime);
    auto orbit = walk_orbit(f, RecallState{{{1, 0}}},
                            u.space().profile_count() * u.space().profile_count());
    for (const RecallState& s : orbit) CHECK(s.latest() != Profile{0, 0});

    CHECK(decide_success(f, uprime).outcome == Outcome::Fails);
    CHECK(decide_success(min_br(u), u).outcome == Outcome::SelfStabilizes);
  }
  CHECK_THROWS_AS(theorem18_adversary(min_br_mapping(), 1), std::invalid_argument);
}

TEST_CASE("theorem18 orbit property holds for other conforming rules too") {
  // repeat when best-replying, otherwise switch to the highest best reply
  DeterministicHistorylessMapping max_br =
      [](const ProfileSpace& space, Player i, const std::vector<std::int64_t>& own) {
        return DeterministicPlayerRule([space, i, own](const Profile& a) {
          auto br = detail::best_replies_own(space, own, i, a);
          if (std::find(br.begin(), br.end(), a[static_cast<std::size_t>(i)]) != br.end())
            return a[static_cast<std::size_t>(i)];
          return br.back();
        });
      };
  for (int k : {2, 3}) {
    auto [u, uprime] = theorem18_adversary(max_br, k);
    Game up = uprime;
    StrategyVector f = deterministic_historyless_strategy(up, max_br);
    auto orbit = walk_orbit(f, RecallState{{{1, 0}}}, 64);
    for (const RecallState& s : orbit) CHECK(s.latest() != Profile{0, 0});
    CHECK(decide_success(f, up).outcome == Outcome::Fails);
  }
}

TEST_CASE("fixture catalog re-verifies annotations") {
  for (const std::string& name : fixture_names()) {
    FixtureGame f = make_fixture(name);
    CHECK(f.game.players() >= 2);
    if (!f.failing_strategy.empty()) CHECK_FALSE(f.witness.empty());
  }
  CHECK(make_fixture("lemma14", {3, 3}).game.space().action_counts() ==
        std::vector<int>{2, 2, 3, 3});
  CHECK_THROWS_AS(make_fixture("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(make_fixture("lemma10", {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_fixture("lemma15", {3}), std::invalid_argument);
}

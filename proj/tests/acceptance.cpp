// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gamedyn/analysis.hpp"
#include "gamedyn/classcheck.hpp"
#include "gamedyn/dynamics.hpp"
#include "gamedyn/fixtures.hpp"
#include "gamedyn/generators.hpp"

using namespace gamedyn;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("criterion %2d %-34s %s  (%s) [%.1fs]\n", criterion,
              name.c_str(), pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int criterion, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(criterion, name, pass, detail, seconds);
}

const StrategyMapping h_map = [](const Game& g) { return canonical_h(g); };
const StrategyMapping det3_map = [](const Game& g) { return det3(g); };
const StrategyMapping det2_map = [](const Game& g) { return det2(g); };

ClassCheckResult check_exhaustive(std::vector<int> size, GameClass cls,
                                  const StrategyMapping& m) {
  return check_class(StructureStream(EnumerationSpec::exhaustive(std::move(size), cls)),
                     m);
}

std::vector<Game> random_games_with_pne(const std::vector<int>& size, int count,
                                        std::uint64_t seed0) {
  std::vector<Game> out;
  std::uint64_t seed = seed0;
  while (static_cast<int>(out.size()) < count) {
    Game g = random_game(size, seed++);
    if (!find_pne(g).empty()) out.push_back(std::move(g));
  }
  return out;
}

std::pair<bool, std::string> criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  ClassCheckResult r22 = check_exhaustive({2, 2}, GameClass::All, h_map);
  ClassCheckResult r23 = check_exhaustive({2, 3}, GameClass::All, h_map);
  ClassCheckResult r24 = check_exhaustive({2, 4}, GameClass::All, h_map);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool counts = r22.checked == 81 && r23.checked == 1323 && r24.checked == 18225;
  const bool clean = r22.failed + r23.failed + r24.failed == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%lld/81, %lld/1323, %lld/18225 pass, %.1fs < 10s",
                static_cast<long long>(r22.passed), static_cast<long long>(r23.passed),
                static_cast<long long>(r24.passed), elapsed);
  return {counts && clean && elapsed < 10.0, buf};
}

std::pair<bool, std::string> criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  ClassCheckResult r222 = check_exhaustive({2, 2, 2}, GameClass::Generic, h_map);
  ClassCheckResult r223 = check_exhaustive({2, 2, 3}, GameClass::Generic, h_map);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool counts = r222.checked == 4096 && r223.checked == 331776;
  const bool clean = r222.failed + r223.failed == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%lld/4096, %lld/331776 pass, %.1fs < 60s",
                static_cast<long long>(r222.passed),
                static_cast<long long>(r223.passed), elapsed);
  return {counts && clean && elapsed < 60.0, buf};
}

std::pair<bool, std::string> criterion3() {
  Game l10 = lemma10_game();
  Verdict v = decide_success(canonical_h(l10), l10);
  const bool fails = v.outcome == Outcome::Fails;
  const bool witness =
      v.witness &&
      decode_state(v.space, v.recall, *v.witness).latest() == Profile{0, 0, 1};

  StructureStream stream(EnumerationSpec::exhaustive({2, 2, 2}, GameClass::All));
  ClassCheckResult r = check_class(stream, h_map);
  const std::int64_t l10_index = stream.index_of(best_reply_structure(l10));
  bool l10_found = false;
  for (const auto& f : r.failures) l10_found = l10_found || f.index == l10_index;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "fails with witness (1,1,2): %s; %lld/%lld structures fail, "
                "lemma10's among them: %s",
                fails && witness ? "yes" : "no", static_cast<long long>(r.failed),
                static_cast<long long>(r.checked), l10_found ? "yes" : "no");
  return {fails && witness && r.failed >= 1 && l10_found, buf};
}

std::pair<bool, std::string> criterion4() {
  Game g = lemma14_game(2, 2);
  Verdict v = decide_success(canonical_h(g), g);
  TransitionGraph graph = build_graph(canonical_h(g), g);
  auto reach = reachable_set(graph, g.space().flatten({0, 0, 0, 0}));
  const std::int64_t pne_repeat = g.space().flatten({1, 1, 1, 1});
  const bool excluded =
      std::find(reach.begin(), reach.end(), pne_repeat) == reach.end();
  char buf[120];
  std::snprintf(buf, sizeof buf, "fails: %s; (1,1,1,1) avoids the repeat: %s; %lld nodes",
                v.outcome == Outcome::Fails ? "yes" : "no", excluded ? "yes" : "no",
                static_cast<long long>(graph.node_count));
  return {v.outcome == Outcome::Fails && excluded && graph.node_count == 16, buf};
}

std::pair<bool, std::string> criterion5() {
  bool all = true;
  std::string detail;
  for (auto [k1, k2, k3] :
       {std::tuple{3, 3, 3}, std::tuple{4, 3, 3}, std::tuple{3, 4, 4}}) {
    Game g = lemma15_game(k1, k2, k3);
    Verdict v = decide_success(canonical_h(g), g);
    TransitionGraph graph = build_graph(canonical_h(g), g);
    auto reach = reachable_set(graph, g.space().flatten({0, 1, 0}));
    const std::int64_t pne_repeat = g.space().flatten({2, 2, 2});
    const bool witness_traps =
        std::find(reach.begin(), reach.end(), pne_repeat) == reach.end();
    const bool ok = v.outcome == Outcome::Fails && witness_traps &&
                    graph.node_count <= 48;
    all = all && ok;
    if (!detail.empty()) detail += ", ";
    detail += std::to_string(k1) + "x" + std::to_string(k2) + "x" +
              std::to_string(k3) + (ok ? " fails from (1,2,1)" : " UNEXPECTED");
  }
  return {all, detail};
}

std::pair<bool, std::string> criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool all = true;
  for (std::vector<int> size : {std::vector<int>{2, 2}, {2, 3}, {3, 3}}) {
    StructureStream stream(EnumerationSpec::exhaustive(size, GameClass::Generic));
    ClassCheckResult r = check_class(stream, h_map, CheckKind::Lemma12);
    all = all && r.failed == 0 && r.checked > 0;
    if (!detail.empty()) detail += ", ";
    detail += std::to_string(size[0]) + "x" + std::to_string(size[1]) + ": " +
              std::to_string(r.passed) + "/" + std::to_string(r.checked) +
              " (skipped " + std::to_string(r.skipped) + " dominant)";
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, ", %.1fs < 10s", elapsed);
  return {all && elapsed < 10.0, detail + buf};
}

std::pair<bool, std::string> criterion7() {
  ClassCheckResult r22 = check_exhaustive({2, 2}, GameClass::All, det3_map);
  ClassCheckResult r23 = check_exhaustive({2, 3}, GameClass::All, det3_map);
  std::int64_t random_fail = 0;
  for (const std::vector<int>& size : {std::vector<int>{3, 3, 3}, {2, 2, 2, 2}})
    for (const Game& g : random_games_with_pne(size, 1000, 0xD3))
      if (!decide_success(det3(g), g).succeeded()) ++random_fail;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "2x2: %lld/81, 2x3: %lld/1323, random 3x3x3 + 2x2x2x2: %lld/2000 "
                "failures",
                static_cast<long long>(r22.passed), static_cast<long long>(r23.passed),
                static_cast<long long>(random_fail));
  return {r22.failed == 0 && r22.checked == 81 && r23.failed == 0 &&
              r23.checked == 1323 && random_fail == 0,
          buf};
}

std::pair<bool, std::string> criterion8() {
  StructureStream sampled(
      EnumerationSpec::sample({4, 4}, GameClass::All, 100000, 0x44));
  ClassCheckResult r = check_class(sampled, det2_map);

  std::int64_t random_fail = 0;
  for (const Game& g : random_games_with_pne({4, 4, 4}, 1000, 0x444))
    if (!decide_success(det2(g), g).succeeded()) ++random_fail;

  bool refused = false;
  try {
    det2(random_game({3, 4}, 1));
  } catch (const std::invalid_argument&) {
    refused = true;
  }

  bool disjoint = true;
  for (int k : {4, 5, 6}) {
    ProfileSpace space({k, k});
    for (std::int64_t fa = 0; fa < space.profile_count(); ++fa)
      for (std::int64_t fb = 0; fb < space.profile_count(); ++fb) {
        Profile a = space.unflatten(fa), b = space.unflatten(fb);
        if (a == b) continue;
        bool move_on = true, query = true;
        for (int j = 0; j < 2; ++j) {
          int d = (a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)]) % k;
          if (d < 0) d += k;
          move_on = move_on && d <= 1;
          query = query && ((k - d) % k) <= 2;
        }
        disjoint = disjoint && !(move_on && query);
      }
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "sampled 4x4: %lld/100000 pass, random 4x4x4: %lld/1000 failures, "
                "rejects 3x4: %s, state types disjoint: %s",
                static_cast<long long>(r.passed), static_cast<long long>(random_fail),
                refused ? "yes" : "no", disjoint ? "yes" : "no");
  return {r.failed == 0 && r.checked == 100000 && random_fail == 0 && refused &&
              disjoint,
          buf};
}

std::pair<bool, std::string> criterion9() {
  bool all = true;
  std::string detail;
  for (int k : {2, 3, 4}) {
    auto [u, uprime] = theorem18_adversary(min_br_mapping(), k);
    StrategyVector f = min_br(uprime);
    Verdict v = decide_success(f, uprime);
    const std::int64_t bound =
        u.space().profile_count() * u.space().profile_count();
    bool orbit_clean = true;
    for (const RecallState& s : walk_orbit(f, RecallState{{{1, 0}}}, bound))
      orbit_clean = orbit_clean && s.latest() != Profile{0, 0};
    const bool ok = v.outcome == Outcome::Fails && orbit_clean;
    all = all && ok;
    if (!detail.empty()) detail += ", ";
    detail += "k=" + std::to_string(k) + (ok ? " fails, orbit avoids (1,1)" : " UNEXPECTED");
  }
  return {all, detail};
}

std::pair<bool, std::string> criterion10() {
  StructureStream stream(EnumerationSpec::exhaustive({2, 2}, GameClass::All));
  std::int64_t action_fail = 0, player_fail = 0, covered = 0;
  for (std::int64_t i = 0; i < stream.size(); ++i) {
    Game g = realize_game(stream.at(i));
    if (!decide_success(pad_action_reduction(h_map, 1, g), g).succeeded())
      ++action_fail;
    Game extended = apathetic_extension(g);
    if (decide_success(canonical_h(extended), extended).succeeded()) {
      ++covered;
      if (!decide_success(pad_player_reduction(h_map, g), g).succeeded())
        ++player_fail;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "pad-action: %lld/81 failures; pad-player: %lld/%lld covered "
                "failures",
                static_cast<long long>(action_fail),
                static_cast<long long>(player_fail), static_cast<long long>(covered));
  return {action_fail == 0 && player_fail == 0 && covered > 0, buf};
}

std::pair<bool, std::string> criterion11() {
  // conformance of the canonical dynamics on random games of random sizes
  SeededRng size_rng(0xB5);
  std::int64_t obs4_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(size_rng.bounded(2));
    std::vector<int> size;
    for (int i = 0; i < n; ++i)
      size.push_back(2 + static_cast<int>(size_rng.bounded(3)));
    Game g = random_game(size, 0x1000 + static_cast<std::uint64_t>(t));
    if (!check_observation4(canonical_h(g), g).ok()) ++obs4_bad;
  }

  // equal structures must give identical transition graphs
  std::int64_t pair_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::vector<int> size = t % 2 == 0 ? std::vector<int>{2, 3} : std::vector<int>{2, 2, 2};
    StructureStream stream(
        EnumerationSpec::sample(size, GameClass::All, 1, 0x2000 + static_cast<std::uint64_t>(t)));
    Game g1 = realize_game(stream.at(0));
    std::vector<std::vector<std::int64_t>> alt;
    for (Player i = 0; i < g1.players(); ++i) {
      alt.push_back(g1.payoff_tensor(i));
      for (auto& v : alt.back()) v = v * (2 + i) + 5;
    }
    Game g2(g1.space(), std::move(alt));
    TransitionGraph a = build_graph(canonical_h(g1), g1);
    TransitionGraph b = build_graph(canonical_h(g2), g2);
    bool same = a.successors == b.successors;
    if (t % 10 == 0) {
      TransitionGraph a3 = build_graph(det3(g1), g1);
      TransitionGraph b3 = build_graph(det3(g2), g2);
      same = same && a3.successors == b3.successors;
    }
    if (!same) ++pair_bad;
  }

  // realize/structure identity across the whole 2x2 class
  StructureStream stream22(EnumerationSpec::exhaustive({2, 2}, GameClass::All));
  std::int64_t roundtrip_bad = 0;
  for (std::int64_t i = 0; i < stream22.size(); ++i)
    if (!(best_reply_structure(realize_game(stream22.at(i))) == stream22.at(i)))
      ++roundtrip_bad;

  // simulation frequencies against the exact law, ten random states
  Game sim_game = random_game({3, 3}, 0xF00);
  StrategyVector h = canonical_h(sim_game);
  SeededRng state_rng(0xF01);
  std::int64_t freq_bad = 0;
  const int samples = 100000;
  for (int s = 0; s < 10; ++s) {
    Profile p = sim_game.space().unflatten(static_cast<std::int64_t>(
        state_rng.bounded(static_cast<std::uint64_t>(sim_game.space().profile_count()))));
    RecallState state{{p}};
    auto exact = transition_distribution(h, state);
    std::map<Profile, int> counts;
    for (int t = 0; t < samples; ++t) {
      SimulationTrace tr =
          simulate(h, sim_game, state, 1,
                   0x30000 + static_cast<std::uint64_t>(s) * samples +
                       static_cast<std::uint64_t>(t));
      counts[tr.profiles.back()]++;
    }
    for (const auto& [q, w] : exact) {
      const double expect = w.to_double();
      const double got = counts[q] / static_cast<double>(samples);
      const double sigma = std::sqrt(expect * (1 - expect) / samples);
      if (std::abs(got - expect) > 3 * sigma + 1e-12) ++freq_bad;
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "conformance: %lld/1000 bad, paired graphs: %lld/1000 bad, "
                "round-trip: %lld/81 bad, frequency outliers: %lld",
                static_cast<long long>(obs4_bad), static_cast<long long>(pair_bad),
                static_cast<long long>(roundtrip_bad),
                static_cast<long long>(freq_bad));
  return {obs4_bad == 0 && pair_bad == 0 && roundtrip_bad == 0 && freq_bad == 0, buf};
}

}  // namespace

int main() {
  std::printf("acceptance suite: exact replication checks\n");
  run(1, "2xk class-all exhaustive (h)", criterion1);
  run(2, "generic three-player classes (h)", criterion2);
  run(3, "lemma10 counterexample", criterion3);
  run(4, "lemma14 counterexample", criterion4);
  run(5, "lemma15 counterexamples", criterion5);
  run(6, "full-communication lemma12", criterion6);
  run(7, "det3 stabilizes everywhere", criterion7);
  run(8, "det2 stabilizes at four actions", criterion8);
  run(9, "deterministic historyless adversary", criterion9);
  run(10, "padding reductions", criterion10);
  run(11, "property suites", criterion11);
  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 11 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criteria FAILED\n", g_failures);
  return 1;
}

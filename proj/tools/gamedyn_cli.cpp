#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gamedyn/analysis.hpp"
#include "gamedyn/classcheck.hpp"
#include "gamedyn/dot.hpp"
#include "gamedyn/dynamics.hpp"
#include "gamedyn/fixtures.hpp"
#include "gamedyn/game_io.hpp"
#include "gamedyn/generators.hpp"

namespace {

using namespace gamedyn;

// exit codes
constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kResourceError = 3;

std::vector<int> parse_int_list(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse " + what + ": '" + csv + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(what + " must not be empty");
  return out;
}

struct GameSource {
  std::string file;
  std::string fixture;
  std::string params;

  Game resolve(std::string* failing_strategy, Profile* witness) const {
    if (!file.empty() && !fixture.empty())
      throw std::invalid_argument("give either --game or --fixture, not both");
    if (!file.empty()) return load_game_file(file);
    if (!fixture.empty()) {
      std::vector<int> p;
      if (!params.empty()) p = parse_int_list(params, "--params");
      FixtureGame f = make_fixture(fixture, p);
      if (failing_strategy) *failing_strategy = f.failing_strategy;
      if (witness) *witness = f.witness;
      return f.game;
    }
    throw std::invalid_argument("a game is required: --game FILE or --fixture NAME");
  }
};

StrategyMapping make_mapping(const std::string& name, int pad_index_1based,
                             int extra_actions) {
  if (name == "h") return [](const Game& g) { return canonical_h(g); };
  if (name == "det3") return [](const Game& g) { return det3(g); };
  if (name == "det2") return [](const Game& g) { return det2(g); };
  if (name == "min-br") return [](const Game& g) { return min_br(g); };
  if (name == "pad-action")
    return [pad_index_1based](const Game& g) {
      const int idx = pad_index_1based == 0 ? g.players() : pad_index_1based;
      if (idx < 1 || idx > g.players())
        throw std::invalid_argument("--pad-index out of range");
      return pad_action_reduction([](const Game& gg) { return canonical_h(gg); },
                                  idx - 1, g);
    };
  if (name == "pad-player")
    return [extra_actions](const Game& g) {
      return pad_player_reduction([](const Game& gg) { return canonical_h(gg); },
                                  g, extra_actions);
    };
  throw std::invalid_argument(
      "unknown strategy '" + name +
      "' (expected h, det3, det2, min-br, pad-action or pad-player)");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string join_states(const Verdict& v, const std::vector<std::int64_t>& nodes,
                        std::size_t cap = 16) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size() && i < cap; ++i) {
    if (i) out += " ";
    out += format_state(decode_state(v.space, v.recall, nodes[i]));
  }
  if (nodes.size() > cap) out += " ...";
  return out;
}

int run_verify(const GameSource& source, const std::string& strategy_name,
               int pad_index, int extra_actions, const std::string& expect,
               std::int64_t budget, const std::string& dot_path,
               const std::string& out_path) {
  std::string failing_strategy;
  Game game = source.resolve(&failing_strategy, nullptr);
  StrategyVector strategy = make_mapping(strategy_name, pad_index, extra_actions)(game);
  Verdict v = decide_success(strategy, game, budget);

  std::string expected = expect;
  if (expected.empty())
    expected = strategy_name == failing_strategy ? "fails" : "success";
  const bool met = expected == "success"  ? v.succeeded()
                   : expected == "stabilizes" ? v.outcome == Outcome::SelfStabilizes
                   : expected == "fails"      ? v.outcome == Outcome::Fails
                   : expected == "no-pne"     ? v.outcome == Outcome::NoPne
                   : throw std::invalid_argument("unknown --expect value: " + expected);

  Output output(out_path);
  std::ostream& os = output.stream();
  os << "record: verify\n";
  os << "game: " << (game.name().empty() ? std::string("<file>") : game.name()) << "\n";
  os << "strategy: " << strategy_name << "\n";
  os << "players: " << game.players() << "\n";
  os << "actions:";
  for (int k : game.space().action_counts()) os << " " << k;
  os << "\n";
  os << "recall: " << strategy.recall() << "\n";
  os << "nodes: " << v.nodes << "\n";
  os << "pne-count: " << v.pne.size() << "\n";
  if (!v.pne.empty()) {
    os << "pne:";
    for (std::size_t i = 0; i < v.pne.size() && i < 16; ++i)
      os << " " << format_profile(v.pne[i]);
    if (v.pne.size() > 16) os << " ...";
    os << "\n";
  }
  os << "outcome: " << outcome_name(v.outcome) << "\n";
  if (v.witness) {
    os << "witness: " << format_state(decode_state(v.space, v.recall, *v.witness))
       << "\n";
    os << "non-reaching-count: " << v.non_reaching.size() << "\n";
    os << "non-reaching: " << join_states(v, v.non_reaching) << "\n";
  }
  os << "expected: " << expected << "\n";
  os << "status: " << (met ? "expected" : "unexpected") << "\n";

  if (!dot_path.empty()) {
    std::ofstream dot(dot_path);
    if (!dot) throw std::invalid_argument("cannot open dot file: " + dot_path);
    TransitionGraph graph = build_graph(strategy, game, budget);
    write_dot(dot, graph,
              game.name().empty() ? std::string("dynamics") : game.name());
  }
  return met ? kOk : kVerificationFailure;
}

int run_enumerate(const std::string& size_csv, const std::string& class_name,
                  const std::string& strategy_name, int pad_index,
                  int extra_actions, const std::string& check_name,
                  std::int64_t sample, std::uint64_t seed, int workers,
                  bool expect_failures, std::int64_t max_failure_reports,
                  bool per_game, std::int64_t budget, const std::string& out_path) {
  const std::vector<int> size = parse_int_list(size_csv, "--size");
  GameClass cls;
  if (class_name == "all")
    cls = GameClass::All;
  else if (class_name == "generic")
    cls = GameClass::Generic;
  else
    throw std::invalid_argument("unknown --class value: " + class_name);

  EnumerationSpec spec = sample > 0
                             ? EnumerationSpec::sample(size, cls, sample, seed)
                             : EnumerationSpec::exhaustive(size, cls);
  StructureStream stream(spec);
  const CheckKind kind = check_name == "lemma12" ? CheckKind::Lemma12
                         : check_name == "success"
                             ? CheckKind::Success
                             : throw std::invalid_argument("unknown --check value: " +
                                                           check_name);
  StrategyMapping mapping = make_mapping(strategy_name, pad_index, extra_actions);

  Output output(out_path);
  std::ostream& os = output.stream();
  os << "record: enumerate\n";
  os << "size:";
  for (int k : size) os << " " << k;
  os << "\n";
  os << "class: " << class_name << "\n";
  os << "strategy: " << strategy_name << "\n";
  os << "check: " << check_name << "\n";
  if (spec.sampled) {
    os << "mode: sampled\n";
    os << "sample-count: " << spec.sample_count << "\n";
    os << "seed: " << seed << "\n";
  } else {
    os << "mode: exhaustive\n";
    os << "structures: " << stream.size() << "\n";
  }

  ClassCheckResult result = check_class(stream, mapping, kind, workers, budget);

  if (per_game) {
    for (std::int64_t i = 0; i < stream.size(); ++i) {
      BestReplyStructure s = stream.at(i);
      os << "record: game\n";
      os << "index: " << i << "\n";
      os << "structure: " << serialize_structure(s) << "\n";
    }
  }
  std::int64_t reported = 0;
  for (const auto& f : result.failures) {
    if (reported++ >= max_failure_reports) {
      os << "failure: ... (" << result.failures.size() - max_failure_reports
         << " more)\n";
      break;
    }
    os << "failure: index=" << f.index;
    if (!f.witness_state.empty()) os << " witness=" << f.witness_state;
    os << " structure=" << f.structure << "\n";
  }

  const bool met = expect_failures ? result.failed > 0 : result.failed == 0;
  os << "record: summary\n";
  os << "checked: " << result.checked << "\n";
  os << "passed: " << result.passed << "\n";
  os << "failed: " << result.failed << "\n";
  os << "skipped: " << result.skipped << "\n";
  os << "status: " << (met ? "expected" : "unexpected") << "\n";
  return met ? kOk : kVerificationFailure;
}

int run_simulate(const GameSource& source, const std::string& strategy_name,
                 int pad_index, int extra_actions, const std::string& init_csv,
                 std::int64_t steps, std::uint64_t seed,
                 const std::string& out_path) {
  Game game = source.resolve(nullptr, nullptr);
  StrategyVector strategy = make_mapping(strategy_name, pad_index, extra_actions)(game);

  Profile init(static_cast<std::size_t>(game.players()), 0);  // all ones, 1-based
  if (!init_csv.empty()) {
    std::vector<int> given = parse_int_list(init_csv, "--init");
    if (static_cast<int>(given.size()) != game.players())
      throw std::invalid_argument("--init needs one action per player");
    for (std::size_t i = 0; i < given.size(); ++i) init[i] = given[i] - 1;
  }
  RecallState state{std::vector<Profile>(static_cast<std::size_t>(strategy.recall()),
                                         init)};

  SimulationTrace trace = simulate(strategy, game, state, steps, seed);

  Output output(out_path);
  std::ostream& os = output.stream();
  os << "record: simulate\n";
  os << "game: " << (game.name().empty() ? std::string("<file>") : game.name()) << "\n";
  os << "strategy: " << strategy_name << "\n";
  os << "rng: " << trace.rng << "\n";
  os << "seed: " << trace.seed << "\n";
  os << "recall: " << trace.recall << "\n";
  os << "init: " << format_profile(init) << "\n";
  os << "max-steps: " << steps << "\n";
  os << "steps: " << trace.steps() << "\n";
  os << "absorbed: " << (trace.absorbed ? "true" : "false") << "\n";
  os << "trace:";
  for (const Profile& p : trace.profiles) os << " " << format_profile(p);
  os << "\n";
  return kOk;
}

int run_export(const GameSource& source, const std::string& out_path) {
  Game game = source.resolve(nullptr, nullptr);
  if (out_path.empty()) {
    save_game(std::cout, game);
  } else {
    save_game_file(out_path, game);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact reachability analysis of bounded-recall uncoupled game dynamics"};
  app.require_subcommand(1);

  GameSource source;
  std::string strategy_name = "h";
  std::string expect;
  std::string out_path;
  std::string dot_path;
  std::string init_csv;
  std::string size_csv;
  std::string class_name = "all";
  std::string check_name = "success";
  std::int64_t budget = kDefaultNodeBudget;
  std::int64_t steps = 100;
  std::int64_t sample = 0;
  std::int64_t max_failure_reports = 10;
  std::uint64_t seed = 0;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  int pad_index = 0;
  int extra_actions = 2;
  bool expect_failures = false;
  bool per_game = false;

  auto add_game_opts = [&](CLI::App* cmd) {
    cmd->add_option("--game", source.file, "game file to load");
    cmd->add_option("--fixture", source.fixture,
                    "built-in game: lemma10, lemma14, lemma15, theorem18u, "
                    "theorem18uprime");
    cmd->add_option("--params", source.params,
                    "fixture size parameters, comma separated");
  };
  auto add_strategy_opts = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_name,
                    "h, det3, det2, min-br, pad-action or pad-player");
    cmd->add_option("--pad-index", pad_index,
                    "player whose action set pad-action extends (1-based, "
                    "default last)");
    cmd->add_option("--extra-actions", extra_actions,
                    "action count of pad-player's extra player");
  };

  CLI::App* verify = app.add_subcommand("verify", "decide one game/strategy pair");
  add_game_opts(verify);
  add_strategy_opts(verify);
  verify->add_option("--expect", expect, "success, stabilizes, fails or no-pne");
  verify->add_option("--budget-nodes", budget, "state-space node budget");
  verify->add_option("--dot", dot_path, "write the transition graph as DOT");
  verify->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "check every best-reply structure of a class");
  enumerate->add_option("--size", size_csv, "action counts, e.g. 2,2,3")->required();
  enumerate->add_option("--class", class_name, "all or generic");
  add_strategy_opts(enumerate);
  enumerate->add_option("--check", check_name, "success or lemma12");
  enumerate->add_option("--sample", sample, "sample this many structures i.i.d.");
  enumerate->add_option("--seed", seed, "sampling seed");
  enumerate->add_option("--workers", workers, "parallel workers");
  enumerate->add_flag("--expect-failures", expect_failures,
                      "exit 0 only if at least one structure fails");
  enumerate->add_option("--max-failure-reports", max_failure_reports,
                        "cap on failure lines in the report");
  enumerate->add_flag("--per-game", per_game, "emit one record per checked game");
  enumerate->add_option("--budget-nodes", budget, "state-space node budget");
  enumerate->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "sample a seeded run");
  add_game_opts(simulate_cmd);
  add_strategy_opts(simulate_cmd);
  simulate_cmd->add_option("--init", init_csv,
                           "initial profile, 1-based, repeated to fill recall");
  simulate_cmd->add_option("--steps", steps, "maximum steps");
  simulate_cmd->add_option("--seed", seed, "trace seed");
  simulate_cmd->add_option("--out", out_path, "trace path (default stdout)");

  CLI::App* export_cmd = app.add_subcommand("export", "write a game file");
  add_game_opts(export_cmd);
  export_cmd->add_option("--out", out_path, "game file path (default stdout)");

  try {
    app.parse(argc, argv);
    if (verify->parsed())
      return run_verify(source, strategy_name, pad_index, extra_actions, expect,
                        budget, dot_path, out_path);
    if (enumerate->parsed())
      return run_enumerate(size_csv, class_name, strategy_name, pad_index,
                           extra_actions, check_name, sample, seed, workers,
                           expect_failures, max_failure_reports, per_game, budget,
                           out_path);
    if (simulate_cmd->parsed())
      return run_simulate(source, strategy_name, pad_index, extra_actions,
                          init_csv, steps, seed, out_path);
    if (export_cmd->parsed()) return run_export(source, out_path);
    return kUsageError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResourceError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gamedyn/game.hpp"

namespace gamedyn {

// Game file format: plain text, one "key: value" pair per line.
//
//   name: lemma10            (optional)
//   players: 3
//   actions: 2 2 2
//   payoffs: 1 1 1 0 1 0 0 1 (one line per player, flat row-major,
//   payoffs: ...              last player varying fastest)
//   payoffs: ...
//
// Blank lines and lines starting with '#' are ignored.

namespace detail {

inline std::int64_t parse_int(const std::string& tok, const std::string& what) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument("game file: " + what + " is not an integer: '" +
                                tok + "'");
  return v;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline Game load_game(std::istream& in) {
  std::string name;
  int players = -1;
  std::vector<int> actions;
  std::vector<std::vector<std::int64_t>> payoffs;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t colon = line.find(':', start);
    if (colon == std::string::npos)
      throw std::invalid_argument("game file: expected 'key: value', got '" + line + "'");
    std::string key = line.substr(start, colon - start);
    std::string value = line.substr(colon + 1);

    if (key == "name") {
      std::size_t b = value.find_first_not_of(" \t");
      std::size_t e = value.find_last_not_of(" \t");
      name = b == std::string::npos ? "" : value.substr(b, e - b + 1);
    } else if (key == "players") {
      auto toks = detail::split_ws(value);
      if (toks.size() != 1)
        throw std::invalid_argument("game file: 'players' needs one integer");
      players = static_cast<int>(detail::parse_int(toks[0], "players"));
      if (players < 2)
        throw std::invalid_argument("game file: at least two players required");
    } else if (key == "actions") {
      for (const auto& tok : detail::split_ws(value))
        actions.push_back(static_cast<int>(detail::parse_int(tok, "action count")));
    } else if (key == "payoffs") {
      std::vector<std::int64_t> row;
      for (const auto& tok : detail::split_ws(value))
        row.push_back(detail::parse_int(tok, "payoff"));
      payoffs.push_back(std::move(row));
    } else {
      throw std::invalid_argument("game file: unknown key '" + key + "'");
    }
  }

  if (players < 0) throw std::invalid_argument("game file: missing 'players'");
  if (actions.empty()) throw std::invalid_argument("game file: missing 'actions'");
  if (static_cast<int>(actions.size()) != players)
    throw std::invalid_argument("game file: 'actions' lists " +
                                std::to_string(actions.size()) + " counts for " +
                                std::to_string(players) + " players");
  ProfileSpace space(actions);
  if (static_cast<int>(payoffs.size()) != players)
    throw std::invalid_argument("game file: expected " + std::to_string(players) +
                                " 'payoffs' lines, got " +
                                std::to_string(payoffs.size()));
  for (const auto& row : payoffs)
    if (static_cast<std::int64_t>(row.size()) != space.profile_count())
      throw std::invalid_argument(
          "game file: payoff line has " + std::to_string(row.size()) +
          " entries, expected " + std::to_string(space.profile_count()));
  return Game(std::move(space), std::move(payoffs), std::move(name));
}

inline Game load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  return load_game(in);
}

inline void save_game(std::ostream& out, const Game& game) {
  if (!game.name().empty()) out << "name: " << game.name() << "\n";
  out << "players: " << game.players() << "\n";
  out << "actions:";
  for (int k : game.space().action_counts()) out << " " << k;
  out << "\n";
  for (Player i = 0; i < game.players(); ++i) {
    out << "payoffs:";
    for (std::int64_t v : game.payoff_tensor(i)) out << " " << v;
    out << "\n";
  }
}

inline void save_game_file(const std::string& path, const Game& game) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  save_game(out, game);
}

}  // namespace gamedyn

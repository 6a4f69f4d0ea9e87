#pragma once

// Players sit in a circle 1..p and move in that order, player 1 first.
// Every player belongs to exactly one team; a coalition is any non-empty
// subset of players that wins together.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zeck/errors.hpp"

namespace zeck {

// Malformed alliance or coalition text. position is a 0-based offset.
class ParseError : public InvalidArgument {
public:
  ParseError(const std::string& msg, std::size_t position)
      : InvalidArgument(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class Coalition {
public:
  Coalition() = default;
  explicit Coalition(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  Coalition(std::initializer_list<int> members) : Coalition(std::vector<int>(members)) {}

  const std::vector<int>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(int player) const {
    return std::binary_search(members_.begin(), members_.end(), player);
  }

  // Throws InvalidArgument unless non-empty and within 1..players.
  void validate(int players) const {
    if (members_.empty()) throw InvalidArgument("coalition must not be empty");
    for (int m : members_)
      if (m < 1 || m > players)
        throw InvalidArgument("coalition member " + std::to_string(m) + " outside 1.." +
                              std::to_string(players));
  }

  Coalition complement(int players) const {
    std::vector<int> out;
    for (int q = 1; q <= players; ++q)
      if (!contains(q)) out.push_back(q);
    return Coalition(std::move(out));
  }

  // Each member q becomes ((q - 1 + shift) mod players) + 1.
  Coalition rotated(int shift, int players) const {
    std::vector<int> out;
    for (int m : members_) out.push_back(((m - 1 + shift) % players + players) % players + 1);
    return Coalition(std::move(out));
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(members_[k]);
    }
    return s + "}";
  }

  bool operator==(const Coalition&) const = default;
  auto operator<=>(const Coalition&) const = default;

private:
  std::vector<int> members_;
};

class SeatingConfig {
public:
  // Every player on their own team.
  static SeatingConfig singletons(int players) {
    if (players < 1) throw InvalidArgument("players must be >= 1");
    std::vector<std::vector<int>> teams;
    for (int q = 1; q <= players; ++q) teams.push_back({q});
    return from_teams(players, teams);
  }

  // Teams are numbered 1..t in the order given.
  static SeatingConfig from_teams(int players, const std::vector<std::vector<int>>& teams) {
    if (players < 1) throw InvalidArgument("players must be >= 1");
    SeatingConfig s;
    s.team_of_.assign(static_cast<std::size_t>(players), 0);
    int team = 0;
    for (const auto& members : teams) {
      if (members.empty()) throw InvalidArgument("team " + std::to_string(team + 1) + " is empty");
      ++team;
      for (int q : members) {
        if (q < 1 || q > players)
          throw InvalidArgument("player " + std::to_string(q) + " outside 1.." +
                                std::to_string(players));
        auto& slot = s.team_of_[static_cast<std::size_t>(q - 1)];
        if (slot != 0)
          throw InvalidArgument("player " + std::to_string(q) + " is on more than one team");
        slot = team;
      }
    }
    for (int q = 1; q <= players; ++q)
      if (s.team_of_[static_cast<std::size_t>(q - 1)] == 0)
        throw InvalidArgument("player " + std::to_string(q) + " has no team");
    s.teams_ = team;
    return s;
  }

  // "1,2,3,4;5,6". players = 0 infers p from the largest player listed.
  static SeatingConfig parse(std::string_view text, int players = 0) {
    std::vector<std::vector<int>> teams(1);
    std::size_t pos = 0;
    bool want_number = true;
    int max_player = 0;
    while (pos < text.size()) {
      const char ch = text[pos];
      if (ch == ' ') {
        ++pos;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        if (!want_number) throw ParseError("expected ',' or ';'", pos);
        const std::size_t start = pos;
        long long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          v = v * 10 + (text[pos] - '0');
          if (v > 1'000'000) throw ParseError("player number too large", start);
          ++pos;
        }
        if (v < 1) throw ParseError("player numbers start at 1", start);
        if (players > 0 && v > players)
          throw ParseError("player " + std::to_string(v) + " outside 1.." + std::to_string(players),
                           start);
        teams.back().push_back(static_cast<int>(v));
        max_player = std::max(max_player, static_cast<int>(v));
        want_number = false;
      } else if (ch == ',' || ch == ';') {
        if (want_number) throw ParseError("expected a player number", pos);
        if (ch == ';') teams.emplace_back();
        want_number = true;
        ++pos;
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", pos);
      }
    }
    if (want_number) throw ParseError("expected a player number", pos);
    return from_teams(players > 0 ? players : max_player, teams);
  }

  int players() const noexcept { return static_cast<int>(team_of_.size()); }
  int team_count() const noexcept { return teams_; }
  int team_of(int player) const { return team_of_.at(static_cast<std::size_t>(player - 1)); }
  const std::vector<int>& team_table() const noexcept { return team_of_; }

  // Player to move after `turn` moves have been made.
  int player_to_move(std::uint64_t turn) const {
    return static_cast<int>(turn % static_cast<std::uint64_t>(players())) + 1;
  }

  Coalition team(int t) const {
    if (t < 1 || t > teams_)
      throw InvalidArgument("team " + std::to_string(t) + " outside 1.." + std::to_string(teams_));
    std::vector<int> out;
    for (int q = 1; q <= players(); ++q)
      if (team_of(q) == t) out.push_back(q);
    return Coalition(std::move(out));
  }

  std::vector<std::vector<int>> teams() const {
    std::vector<std::vector<int>> out;
    for (int t = 1; t <= teams_; ++t) out.push_back(team(t).members());
    return out;
  }

  // Canonical alliance text, e.g. "1,2,3,4;5,6".
  std::string to_string() const {
    std::string s;
    for (int t = 1; t <= teams_; ++t) {
      if (t > 1) s += ";";
      const auto m = team(t).members();
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(m[k]);
      }
    }
    return s;
  }

  // "team2" names a team; "1,3" or "2" names explicit players.
  Coalition parse_coalition(std::string_view text) const {
    if (text.starts_with("team")) {
      std::string_view rest = text.substr(4);
      if (rest.empty() ||
          !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); }))
        throw ParseError("expected team number", 4);
      const int t = std::stoi(std::string(rest));
      if (t < 1 || t > teams_)
        throw ParseError("team " + std::to_string(t) + " outside 1.." + std::to_string(teams_), 4);
      return team(t);
    }
    std::vector<int> members;
    std::size_t pos = 0;
    bool want_number = true;
    while (pos < text.size()) {
      const char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch)) && want_number) {
        const std::size_t start = pos;
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) && v < 1'000'000)
          v = v * 10 + (text[pos++] - '0');
        if (v < 1 || v > players())
          throw ParseError("player " + std::to_string(v) + " outside 1.." +
                               std::to_string(players()),
                           start);
        members.push_back(v);
        want_number = false;
      } else if (ch == ',' && !want_number) {
        want_number = true;
        ++pos;
      } else {
        throw ParseError(want_number ? "expected a player number" : "expected ','", pos);
      }
    }
    if (want_number) throw ParseError("expected a player number", pos);
    return Coalition(std::move(members));
  }

  bool operator==(const SeatingConfig&) const = default;

private:
  std::vector<int> team_of_;
  int teams_ = 0;
};

}  // namespace zeck

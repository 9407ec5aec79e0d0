#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace estermann::cli {

enum class Command { Count, Arcs, Expsum, Verify, Sweep };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Count: return "count";
    case Command::Arcs: return "arcs";
    case Command::Expsum: return "expsum";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

inline std::optional<Command> command_from_name(const std::string& s) {
  for (Command c : {Command::Count, Command::Arcs, Command::Expsum, Command::Verify, Command::Sweep})
    if (s == command_name(c)) return c;
  return std::nullopt;
}

struct AlphaGrid {
  double lo = 0.0;
  double hi = 0.5;
  std::uint64_t count = 101;
  bool operator==(const AlphaGrid&) const = default;
};

// Everything a run depends on. Rationals stay as their "p/q" text.
struct RunConfig {
  Command command = Command::Count;
  std::int64_t N = 0;
  std::string c = "3/2";
  std::string mu = "1/3,1/3,1/3";
  std::int64_t H = 0;
  double tol = 1e-6;
  unsigned threads = 1;
  std::uint64_t mem_mb = 1024;
  std::uint64_t oracle_limit = 100000;
  std::string out;
  std::string format = "json";
  std::string method = "fast";
  std::string mode = "exact";
  std::string kind = "Sc";
  AlphaGrid alpha_grid;
  bool quick = false;
  std::vector<std::int64_t> sweep_N;
  std::vector<std::string> sweep_c;
  std::vector<std::int64_t> sweep_H;
  std::string sweep_H_exponent;
  std::string cache_path;

  bool operator==(const RunConfig&) const = default;
};

inline nlohmann::json to_json(const RunConfig& r) {
  nlohmann::json j;
  j["command"] = command_name(r.command);
  j["N"] = r.N;
  j["c"] = r.c;
  j["mu"] = r.mu;
  j["H"] = r.H;
  j["tol"] = r.tol;
  j["threads"] = r.threads;
  j["mem_mb"] = r.mem_mb;
  j["oracle_limit"] = r.oracle_limit;
  j["out"] = r.out;
  j["format"] = r.format;
  j["method"] = r.method;
  j["mode"] = r.mode;
  j["kind"] = r.kind;
  j["alpha_grid"] = {{"lo", r.alpha_grid.lo}, {"hi", r.alpha_grid.hi}, {"count", r.alpha_grid.count}};
  j["quick"] = r.quick;
  j["sweep"] = {{"N", r.sweep_N}, {"c", r.sweep_c}, {"H", r.sweep_H}, {"H_exponent", r.sweep_H_exponent}};
  j["cache_path"] = r.cache_path;
  return j;
}

// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig r;
  const auto cmd = command_from_name(j.at("command").get<std::string>());
  if (!cmd) throw std::invalid_argument("unknown command");
  r.command = *cmd;
  r.N = j.at("N").get<std::int64_t>();
  r.c = j.at("c").get<std::string>();
  r.mu = j.at("mu").get<std::string>();
  r.H = j.at("H").get<std::int64_t>();
  r.tol = j.at("tol").get<double>();
  r.threads = j.at("threads").get<unsigned>();
  r.mem_mb = j.at("mem_mb").get<std::uint64_t>();
  r.oracle_limit = j.at("oracle_limit").get<std::uint64_t>();
  r.out = j.at("out").get<std::string>();
  r.format = j.at("format").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  const auto& g = j.at("alpha_grid");
  r.alpha_grid = {g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("count").get<std::uint64_t>()};
  r.quick = j.at("quick").get<bool>();
  const auto& s = j.at("sweep");
  r.sweep_N = s.at("N").get<std::vector<std::int64_t>>();
  r.sweep_c = s.at("c").get<std::vector<std::string>>();
  r.sweep_H = s.at("H").get<std::vector<std::int64_t>>();
  r.sweep_H_exponent = s.at("H_exponent").get<std::string>();
  r.cache_path = j.at("cache_path").get<std::string>();
  return r;
}

}  // namespace estermann::cli

// Command-line front end over the C API.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "estermann/estermann.h"
#include "json.hpp"
#include "run_config.hpp"

namespace {

using estermann::cli::AlphaGrid;
using estermann::cli::Command;
using estermann::cli::RunConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Failure carrying the process exit code.
struct RunError {
  int exit_code;
  std::string message;
};

bool is_usage_status(est_status s) {
  switch (s) {
    case EST_ERR_INVALID_ARGUMENT:
    case EST_ERR_PARSE:
    case EST_ERR_MU_SUM_NOT_ONE:
    case EST_ERR_INTEGER_EXPONENT:
    case EST_ERR_EXPONENT_TOO_SMALL:
    case EST_ERR_WINDOW_TOO_WIDE:
    case EST_ERR_EMPTY_RANGE:
      return true;
    default:
      return false;
  }
}

void check(est_status s) {
  if (s == EST_OK) return;
  throw RunError{is_usage_status(s) ? kExitUsage : kExitFailure,
                 std::string(est_status_name(s)) + ": " + est_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { est_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

struct InstanceDeleter {
  void operator()(est_instance* p) const { est_instance_destroy(p); }
};
using Instance = std::unique_ptr<est_instance, InstanceDeleter>;

Instance make_instance(std::int64_t N, const std::string& c, const std::string& mu, std::int64_t H) {
  est_instance* raw = nullptr;
  check(est_instance_create(N, c.c_str(), mu.c_str(), H, &raw));
  return Instance(raw);
}

est_options options_of(const RunConfig& cfg) {
  est_options o;
  est_options_init(&o);
  o.threads = cfg.threads;
  o.mem_mb = cfg.mem_mb;
  o.oracle_limit = cfg.oracle_limit;
  o.cache_path = cfg.cache_path.empty() ? nullptr : cfg.cache_path.c_str();
  return o;
}

est_mode mode_of(const std::string& m) { return m == "model" ? EST_MODE_MODEL : EST_MODE_EXACT; }

AlphaGrid parse_alpha_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw CLI::ValidationError("--alpha-grid", "expected lo:hi:count");
  AlphaGrid g;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, a), hi = text.substr(a + 1, b - a - 1), n = text.substr(b + 1);
    g.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    g.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    if (!n.empty() && n.front() == '-') throw std::invalid_argument(n);
    g.count = std::stoull(n, &used);
    if (used != n.size() || g.count == 0) throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--alpha-grid", "expected lo:hi:count with count >= 1");
  }
  return g;
}

// Smallest H with H^b >= N^a, for exponent a/b in (0, 1).
std::int64_t ceil_power(std::int64_t N, std::int64_t a, std::int64_t b) {
  using u128 = unsigned __int128;
  auto pow_sat = [](u128 base, std::int64_t e, bool& overflow) {
    u128 r = 1;
    for (std::int64_t i = 0; i < e; ++i) {
      if (base != 0 && r > ~u128(0) / base) {
        overflow = true;
        return ~u128(0);
      }
      r *= base;
    }
    return r;
  };
  auto H = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<long double>(N), static_cast<long double>(a) / b)));
  bool overflow = false;
  const u128 target = pow_sat(static_cast<u128>(N), a, overflow);
  if (overflow) return H;
  while (H > 1) {
    bool o = false;
    if (pow_sat(static_cast<u128>(H - 1), b, o) < target || o) break;
    --H;
  }
  for (;;) {
    bool o = false;
    const u128 v = pow_sat(static_cast<u128>(H), b, o);
    if (o || v >= target) break;
    ++H;
  }
  return H;
}

std::pair<std::int64_t, std::int64_t> parse_exponent_ratio(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) throw std::invalid_argument(text);
    const std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    const std::int64_t a = std::stoll(p, &used);
    if (used != p.size()) throw std::invalid_argument(p);
    const std::int64_t b = std::stoll(q, &used);
    if (used != q.size()) throw std::invalid_argument(q);
    if (a <= 0 || b <= 0 || a >= b || b > 64) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw RunError{kExitUsage, "--H-exponent must be a rational p/q in (0,1), q <= 64"};
  }
}

// Turns a CSV body into {"header": [...], "rows": [[...]]}, numeric cells as numbers.
json csv_to_json(const std::string& csv) {
  json out{{"header", json::array()}, {"rows", json::array()}};
  std::istringstream in(csv);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json cells = json::array();
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      if (first) {
        cells.push_back(cell);
        continue;
      }
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(cell.c_str(), &end);
      if (!cell.empty() && *end == '\0' && errno == 0 && cell.find('/') == std::string::npos)
        cells.push_back(v);
      else
        cells.push_back(cell);
    }
    if (first)
      out["header"] = cells;
    else
      out["rows"].push_back(cells);
    first = false;
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw RunError{kExitFailure, "cannot open output file " + cfg.out};
  f << body;
  if (!body.empty() && body.back() != '\n') f << '\n';
  if (!f.flush()) throw RunError{kExitFailure, "failed writing " + cfg.out};
}

std::string with_config(json payload, const RunConfig& cfg) {
  payload["config"] = estermann::cli::to_json(cfg);
  return payload.dump(2);
}

std::string table_or_json(const RunConfig& cfg, const std::string& csv) {
  if (cfg.format == "csv") return csv;
  return with_config(csv_to_json(csv), cfg);
}

int run_count(const RunConfig& cfg) {
  const Instance inst = make_instance(cfg.N, cfg.c, cfg.mu, cfg.H);
  const est_options o = options_of(cfg);
  if (cfg.method == "convolution") {
    std::uint64_t total = 0;
    check(est_count_total(inst.get(), EST_COUNT_CONVOLUTION, &o, &total));
    if (cfg.format == "csv")
      emit(cfg, "total\n" + std::to_string(total) + "\n");
    else
      emit(cfg, with_config(json{{"total", total}}, cfg));
    return kExitOk;
  }
  const est_count_method m = cfg.method == "brute" ? EST_COUNT_BRUTE_FORCE : EST_COUNT_FAST;
  char* raw = nullptr;
  if (cfg.format == "csv") {
    check(est_count_breakdown(inst.get(), m, EST_FORMAT_CSV, &o, &raw));
    emit(cfg, take(raw));
  } else {
    check(est_count_breakdown(inst.get(), m, EST_FORMAT_JSON, &o, &raw));
    emit(cfg, with_config(json::parse(take(raw)), cfg));
  }
  return kExitOk;
}

int run_arcs(const RunConfig& cfg) {
  const Instance inst = make_instance(cfg.N, cfg.c, cfg.mu, cfg.H);
  const est_options o = options_of(cfg);
  char* raw = nullptr;
  check(est_arcs_json(inst.get(), mode_of(cfg.mode), cfg.tol, &o, &raw));
  json report = json::parse(take(raw));
  check(est_derived_params_json(inst.get(), &raw));
  report["derived"] = json::parse(take(raw));
  check(est_hypothesis_report_json(inst.get(), &raw));
  report["hypotheses"] = json::parse(take(raw));
  emit(cfg, with_config(std::move(report), cfg));
  return kExitOk;
}

int run_expsum(const RunConfig& cfg) {
  const Instance inst = make_instance(cfg.N, cfg.c, cfg.mu, cfg.H);
  const est_options o = options_of(cfg);
  est_sum_kind kind = EST_SUM_SC;
  if (cfg.kind == "S1") kind = EST_SUM_S1;
  if (cfg.kind == "prime") kind = EST_SUM_PRIME;
  char* raw = nullptr;
  check(est_expsum_grid_csv(inst.get(), kind, cfg.alpha_grid.lo, cfg.alpha_grid.hi,
                            static_cast<size_t>(cfg.alpha_grid.count), &o, &raw));
  emit(cfg, table_or_json(cfg, take(raw)));
  return kExitOk;
}

int run_verify(const RunConfig& cfg) {
  const est_options o = options_of(cfg);
  char* raw = nullptr;
  int passed = 0;
  check(est_verify(cfg.quick ? 1 : 0, &o, &raw, &passed));
  const std::string table = take(raw);
  if (cfg.format == "json") {
    std::cout << table;
    std::cout.flush();
    if (!cfg.out.empty()) emit(cfg, with_config(json{{"passed", passed != 0}, {"table", table}}, cfg));
  } else {
    emit(cfg, table);
  }
  return passed ? kExitOk : kExitFailure;
}

int run_sweep(const RunConfig& cfg) {
  std::vector<std::int64_t> Ns = cfg.sweep_N;
  if (Ns.empty() && cfg.N > 0) Ns.push_back(cfg.N);
  std::vector<std::string> cs = cfg.sweep_c;
  if (cs.empty()) cs.push_back(cfg.c);
  if (Ns.empty()) throw RunError{kExitUsage, "sweep needs --N or --N-list"};
  if (!cfg.sweep_H_exponent.empty() && !cfg.sweep_H.empty())
    throw RunError{kExitUsage, "--H-list and --H-exponent are mutually exclusive"};

  std::vector<Instance> owned;
  for (const std::int64_t N : Ns) {
    std::vector<std::int64_t> Hs = cfg.sweep_H;
    if (!cfg.sweep_H_exponent.empty()) {
      const auto [a, b] = parse_exponent_ratio(cfg.sweep_H_exponent);
      Hs = {ceil_power(N, a, b)};
    }
    if (Hs.empty()) Hs.push_back(cfg.H);
    for (const std::string& c : cs)
      for (const std::int64_t H : Hs) owned.push_back(make_instance(N, c, cfg.mu, H));
  }
  std::vector<const est_instance*> ptrs;
  for (const auto& i : owned) ptrs.push_back(i.get());
  const est_options o = options_of(cfg);
  char* raw = nullptr;
  check(est_sweep_csv(ptrs.data(), ptrs.size(), mode_of(cfg.mode), cfg.tol, &o, &raw));
  emit(cfg, table_or_json(cfg, take(raw)));
  return kExitOk;
}

int dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Count: return run_count(cfg);
    case Command::Arcs: return run_arcs(cfg);
    case Command::Expsum: return run_expsum(cfg);
    case Command::Verify: return run_verify(cfg);
    case Command::Sweep: return run_sweep(cfg);
  }
  return kExitUsage;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  sub->add_option("--mem-mb", cfg.mem_mb, "memory budget in MiB")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_instance(CLI::App* sub, RunConfig& cfg, bool required) {
  auto* n = sub->add_option("--N", cfg.N, "target integer");
  auto* h = sub->add_option("--H", cfg.H, "window half-width");
  if (required) {
    n->required();
    h->required();
  }
  sub->add_option("--c", cfg.c, "exponent p/q");
  sub->add_option("--mu", cfg.mu, "proportions r,r,r summing to 1");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* cache = std::getenv("ESTERMANN_CACHE")) cfg.cache_path = cache;

  CLI::App app{"Representation counts N = p1 + p2 + floor(n^c) in windows, with circle-method diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(est_version()));

  auto* count = app.add_subcommand("count", "count representations");
  add_instance(count, cfg, true);
  add_common(count, cfg);
  count->add_option("--method", cfg.method, "fast, brute or convolution")
      ->check(CLI::IsMember({"fast", "brute", "convolution"}));
  count->add_option("--oracle-limit", cfg.oracle_limit, "brute-force work cap");

  auto* arcs = app.add_subcommand("arcs", "major/minor arc integrals");
  add_instance(arcs, cfg, true);
  add_common(arcs, cfg);
  arcs->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  arcs->add_option("--mode", cfg.mode, "exact or model")->check(CLI::IsMember({"exact", "model"}));

  std::string grid_text;
  auto* expsum = app.add_subcommand("expsum", "exponential sum on an alpha grid");
  add_instance(expsum, cfg, true);
  add_common(expsum, cfg);
  expsum->add_option("--kind", cfg.kind, "Sc, S1 or prime")->check(CLI::IsMember({"Sc", "S1", "prime"}));
  expsum->add_option("--alpha-grid", grid_text, "lo:hi:count");

  auto* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify, cfg);
  verify->add_flag("--quick", cfg.quick, "reduced instance counts");

  auto* sweep = app.add_subcommand("sweep", "exact/main-term ratio over a parameter grid");
  add_instance(sweep, cfg, false);
  add_common(sweep, cfg);
  sweep->add_option("--N-list", cfg.sweep_N, "values of N")->delimiter(',');
  sweep->add_option("--c-list", cfg.sweep_c, "values of c")->delimiter(',');
  sweep->add_option("--H-list", cfg.sweep_H, "values of H")->delimiter(',');
  sweep->add_option("--H-exponent", cfg.sweep_H_exponent, "H = ceil(N^e) for rational e in (0,1)");
  sweep->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  sweep->add_option("--mode", cfg.mode, "exact or model")->check(CLI::IsMember({"exact", "model"}));

  try {
    app.parse(argc, argv);
    if (!grid_text.empty()) cfg.alpha_grid = parse_alpha_grid(grid_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (count->parsed()) cfg.command = Command::Count;
  if (arcs->parsed()) cfg.command = Command::Arcs;
  if (expsum->parsed()) cfg.command = Command::Expsum;
  if (verify->parsed()) cfg.command = Command::Verify;
  if (sweep->parsed()) {
    cfg.command = Command::Sweep;
    if (sweep->count("--format") == 0) cfg.format = "csv";
    // Exact-mode arcs cost O(N) per integrand call, so sweeps default to model mode.
    if (sweep->count("--mode") == 0) cfg.mode = "model";
  }
  if (expsum->parsed() && expsum->count("--format") == 0) cfg.format = "csv";
  if (verify->parsed() && verify->count("--format") == 0) cfg.format = "csv";

  try {
    return dispatch(cfg);
  } catch (const RunError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

#include "estermann/estermann.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "estermann/circle.hpp"
#include "estermann/counting.hpp"
#include "estermann/error.hpp"
#include "estermann/expsums.hpp"
#include "estermann/instance.hpp"
#include "estermann/sieve.hpp"
#include "estermann/verify.hpp"

struct est_instance {
  estermann::ProblemInstance inst;
};

namespace {

using namespace estermann;

thread_local std::string g_last_error;

est_status map_code(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return EST_ERR_INVALID_ARGUMENT;
    case Errc::Parse: return EST_ERR_PARSE;
    case Errc::MuSumNotOne: return EST_ERR_MU_SUM_NOT_ONE;
    case Errc::IntegerExponent: return EST_ERR_INTEGER_EXPONENT;
    case Errc::ExponentTooSmall: return EST_ERR_EXPONENT_TOO_SMALL;
    case Errc::WindowTooWide: return EST_ERR_WINDOW_TOO_WIDE;
    case Errc::EmptyRange: return EST_ERR_EMPTY_RANGE;
    case Errc::MemoryBudgetExceeded: return EST_ERR_MEMORY_BUDGET;
    case Errc::OracleLimitExceeded: return EST_ERR_ORACLE_LIMIT;
    case Errc::ToleranceNotMet: return EST_ERR_TOLERANCE_NOT_MET;
    case Errc::Overflow: return EST_ERR_OVERFLOW;
    case Errc::Io: return EST_ERR_IO;
  }
  return EST_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <class Body>
est_status guarded(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return EST_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return EST_ERR_MEMORY_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EST_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(Errc::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

est_options resolve(const est_options* options) {
  est_options o;
  est_options_init(&o);
  if (options) o = *options;
  if (o.threads == 0) o.threads = 1;
  return o;
}

SieveConfig sieve_config(const est_options& o) {
  SieveConfig cfg;
  if (o.mem_mb > 0) cfg.memory_budget_bytes = static_cast<std::size_t>(o.mem_mb) << 20;
  if (o.cache_path && *o.cache_path) cfg.cache_path = o.cache_path;
  return cfg;
}

CountConfig count_config(const est_options& o) {
  CountConfig cfg;
  cfg.sieve = sieve_config(o);
  cfg.threads = o.threads;
  if (o.oracle_limit > 0) cfg.oracle_limit = o.oracle_limit;
  return cfg;
}

ArcConfig arc_config(const est_options& o) {
  ArcConfig cfg;
  cfg.sieve = sieve_config(o);
  cfg.threads = o.threads;
  return cfg;
}

IntegrandMode to_mode(est_mode mode) {
  switch (mode) {
    case EST_MODE_EXACT: return IntegrandMode::Exact;
    case EST_MODE_MODEL: return IntegrandMode::Model;
  }
  throw Error(Errc::InvalidArgument, "unknown integrand mode");
}

CountBreakdown run_count(const ProblemInstance& inst, est_count_method method, const CountConfig& cfg) {
  switch (method) {
    case EST_COUNT_FAST: return fast_count(inst, cfg);
    case EST_COUNT_BRUTE_FORCE: return brute_force_count(inst, cfg);
    case EST_COUNT_CONVOLUTION: break;
  }
  throw Error(Errc::InvalidArgument, "breakdowns are produced by the fast and brute-force methods only");
}

}  // namespace

extern "C" {

const char* est_version(void) { return "1.0.0"; }

const char* est_status_name(est_status status) {
  switch (status) {
    case EST_OK: return "OK";
    case EST_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case EST_ERR_PARSE: return "Parse";
    case EST_ERR_MU_SUM_NOT_ONE: return "MuSumNotOne";
    case EST_ERR_INTEGER_EXPONENT: return "IntegerExponent";
    case EST_ERR_EXPONENT_TOO_SMALL: return "ExponentTooSmall";
    case EST_ERR_WINDOW_TOO_WIDE: return "WindowTooWide";
    case EST_ERR_EMPTY_RANGE: return "EmptyRange";
    case EST_ERR_MEMORY_BUDGET: return "MemoryBudgetExceeded";
    case EST_ERR_ORACLE_LIMIT: return "OracleLimitExceeded";
    case EST_ERR_TOLERANCE_NOT_MET: return "ToleranceNotMet";
    case EST_ERR_OVERFLOW: return "Overflow";
    case EST_ERR_IO: return "Io";
    case EST_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* est_last_error(void) { return g_last_error.c_str(); }

void est_string_free(char* s) { std::free(s); }

void est_options_init(est_options* options) {
  if (!options) return;
  options->threads = 1;
  options->mem_mb = 1024;
  options->oracle_limit = 100000;
  options->cache_path = nullptr;
}

est_status est_instance_create(int64_t N, const char* c, const char* mu, int64_t H, est_instance** out) {
  return guarded([&] {
    require(c, "c");
    require(mu, "mu");
    require(out, "out");
    *out = nullptr;
    auto inst = build_instance(N, parse_rational(c), parse_mu(mu), H);
    *out = new est_instance{inst};
  });
}

est_status est_instance_from_json(const char* json, est_instance** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = nullptr;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::Parse, e.what());
    }
    *out = new est_instance{instance_from_json(j)};
  });
}

est_status est_instance_to_json(const est_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    *out = dup_string(to_json(inst->inst).dump());
  });
}

void est_instance_destroy(est_instance* inst) { delete inst; }

est_status est_derived_params_json(const est_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    *out = dup_string(to_json(derive_params(inst->inst)).dump());
  });
}

est_status est_hypothesis_report_json(const est_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    *out = dup_string(to_json(hypothesis_report(inst->inst)).dump());
  });
}

est_status est_count_total(const est_instance* inst, est_count_method method, const est_options* options,
                           uint64_t* total) {
  return guarded([&] {
    require(inst, "inst");
    require(total, "total");
    const est_options o = resolve(options);
    if (method == EST_COUNT_CONVOLUTION)
      *total = exact_convolution_count(inst->inst, sieve_config(o));
    else
      *total = run_count(inst->inst, method, count_config(o)).total;
  });
}

est_status est_count_breakdown(const est_instance* inst, est_count_method method, est_format format,
                               const est_options* options, char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    const CountBreakdown b = run_count(inst->inst, method, count_config(resolve(options)));
    *out = dup_string(format == EST_FORMAT_CSV ? to_csv(b) : to_json(b).dump());
  });
}

est_status est_arcs_json(const est_instance* inst, est_mode mode, double tol, const est_options* options,
                         char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    const ArcReport r = integrate_arcs(inst->inst, to_mode(mode), tol, arc_config(resolve(options)));
    *out = dup_string(to_json(r).dump());
  });
}

est_status est_expsum_grid_csv(const est_instance* inst, est_sum_kind kind, double alpha_lo, double alpha_hi,
                               size_t count, const est_options* options, char** out) {
  return guarded([&] {
    require(inst, "inst");
    require(out, "out");
    if (count == 0) throw Error(Errc::InvalidArgument, "grid needs at least one point");
    const est_options o = resolve(options);
    const DerivedParams dp = derive_params(inst->inst);
    const long double width = 2 * static_cast<long double>(dp.H);
    PhaseSum terms;
    switch (kind) {
      case EST_SUM_SC: terms = floor_power_terms(dp.N3, dp.H3, inst->inst.c()); break;
      case EST_SUM_S1: terms = lambda_terms(dp.N1, width, sieve_config(o)); break;
      case EST_SUM_PRIME: terms = prime_terms(dp.N1, width, sieve_config(o)); break;
      default: throw Error(Errc::InvalidArgument, "unknown sum kind");
    }
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
      grid[i] = count == 1 ? alpha_lo
                           : static_cast<double>(alpha_lo + (static_cast<long double>(alpha_hi) - alpha_lo) *
                                                                static_cast<long double>(i) /
                                                                static_cast<long double>(count - 1));
    const auto values = eval_grid(terms, grid, o.threads);
    std::ostringstream csv;
    csv << "alpha,re,im,abs\n";
    for (std::size_t i = 0; i < count; ++i)
      csv << format_real(grid[i]) << ',' << format_real(values[i].real()) << ','
          << format_real(values[i].imag()) << ',' << format_real(std::abs(values[i])) << '\n';
    *out = dup_string(csv.str());
  });
}

est_status est_sweep_csv(const est_instance* const* insts, size_t count, est_mode mode, double tol,
                         const est_options* options, char** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(insts, "insts");
    const ArcConfig cfg = arc_config(resolve(options));
    std::vector<SweepRow> rows;
    for (size_t i = 0; i < count; ++i) {
      require(insts[i], "insts[i]");
      rows.push_back(sweep_row(insts[i]->inst, to_mode(mode), tol, cfg));
    }
    *out = dup_string(sweep_csv(rows));
  });
}

est_status est_verify(int quick, const est_options* options, char** table, int* passed) {
  return guarded([&] {
    require(table, "table");
    require(passed, "passed");
    const VerificationReport r = run_verification(quick != 0, resolve(options).threads);
    *table = dup_string(r.table());
    *passed = r.all_passed() ? 1 : 0;
  });
}

est_status est_floor_pow(uint64_t n, int64_t p, int64_t q, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = floor_pow(n, RationalExponent(p, q));
  });
}

est_status est_pi_interval(uint64_t x, uint64_t y, const est_options* options, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = pi_interval(x, y, sieve_config(resolve(options)));
  });
}

est_status est_psi(uint64_t x, const est_options* options, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = static_cast<double>(psi(x, sieve_config(resolve(options))));
  });
}

est_status est_eval_sum(est_sum_kind kind, double alpha, double x, double y, int64_t p, int64_t q,
                        const est_options* options, double* re, double* im) {
  return guarded([&] {
    require(re, "re");
    require(im, "im");
    const SieveConfig cfg = sieve_config(resolve(options));
    Complex z;
    switch (kind) {
      case EST_SUM_SC: z = eval_S_c(alpha, x, y, RationalExponent(p, q)); break;
      case EST_SUM_S1: z = eval_S1(alpha, x, y, cfg); break;
      case EST_SUM_PRIME: z = eval_prime_sum(alpha, x, y, cfg); break;
      default: throw Error(Errc::InvalidArgument, "unknown sum kind");
    }
    *re = z.real();
    *im = z.imag();
  });
}

}  // extern "C"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "estermann/error.hpp"
#include "estermann/instance.hpp"
#include "oracles.hpp"

using namespace estermann;

namespace {

ProblemInstance make(std::int64_t N, const char* c, const char* mu, std::int64_t H) {
  return build_instance(N, parse_rational(c), parse_mu(mu), H);
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an estermann::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("rational parsing keeps exact terms") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7, 1));
  CHECK(parse_rational("-5/3").num() == -5);
  CHECK(code_of([] { parse_rational("1.5"); }) == Errc::Parse);
  CHECK(code_of([] { parse_rational("3/ 2"); }) == Errc::Parse);
  CHECK(code_of([] { parse_rational("sqrt(2)"); }) == Errc::Parse);
  CHECK(code_of([] { parse_rational("6/4"); }) == Errc::InvalidArgument);
  CHECK(code_of([] { parse_rational("1/0"); }) == Errc::Parse);
}

TEST_CASE("rational ordering and rounding") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(7, 4).dist_to_integer() == doctest::Approx(0.25));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 4) * 12 == Rational(3, 1));
}

TEST_CASE("build_instance validation order and codes") {
  CHECK(code_of([] { make(0, "3/2", "1/3,1/3,1/3", 1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make(100, "3/2", "1/3,1/3,1/3", -1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make(100, "3/2", "0,1/2,1/2", 1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make(100, "2", "1/3,1/3,1/3", 1); }) == Errc::IntegerExponent);
  CHECK(code_of([] { make(100, "2/3", "1/3,1/3,1/3", 1); }) == Errc::ExponentTooSmall);
  CHECK(code_of([] { make(100, "3/2", "1/3,1/3,1/2", 1); }) == Errc::MuSumNotOne);
  CHECK(code_of([] { make(100, "3/2", "1/4,1/4,1/2", 26); }) == Errc::WindowTooWide);
  CHECK(code_of([] { parse_mu("1/3,1/3"); }) == Errc::Parse);
}

TEST_CASE("windows use exact rational membership") {
  const auto inst = make(12, "3/2", "1/4,1/4,1/2", 3);
  CHECK(inst.window(0) == IntInterval{0, 6});
  CHECK(inst.window(1) == IntInterval{0, 6});
  CHECK(inst.window(2) == IntInterval{3, 9});

  // mu_1 N = 100/3 = 33.33..., H = 2 gives [31.33, 35.33] -> {32..35}
  const auto frac = make(100, "3/2", "1/3,1/3,1/3", 2);
  CHECK(frac.window(0) == IntInterval{32, 35});
  CHECK_FALSE(frac.in_window(0, 31));
  CHECK(frac.in_window(0, 32));
  CHECK(frac.in_window(0, 35));
  CHECK_FALSE(frac.in_window(0, 36));

  // H = 0 with a non-integer centre leaves the window empty.
  CHECK(make(100, "3/2", "1/3,1/3,1/3", 0).window(0).empty());
}

TEST_CASE("derived parameters against a 256-bit oracle") {
  for (auto [N, H] : {std::pair<std::int64_t, std::int64_t>{1000000, 10000}, {10000, 500}, {12345678, 77}}) {
    const auto inst = make(N, "3/2", "1/3,1/3,1/3", H);
    const DerivedParams dp = derive_params(inst);

    // |N3^c - (mu3 N + H)| <= 8 ulp
    oracle::Big n3c, target, tmp;
    mpfr_set_ld(n3c.get(), dp.N3, MPFR_RNDN);
    mpfr_set_si(tmp.get(), 3, MPFR_RNDN);
    mpfr_div_si(tmp.get(), tmp.get(), 2, MPFR_RNDN);
    mpfr_pow(n3c.get(), n3c.get(), tmp.get(), MPFR_RNDN);
    mpfr_set_si(target.get(), N, MPFR_RNDN);
    mpfr_div_si(target.get(), target.get(), 3, MPFR_RNDN);
    mpfr_add_si(target.get(), target.get(), H, MPFR_RNDN);
    mpfr_sub(tmp.get(), n3c.get(), target.get(), MPFR_RNDN);
    CHECK(std::fabs(tmp.ld()) <= 8 * oracle::ulp(target.ld()));

    // kappa 2 c H = L^2 within 4 ulp
    oracle::Big lhs, L2;
    mpfr_set_ld(lhs.get(), dp.kappa, MPFR_RNDN);
    mpfr_mul_si(lhs.get(), lhs.get(), 3 * H, MPFR_RNDN);
    mpfr_set_si(L2.get(), N, MPFR_RNDN);
    mpfr_log(L2.get(), L2.get(), MPFR_RNDN);
    mpfr_sqr(L2.get(), L2.get(), MPFR_RNDN);
    mpfr_sub(lhs.get(), lhs.get(), L2.get(), MPFR_RNDN);
    CHECK(std::fabs(lhs.ld()) <= 4 * oracle::ulp(L2.ld()));

    // H3 against its leading-order expansion
    CHECK(dp.H3 == doctest::Approx(static_cast<double>(dp.H3_leading)).epsilon(1e-2));
    CHECK(dp.N1 == doctest::Approx(N / 3.0 + H));
  }
}

TEST_CASE("derive_params examples") {
  // N3^(3/2) reproduces mu_3 N + H = 343333.33... to 1 ulp
  const DerivedParams dp = derive_params(make(1000000, "3/2", "1/3,1/3,1/3", 10000));
  oracle::Big n3c, target, e;
  mpfr_set_ld(n3c.get(), dp.N3, MPFR_RNDN);
  mpfr_set_d(e.get(), 1.5, MPFR_RNDN);
  mpfr_pow(n3c.get(), n3c.get(), e.get(), MPFR_RNDN);
  mpfr_set_si(target.get(), 1030000, MPFR_RNDN);
  mpfr_div_si(target.get(), target.get(), 3, MPFR_RNDN);
  mpfr_sub(n3c.get(), n3c.get(), target.get(), MPFR_RNDN);
  CHECK(std::fabs(n3c.ld()) <= oracle::ulp(target.ld()));

  // H -> 0: H3 -> 0 and N3 -> (mu_3 N)^(1/c)
  const DerivedParams h0 = derive_params(make(1000000, "3/2", "1/3,1/3,1/3", 0));
  CHECK(h0.H3 == 0);
  CHECK(static_cast<double>(h0.N3) == doctest::Approx(std::cbrt(1e6 / 3) * std::cbrt(1e6 / 3)).epsilon(1e-15));
  const DerivedParams h1 = derive_params(make(1000000, "3/2", "1/3,1/3,1/3", 1));
  CHECK(h1.H3 > 0);
  CHECK(static_cast<double>(h1.H3) == doctest::Approx(static_cast<double>(h1.H3_leading)).epsilon(1e-9));
}

TEST_CASE("build_instance examples") {
  CHECK_NOTHROW(make(1000000, "3/2", "1/3,1/3,1/3", 10000));
  CHECK(code_of([] { make(1000000, "3/2", "1/2,1/3,1/4", 10); }) == Errc::MuSumNotOne);
  CHECK(code_of([] { make(1000000, "2/1", "1/3,1/3,1/3", 10); }) == Errc::IntegerExponent);
}

TEST_CASE("derive_params is pure") {
  const auto inst = make(1000000, "5/3", "1/5,2/5,2/5", 1234);
  const DerivedParams a = derive_params(inst);
  const DerivedParams b = derive_params(inst);
  CHECK(a.N3 == b.N3);
  CHECK(a.H3 == b.H3);
  CHECK(a.kappa == b.kappa);
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("hypothesis report values") {
  SUBCASE("cond_c_lower at N = 10^6") {
    const auto r = hypothesis_report(make(1000000, "3/2", "1/3,1/3,1/3", 10000));
    const Condition& cond = r.conditions.at("cond_c_lower");
    oracle::Big L, t;
    mpfr_set_ui(L.get(), 1000000, MPFR_RNDN);
    mpfr_log(L.get(), L.get(), MPFR_RNDN);
    mpfr_log(t.get(), L.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 52, MPFR_RNDN);
    mpfr_div(t.get(), t.get(), L.get(), MPFR_RNDN);
    mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 4, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), 3, MPFR_RNDN);
    CHECK(cond.rhs == doctest::Approx(static_cast<double>(t.ld())).epsilon(1e-15));
    CHECK(cond.rhs == doctest::Approx(14.51).epsilon(1e-3));
    CHECK_FALSE(cond.holds);
    CHECK(cond.lhs == doctest::Approx(1.5));
  }
  SUBCASE("cond_c_fractional lhs is ||c||") {
    const auto r = hypothesis_report(make(1000000, "3/2", "1/3,1/3,1/3", 10000));
    CHECK(r.conditions.at("cond_c_fractional").lhs == doctest::Approx(0.5));
  }
  SUBCASE("cond_H holds at the threshold and is monotone in H") {
    const std::int64_t N = 1000000000000;
    oracle::Big t, L;
    mpfr_set_si(L.get(), N, MPFR_RNDN);
    mpfr_log(L.get(), L.get(), MPFR_RNDN);
    mpfr_set_si(t.get(), N, MPFR_RNDN);
    oracle::Big e;
    mpfr_set_si(e.get(), 2, MPFR_RNDN);
    mpfr_div_si(e.get(), e.get(), 3, MPFR_RNDN);
    mpfr_pow(t.get(), t.get(), e.get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), L.get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), L.get(), MPFR_RNDN);
    mpfr_ceil(t.get(), t.get());
    const auto H = static_cast<std::int64_t>(mpfr_get_sj(t.get(), MPFR_RNDN));
    CHECK(hypothesis_report(make(N, "3/2", "1/3,1/3,1/3", H)).conditions.at("cond_H").holds);
    CHECK_FALSE(hypothesis_report(make(N, "3/2", "1/3,1/3,1/3", H - 2)).conditions.at("cond_H").holds);
    bool seen = false;
    for (std::int64_t h = H - 50; h <= H + 50; ++h) {
      const bool holds = hypothesis_report(make(N, "3/2", "1/3,1/3,1/3", h)).conditions.at("cond_H").holds;
      CHECK((!seen || holds));
      seen = seen || holds;
    }
  }
  SUBCASE("all six keys present and the report never throws") {
    const auto r = hypothesis_report(make(50, "7/4", "1/5,2/5,2/5", 1));
    for (const char* key : {"cond_c_fractional", "cond_c_lower", "cond_H", "cond_lemma4", "cond_lemma56_y",
                            "cond_lemma8_y"})
      CHECK(r.conditions.count(key) == 1);
    CHECK_FALSE(r.notes.empty());
  }
}

TEST_CASE("instance JSON round trip") {
  const auto inst = make(987654, "7/4", "1/6,1/3,1/2", 321);
  const auto j = to_json(inst);
  CHECK(j.at("c") == "7/4");
  CHECK(instance_from_json(j) == inst);
  CHECK(code_of([] { instance_from_json(nlohmann::json{{"N", 1}}); }) == Errc::Parse);
}

TEST_CASE("H = 0 yields an infinite kappa serialised as null") {
  const auto dp = derive_params(make(1000, "3/2", "1/4,1/4,1/2", 0));
  CHECK(std::isinf(dp.kappa));
  CHECK(to_json(dp).at("kappa").is_null());
  CHECK_FALSE(dp.arc_split_meaningful);
}

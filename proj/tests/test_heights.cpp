#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bogocert/heights.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace bogocert;

static IntPoly P(std::vector<long> v) { return IntPoly::from_ints(v); }

static mpq_class Q(long n, long d = 1) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

static FieldElement rand_elem(const FieldPtr& F, std::mt19937_64& gen, long num_span = 9,
                              long den_span = 4) {
  std::vector<mpq_class> c(F->degree());
  for (auto& q : c) {
    q = mpq_class(long(gen() % (2 * num_span + 1)) - num_span, 1 + long(gen() % den_span));
    q.canonicalize();
  }
  return F->element(std::move(c));
}

static double mid(const HeightValue& h) { return 0.5 * (h.lower + h.upper); }

TEST_CASE("height reference values") {
  auto F4 = NumberField::cyclotomic_field(4);
  HeightValue h2 = weil_height(F4->from_rational(Q(2)));
  CHECK(h2.upper - h2.lower < 1e-10);
  CHECK(h2.lower <= std::log(2.0));
  CHECK(h2.upper >= std::log(2.0) - 1e-12);
  CHECK(mid(h2) == doctest::Approx(0.69314718055994531).epsilon(1e-10));

  // height of 1/2 is also log 2
  CHECK(mid(weil_height(F4->from_rational(Q(1, 2)))) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-10));

  auto F8 = NumberField::cyclotomic_field(8);
  HeightValue hz = weil_height(F8->generator());
  CHECK(hz.upper < 1e-10);
  CHECK(hz.lower >= 0.0);

  // golden ratio: h = (1/2) log phi (degree-2 field, Mahler log is log phi)
  auto Fph = NumberField::generic_field(P({-1, -1, 1}));
  HeightValue hg = weil_height(Fph->generator());
  CHECK(hg.upper - hg.lower < 1e-10);
  CHECK(mid(hg) == doctest::Approx(0.24060591252980172).epsilon(1e-10));
  double mlo = 0, mhi = 0;
  mahler_log_interval(P({-1, -1, 1}), 5e-11, mlo, mhi);
  CHECK(0.5 * (mlo + mhi) == doctest::Approx(0.48121182505960345).epsilon(1e-10));

  auto Fc = NumberField::generic_field(P({-2, 0, 0, 1}));
  HeightValue hc = weil_height(Fc->generator());
  CHECK(mid(hc) == doctest::Approx(0.69314718055994531 / 3).epsilon(1e-10));

  CHECK_THROWS(weil_height(F4->zero()));
}

TEST_CASE("height axioms on random elements") {
  auto F8 = NumberField::cyclotomic_field(8);
  auto gen = oracle::rng(0x4e1a);

  // Galois invariance
  for (int t = 0; t < 200; ++t) {
    FieldElement x = rand_elem(F8, gen, 5, 3);
    if (x.is_zero()) continue;
    HeightValue hx = weil_height(x);
    for (unsigned a : {3u, 5u, 7u}) {
      AbelianAutomorphism s(F8, a);
      HeightValue hs = weil_height(s.apply(x));
      CHECK(std::abs(mid(hs) - mid(hx)) < 1e-9);
    }
  }

  // power rule h(x^m) = |m| h(x)
  for (int t = 0; t < 200; ++t) {
    FieldElement x = rand_elem(F8, gen, 5, 3);
    if (x.is_zero()) continue;
    HeightValue hx = weil_height(x);
    for (long m : {-3l, -2l, -1l, 1l, 2l, 3l}) {
      HeightValue hm = weil_height(x.pow(m));
      CHECK(std::abs(mid(hm) - std::abs(double(m)) * mid(hx)) < 1e-9);
    }
  }

  // subadditivity for products and sums
  for (int t = 0; t < 100; ++t) {
    FieldElement x = rand_elem(F8, gen, 5, 3);
    FieldElement y = rand_elem(F8, gen, 5, 3);
    if (x.is_zero() || y.is_zero()) continue;
    HeightValue hx = weil_height(x), hy = weil_height(y);
    if (!(x * y).is_zero())
      CHECK(mid(weil_height(x * y)) <= mid(hx) + mid(hy) + 1e-9);
    if (!(x + y).is_zero())
      CHECK(mid(weil_height(x + y)) <= mid(hx) + mid(hy) + std::log(2.0) + 1e-9);
  }
}

TEST_CASE("Kronecker dichotomy") {
  auto F24 = NumberField::cyclotomic_field(24);
  FieldElement z = F24->generator();
  for (int k = 0; k < 24; ++k) {
    FieldElement u = z.pow(k);
    CHECK(torsion_order(u).has_value());
    CHECK(weil_height(u).upper < 1e-9);
  }
  auto gen = oracle::rng(0xbeef);
  int checked = 0;
  while (checked < 50) {
    FieldElement x = rand_elem(F24, gen, 5, 2);
    if (x.is_zero() || torsion_order(x)) continue;
    ++checked;
    // non-torsion elements of a degree-8 field have height far above 1e-9
    CHECK(weil_height(x).lower > 1e-9);
  }
}

TEST_CASE("acceleration map") {
  CHECK(accelerate(5, Q(7, 3), 0) == Q(7, 3));
  CHECK(accelerate(5, Q(1), 2) == Q(3));
  CHECK(accelerate(5, Q(1, 10), 1) == Q(1, 2));
  CHECK(accelerate(7, Q(1, 100), 2) == Q(49, 100));
  CHECK_THROWS(accelerate(5, Q(0), 1));
  CHECK_THROWS(accelerate(5, Q(-1), 1));

  // nondecreasing in lambda
  auto gen = oracle::rng(0x5ca1e);
  for (int t = 0; t < 50; ++t) {
    mpq_class rho(1 + long(gen() % 50), 1 + long(gen() % 50));
    rho.canonicalize();
    uint64_t p = (gen() % 2) ? 5 : 7;
    mpq_class prev = accelerate(p, rho, 0);
    for (long l = 1; l <= 6; ++l) {
      mpq_class cur = accelerate(p, rho, l);
      CHECK(cur >= prev);
      prev = cur;
    }
  }

  // big-integer valuation oracle: v_p(g1^(p^l) - g2^(p^l)) >= s_{p,rho}(l)
  for (uint64_t p : {5ull, 7ull}) {
    for (unsigned rho = 1; rho <= 2; ++rho) {
      for (unsigned l = 0; l <= 3; ++l) {
        mpq_class s = accelerate(p, mpq_class(rho), l);
        CHECK(s.get_den() == 1);
        for (int t = 0; t < 100; ++t) {
          mpz_class g1 = mpz_class(long(gen() % 2000001)) - 1000000;
          mpz_class step;
          mpz_ui_pow_ui(step.get_mpz_t(), p, rho);
          mpz_class g2 = g1 + step * (long(gen() % 2001) - 1000);
          if (g1 == g2) continue;
          mpz_class e;
          mpz_ui_pow_ui(e.get_mpz_t(), p, l);
          mpz_class pw1, pw2;
          mpz_pow_ui(pw1.get_mpz_t(), g1.get_mpz_t(), e.get_ui());
          mpz_pow_ui(pw2.get_mpz_t(), g2.get_mpz_t(), e.get_ui());
          if (pw1 == pw2) continue;
          CHECK(oracle::valuation(pw1 - pw2, p) >= s.get_num().get_ui());
        }
      }
    }
  }
}

TEST_CASE("lower bound formula") {
  BoundParams b1{1, 1, 2.0, 1, Q(1), 3};
  CHECK(lower_bound(b1) == doctest::Approx(0.75203869838813714).epsilon(1e-12));

  BoundParams b2{1, 2, 1.0, 4, Q(1, 4), 5};
  CHECK(lower_bound(b2) == doctest::Approx((std::log(5.0) - std::log(2.0)) / 3).epsilon(1e-12));

  BoundParams b3{1, 1, 1e-300, 1, Q(1), 3};
  CHECK(lower_bound(b3) == doctest::Approx(-std::log(2.0) / 2).epsilon(1e-10));

  // a = b = 1 with |S| * ratio = 1 recovers (rho log p - log 2)/2
  auto gen = oracle::rng(0xadc);
  for (int t = 0; t < 30; ++t) {
    double rho = 0.1 + double(gen() % 100) / 10.0;
    uint64_t p = std::vector<uint64_t>{3, 5, 7, 11, 13}[gen() % 5];
    BoundParams b{1, 1, rho, 1, Q(1), p};
    CHECK(lower_bound(b) ==
          doctest::Approx((rho * std::log(double(p)) - std::log(2.0)) / 2).epsilon(1e-12));
  }

  BoundParams bad = b1;
  bad.rho = 0;
  CHECK_THROWS(lower_bound(bad));
  bad = b1;
  bad.degree_ratio = Q(5, 4);
  CHECK_THROWS(lower_bound(bad));
}

TEST_CASE("special elements") {
  auto F4 = NumberField::cyclotomic_field(4);
  AbelianAutomorphism id4(F4, 1);
  FieldElement two = F4->from_rational(Q(2));
  FieldElement beta = special_element(two, id4, 2);
  CHECK(beta == F4->from_rational(Q(1, 2)));
  CHECK(mid(weil_height(beta)) <= 3 * mid(weil_height(two)) + 1e-9);

  auto F5 = NumberField::cyclotomic_field(5);
  AbelianAutomorphism s2(F5, 2);
  FieldElement x = F5->one() + F5->generator();
  FieldElement b5 = special_element(x, s2, 2);
  CHECK(b5 == s2.apply(x) / (x * x));
  CHECK(weil_height(x).upper * 3 >= weil_height(b5).lower - 1e-12);

  auto F8 = NumberField::cyclotomic_field(8);
  CHECK_THROWS(special_element(F8->generator(), AbelianAutomorphism(F8, 3), 2));  // torsion
  CHECK_THROWS(special_element(F8->zero(), AbelianAutomorphism(F8, 3), 2));
  CHECK_THROWS(special_element(two, id4, 1));  // g must exceed 1
}

TEST_CASE("merged-extension constant") {
  auto c511 = bogomolov_constant(5, Q(1), mpz_class(1));
  CHECK(c511.lambda == 0);
  CHECK(c511.c_closed == "log(5/2)/(2*5^0)");
  REQUIRE(c511.c_value.has_value());
  // enclosure must contain log(5/2)/2 = 0.45814536593707753...
  CHECK(c511.c_value->lower <= 0.45814536593707754);
  CHECK(c511.c_value->upper >= 0.45814536593707752);
  CHECK(c511.c_value->upper - c511.c_value->lower < 1e-9);

  auto c5252 = bogomolov_constant(5, Q(25), mpz_class(2));
  CHECK(c5252.lambda == 3);  // 1/25 -> 1/5 -> 1 -> 2
  REQUIRE(c5252.c_value.has_value());
  CHECK(mid(*c5252.c_value) == doctest::Approx(0.91629073187415507 / 250).epsilon(1e-10));

  auto c311 = bogomolov_constant(3, Q(1), mpz_class(1));
  CHECK(c311.lambda == 0);
  CHECK(mid(*c311.c_value) == doctest::Approx(0.20273255405408219).epsilon(1e-10));

  // the large-parameter regime stays exact through the closed form
  mpz_class C2;
  mpz_ui_pow_ui(C2.get_mpz_t(), 409, 16);
  auto big = bogomolov_constant(409, Q(409) * Q(409), C2);
  mpz_class expect = C2 + 1;
  CHECK(big.lambda == expect);
  CHECK(!big.c_value.has_value());
  CHECK(big.c_log10 < -1e40);
  // minimality cross-check through the exact acceleration map
  mpq_class rho = Q(1) / (Q(409) * Q(409));
  CHECK(accelerate(409, rho, big.lambda) >= C2);
  CHECK(accelerate(409, rho, big.lambda - 1) < C2);

  CHECK_THROWS(bogomolov_constant(2, Q(1), mpz_class(1)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bogocert/matgroups.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "oracles.hpp"

using namespace bogocert;

static bool same_elements(const MatGroup& a, const MatGroup& b) {
  if (a.elements.size() != b.elements.size()) return false;
  for (size_t i = 0; i < a.elements.size(); ++i)
    if (!(a.elements[i] == b.elements[i])) return false;
  return true;
}

static Mat2 rand_mat(const RingPtr& r, std::mt19937_64& gen) {
  Mat2 m{r, {}};
  for (int i = 0; i < 4; ++i) m.e[i] = gen() % r->cardinality();
  return m;
}

static Mat2 rand_invertible(const RingPtr& r, std::mt19937_64& gen) {
  for (;;) {
    Mat2 m = rand_mat(r, gen);
    if (m.invertible()) return m;
  }
}

static uint64_t naive_pow(const RingPtr& r, uint64_t a, unsigned e) {
  uint64_t acc = r->one();
  for (unsigned i = 0; i < e; ++i) acc = r->mul(acc, a);
  return acc;
}

static unsigned elt_order(const AbstractGroup& g, unsigned x) {
  unsigned o = 1, c = x;
  while (c != 0) {
    c = g.mul[c][x];
    ++o;
  }
  return o;
}

TEST_CASE("coefficient ring arithmetic") {
  auto Z25 = FiniteRing::zmod_pn(5, 2);
  CHECK(Z25->cardinality() == 25);
  CHECK(Z25->unit_count() == 20);
  CHECK(Z25->one() == 1);
  CHECK(Z25->from_int(-3) == 22);
  CHECK(Z25->add(20, 10) == 5);
  CHECK(Z25->mul(7, 8) == 6);
  CHECK_FALSE(Z25->is_unit(10));
  CHECK_THROWS_AS((void)Z25->inverse(5), std::domain_error);
  for (uint64_t a = 0; a < 25; ++a) {
    CHECK(Z25->is_unit(a) == (a % 5 != 0));
    if (a % 5 != 0) CHECK(Z25->mul(a, Z25->inverse(a)) == 1);
  }
  CHECK_FALSE(Z25->is_fp_algebra());

  auto F25 = FiniteRing::product_field(5, {2});
  CHECK(F25->cardinality() == 25);
  CHECK(F25->unit_count() == 24);
  CHECK(F25->is_fp_algebra());
  CHECK(F25->fp_dimension() == 2);
  // every nonzero element invertible, and the inverse really inverts
  for (uint64_t a = 1; a < 25; ++a) {
    CHECK(F25->is_unit(a));
    CHECK(F25->mul(a, F25->inverse(a)) == F25->one());
  }
  // freshman's dream in characteristic 5: (a+b)^5 = a^5 + b^5, exhaustively
  for (uint64_t a = 0; a < 25; ++a)
    for (uint64_t b = 0; b < 25; ++b)
      CHECK(naive_pow(F25, F25->add(a, b), 5) ==
            F25->add(naive_pow(F25, a, 5), naive_pow(F25, b, 5)));
  // prime subring of F_25 is exactly the five integer images
  unsigned prime_count = 0;
  for (uint64_t a = 0; a < 25; ++a)
    if (F25->in_prime_subring(a)) ++prime_count;
  CHECK(prime_count == 5);

  auto F5x5 = FiniteRing::product_field(5, {1, 1});
  CHECK(F5x5->cardinality() == 25);
  CHECK(F5x5->unit_count() == 16);
  CHECK(F5x5->fp_dimension() == 2);
  CHECK(F5x5->from_int(3) == F5x5->add(F5x5->one(), F5x5->add(F5x5->one(), F5x5->one())));

  // coordinate round trip
  auto gen = oracle::rng(411);
  for (auto& R : {F25, F5x5})
    for (int t = 0; t < 200; ++t) {
      uint64_t a = gen() % R->cardinality();
      CHECK(R->from_fp_coords(R->fp_coords(a)) == a);
    }
}

TEST_CASE("component moduli are the first irreducibles in lexicographic order") {
  CHECK(least_irreducible(5, 2) == FpPoly{1, 1, 1});  // x^2 + x + 1
  CHECK(least_irreducible(7, 2) == FpPoly{1, 0, 1});  // x^2 + 1
  CHECK(least_irreducible(2, 1) == FpPoly{0, 1});     // x
  auto F25 = FiniteRing::product_field(5, {2});
  REQUIRE(F25->component_moduli().size() == 1);
  CHECK(F25->component_moduli()[0] == FpPoly{1, 1, 1});

  // oracle: scan coefficient tuples (c_0, c_1, ...) in lex order, constant
  // term most significant, and take the first irreducible
  for (uint64_t p : {2, 3, 5, 7}) {
    for (unsigned d : {2u, 3u}) {
      uint64_t total = 1;
      for (unsigned i = 0; i < d; ++i) total *= p;
      FpPoly first;
      for (uint64_t rank = 0; rank < total && first.empty(); ++rank) {
        FpPoly f(d + 1, 0);
        f[d] = 1;
        uint64_t t = rank;
        for (unsigned j = 0; j < d; ++j) {
          f[d - 1 - j] = t % p;
          t /= p;
        }
        if (oracle::irreducible_ref(f, p)) first = f;
      }
      CHECK(least_irreducible(p, d) == first);
    }
  }
}

TEST_CASE("matrix arithmetic basics") {
  auto F5 = FiniteRing::zmod_pn(5, 1);
  Mat2 a = Mat2::from_ints(F5, 1, 2, 3, 4);
  Mat2 b = Mat2::from_ints(F5, 0, 1, 4, 2);
  CHECK(a.det() == F5->from_int(-2));
  CHECK(a.trace() == 0);
  CHECK((a * Mat2::identity(F5)) == a);
  CHECK((a + b) == Mat2::from_ints(F5, 1, 3, 7, 6));
  CHECK((a - a) == Mat2::zero_matrix(F5));
  CHECK(a.scaled(2) == Mat2::from_ints(F5, 2, 4, 6, 8));
  CHECK(a.invertible());
  CHECK((a * a.inverse()).is_identity());
  CHECK((a.inverse() * a).is_identity());
  Mat2 sing = Mat2::from_ints(F5, 1, 2, 2, 4);
  CHECK_FALSE(sing.invertible());
  CHECK_THROWS_AS((void)sing.inverse(), std::domain_error);

  auto gen = oracle::rng(412);
  for (int t = 0; t < 300; ++t) {
    Mat2 x = rand_mat(F5, gen), y = rand_mat(F5, gen), z = rand_mat(F5, gen);
    CHECK(((x * y) * z) == (x * (y * z)));
    CHECK((x * (y + z)) == (x * y + x * z));
    CHECK(F5->mul(x.det(), y.det()) == (x * y).det());
  }

  auto big = FiniteRing::zmod_pn(409, 2);
  CHECK_THROWS_AS((void)Mat2::identity(big).key(), ClosureOverflow);
}

TEST_CASE("group closure") {
  auto F5 = FiniteRing::zmod_pn(5, 1);
  MatGroup trivial = group_closure(MatGroup{F5, {}, {}});
  CHECK(trivial.order() == 1);
  CHECK(trivial.elements[0].is_identity());

  // a rotation of order 4
  Mat2 rot = Mat2::from_ints(F5, 0, -1, 1, 0);
  MatGroup c4 = group_closure(MatGroup{F5, {rot}, {}});
  CHECK(c4.order() == 4);
  CHECK(c4.contains(Mat2::identity(F5)));
  CHECK(c4.contains(rot));
  CHECK(c4.contains(rot * rot));
  CHECK(c4.contains(rot.inverse()));
  CHECK_FALSE(c4.contains(Mat2::from_ints(F5, 1, 1, 0, 1)));

  auto F3 = FiniteRing::zmod_pn(3, 1);
  MatGroup sl23 = group_closure(MatGroup{F3, sl2_generators(F3), {}});
  CHECK(sl23.order() == 24);
  CHECK(sl23.order() == sl2_order(F3));
  for (const Mat2& m : sl23.elements) CHECK(m.det() == F3->one());

  MatGroup gl25 = group_closure(MatGroup{F5, gl2_generators(F5), {}});
  CHECK(gl25.order() == 480);
  CHECK(gl25.order() == gl2_order(F5));
  CHECK_THROWS_AS(group_closure(MatGroup{F5, gl2_generators(F5), {}}, 100), ClosureOverflow);

  // closure is a group: random products and inverses stay inside
  auto gen = oracle::rng(413);
  for (int t = 0; t < 100; ++t) {
    const Mat2& x = gl25.elements[gen() % gl25.elements.size()];
    const Mat2& y = gl25.elements[gen() % gl25.elements.size()];
    CHECK(gl25.contains(x * y));
    CHECK(gl25.contains(x.inverse()));
  }

  auto Z9 = FiniteRing::zmod_pn(3, 2);
  CHECK(group_closure(MatGroup{Z9, sl2_generators(Z9), {}}).order() == sl2_order(Z9));
  CHECK(sl2_order(Z9) == 648);

  auto F25 = FiniteRing::product_field(5, {2});
  MatGroup sl225 = group_closure(MatGroup{F25, sl2_generators(F25), {}});
  CHECK(sl225.order() == 15600);
  CHECK(sl225.order() == sl2_order(F25));
  for (int t = 0; t < 50; ++t) {
    const Mat2& x = sl225.elements[gen() % sl225.elements.size()];
    CHECK(x.det() == F25->one());
    CHECK(sl225.contains(x.inverse()));
  }

  auto F3x3 = FiniteRing::product_field(3, {1, 1});
  CHECK(group_closure(MatGroup{F3x3, gl2_generators(F3x3), {}}).order() == gl2_order(F3x3));
  CHECK(gl2_order(F3x3) == 48 * 48);
  CHECK(sl2_order(F3x3) == 24 * 24);

  CHECK(gl2_order(FiniteRing::zmod_pn(2, 1)) == 6);
  CHECK(gl2_order(FiniteRing::zmod_pn(5, 2)) == 300000);
  CHECK(sl2_order(FiniteRing::zmod_pn(5, 2)) == 15000);
}

TEST_CASE("center of a matrix group") {
  auto F3 = FiniteRing::zmod_pn(3, 1);
  MatGroup gl23 = group_closure(MatGroup{F3, gl2_generators(F3), {}});
  CHECK(gl23.order() == 48);
  MatGroup z = center(gl23);
  CHECK(z.order() == 2);
  CHECK(z.contains(Mat2::identity(F3)));
  CHECK(z.contains(Mat2::from_ints(F3, 2, 0, 0, 2)));

  auto F5 = FiniteRing::zmod_pn(5, 1);
  MatGroup sl25 = group_closure(MatGroup{F5, sl2_generators(F5), {}});
  MatGroup z5 = center(sl25);
  CHECK(z5.order() == 2);
  CHECK(z5.contains(Mat2::from_ints(F5, -1, 0, 0, -1)));

  // an abelian group is its own center
  Mat2 d = Mat2::from_ints(F5, 2, 0, 0, 3);
  MatGroup diag = group_closure(MatGroup{F5, {d}, {}});
  MatGroup zd = center(diag);
  CHECK(zd.order() == diag.order());
  CHECK(same_elements(zd, diag));
}

// reference normal closure: group generated by all ambient conjugates of the
// subgroup generators
static MatGroup normal_closure_ref(const MatGroup& h, const MatGroup& ambient) {
  std::vector<Mat2> gens;
  const std::vector<Mat2>& hg = h.generators.empty() ? h.elements : h.generators;
  for (const Mat2& a : ambient.elements) {
    Mat2 ai = a.inverse();
    for (const Mat2& s : hg) gens.push_back((a * s) * ai);
  }
  return group_closure(MatGroup{ambient.ring, gens, {}});
}

TEST_CASE("normal closure") {
  auto F3 = FiniteRing::zmod_pn(3, 1);
  MatGroup gl23 = group_closure(MatGroup{F3, gl2_generators(F3), {}});

  MatGroup triv{F3, {Mat2::identity(F3)}, {}};
  CHECK(normal_closure(triv, gl23).order() == 1);

  MatGroup z = center(gl23);
  MatGroup nz = normal_closure(z, gl23);
  CHECK(same_elements(nz, z));

  // SL2 is already normal in GL2
  MatGroup sl23{F3, sl2_generators(F3), {}};
  MatGroup nsl = normal_closure(sl23, gl23);
  CHECK(nsl.order() == 24);
  CHECK(same_elements(nsl, normal_closure_ref(sl23, gl23)));

  // a nonsplit torus of GL2(F_5): cyclic of order 24, generated by the
  // companion matrix of an irreducible quadratic; its normal closure is
  // everything
  auto F5 = FiniteRing::zmod_pn(5, 1);
  MatGroup gl25 = group_closure(MatGroup{F5, gl2_generators(F5), {}});
  MatGroup torus{F5, {}, {}};
  for (long t = 0; t < 5 && !torus.enumerated(); ++t)
    for (long d = 1; d < 5 && !torus.enumerated(); ++d) {
      IntPoly q = IntPoly::from_ints({d, -t, 1});
      if (!irreducible_mod_p(q, 5)) continue;
      Mat2 comp = Mat2::from_ints(F5, 0, -d, 1, t);
      MatGroup cyc = group_closure(MatGroup{F5, {comp}, {}});
      if (cyc.order() == 24) torus = cyc;
    }
  REQUIRE(torus.enumerated());
  MatGroup big = normal_closure(MatGroup{F5, torus.generators, {}}, gl25);
  CHECK(big.order() == 480);
  CHECK(same_elements(big, normal_closure_ref(torus, gl25)));

  // the result is normal and contains the seed (exhaustive)
  for (const Mat2& s : torus.elements) CHECK(big.contains(s));
  for (const Mat2& a : gl25.elements)
    for (const Mat2& g : big.generators) CHECK(big.contains((a * g) * a.inverse()));

  // Lagrange both ways
  CHECK(480 % big.order() == 0);
  CHECK(big.order() % torus.order() == 0);

  MatGroup outside{F5, {Mat2::from_ints(F5, 1, 1, 0, 1)}, {}};
  CHECK_THROWS_AS(normal_closure(outside, torus), std::domain_error);
}

TEST_CASE("determinant-constrained groups") {
  auto F5 = FiniteRing::zmod_pn(5, 1);
  MatGroup g2 = ghat(F5, 2);
  CHECK(g2.order() == 480);
  CHECK(g2.order() == gl2_order(F5));
  CHECK(contains_sl2(g2));

  MatGroup g5 = ghat(F5, 5);
  CHECK(g5.order() == 120);
  for (const Mat2& m : g5.elements) CHECK(m.det() == F5->one());
  CHECK(contains_sl2(g5));

  // brute scan oracle over F_5: collect every invertible matrix whose
  // determinant is a (k-1)-th power of a unit
  for (unsigned k : {2u, 5u, 3u}) {
    std::set<uint64_t> dets;
    for (uint64_t c = 1; c < 5; ++c) dets.insert(naive_pow(F5, c, k - 1));
    std::vector<uint64_t> keys;
    for (uint64_t a = 0; a < 5; ++a)
      for (uint64_t b = 0; b < 5; ++b)
        for (uint64_t c = 0; c < 5; ++c)
          for (uint64_t d = 0; d < 5; ++d) {
            Mat2 m{F5, {a, b, c, d}};
            if (dets.count(m.det())) keys.push_back(m.key());
          }
    std::sort(keys.begin(), keys.end());
    MatGroup g = ghat(F5, k);
    REQUIRE(g.order() == keys.size());
    for (size_t i = 0; i < keys.size(); ++i) CHECK(g.elements[i].key() == keys[i]);
  }

  // weight 2 over F_25: index 4 over SL2, determinants in the diagonal F_5*
  auto F25 = FiniteRing::product_field(5, {2});
  MatGroup g25 = ghat(F25, 2);
  CHECK(g25.order() == 62400);
  CHECK(g25.order() == 4 * sl2_order(F25));
  CHECK(contains_sl2(g25));
  {
    std::set<uint64_t> dets;
    for (uint64_t c = 1; c < 5; ++c) dets.insert(naive_pow(F25, F25->from_int(long(c)), 1));
    size_t count = 0;
    bool all_in = true;
    for (uint64_t a = 0; a < 25; ++a)
      for (uint64_t b = 0; b < 25; ++b)
        for (uint64_t c = 0; c < 25; ++c)
          for (uint64_t d = 0; d < 25; ++d) {
            Mat2 m{F25, {a, b, c, d}};
            if (dets.count(m.det())) {
              ++count;
              if ((count & 1023) == 0 && !g25.contains(m)) all_in = false;
            }
          }
    CHECK(count == 62400);
    CHECK(all_in);
  }

  // weight 1 forces determinant 1
  CHECK(ghat(F5, 1).order() == 120);

  // full group over Z/25 at weight 2
  auto Z25 = FiniteRing::zmod_pn(5, 2);
  CHECK(ghat(Z25, 2).order() == gl2_order(Z25));

  // a diagonal group misses the transvections
  Mat2 d = Mat2::from_ints(F5, 2, 0, 0, 1);
  CHECK_FALSE(contains_sl2(group_closure(MatGroup{F5, {d}, {}})));
  auto F3 = FiniteRing::zmod_pn(3, 1);
  CHECK(contains_sl2(group_closure(MatGroup{F3, sl2_generators(F3), {}})));
}

TEST_CASE("matrix logarithm at the penultimate level") {
  auto Z25 = FiniteRing::zmod_pn(5, 2);
  auto F5 = FiniteRing::zmod_pn(5, 1);

  CHECK(log_map(Mat2::identity(Z25)) == Mat2::zero_matrix(F5));
  // I + 5*[[1,2],[3,4]]
  Mat2 m{Z25, {1 + 5 * 1, 5 * 2, 5 * 3, 1 + 5 * 4}};
  CHECK(log_map(m) == Mat2{F5, {1, 2, 3, 4}});

  CHECK_THROWS_AS((void)log_map(Mat2::elementary12(Z25, 1)), std::domain_error);
  CHECK_THROWS_AS((void)log_map(Mat2::identity(F5)), std::domain_error);

  // exhaustive: A -> I + 5A -> A is the identity on all 625 residue matrices
  for (uint64_t a = 0; a < 5; ++a)
    for (uint64_t b = 0; b < 5; ++b)
      for (uint64_t c = 0; c < 5; ++c)
        for (uint64_t d = 0; d < 5; ++d) {
          Mat2 A{F5, {a, b, c, d}};
          Mat2 lift{Z25, {(1 + 5 * a) % 25, 5 * b, 5 * c, (1 + 5 * d) % 25}};
          CHECK(log_map(lift) == A);
        }

  auto gen = oracle::rng(414);
  for (uint64_t p : {5, 7}) {
    auto Zp2 = FiniteRing::zmod_pn(p, 2);
    auto Fp = FiniteRing::zmod_pn(p, 1);
    auto lift = [&](const Mat2& A) {
      Mat2 m2{Zp2, {}};
      std::array<uint64_t, 4> idm = {1, 0, 0, 1};
      for (int i = 0; i < 4; ++i) m2.e[i] = (idm[i] + p * A.e[i]) % (p * p);
      return m2;
    };
    for (int t = 0; t < 1000; ++t) {
      Mat2 A = rand_mat(Fp, gen), B = rand_mat(Fp, gen);
      Mat2 mA = lift(A), mB = lift(B);
      // additivity on the kernel
      CHECK(log_map(mA * mB) == (A + B));
      // doubling
      CHECK(log_map(mA * mA) == (A + A));
      // determinant expansion: det(I + pA) = 1 + p tr(A) at this level
      CHECK((mA.det()) == (1 + p * A.trace()) % (p * p));
      // conjugation equivariance
      Mat2 g = rand_invertible(Zp2, gen);
      Mat2 gbar{Fp, {g.e[0] % p, g.e[1] % p, g.e[2] % p, g.e[3] % p}};
      CHECK(log_map((g * mA) * g.inverse()) == ((gbar * A) * gbar.inverse()));
    }
  }
}

TEST_CASE("trace-constrained subspaces") {
  auto F5 = FiniteRing::zmod_pn(5, 1);
  TraceSpaces t5 = trace_subspaces(F5);
  CHECK(t5.mhat.dim() == 4);
  CHECK(t5.trace_zero.dim() == 3);
  CHECK(t5.scalars.dim() == 1);
  auto gen = oracle::rng(415);
  for (int t = 0; t < 100; ++t) {
    Mat2 m = rand_mat(F5, gen);
    CHECK(t5.mhat.contains(m));  // over F_p every trace is scalar
    CHECK(t5.trace_zero.contains(m) == (m.trace() == 0));
  }
  CHECK(t5.scalars.contains(Mat2::from_ints(F5, 3, 0, 0, 3)));
  CHECK_FALSE(t5.scalars.contains(Mat2::from_ints(F5, 3, 0, 0, 2)));

  for (auto& R : {FiniteRing::product_field(5, {2}), FiniteRing::product_field(5, {1, 1})}) {
    TraceSpaces ts = trace_subspaces(R);
    CHECK(ts.mhat.dim() == 7);
    CHECK(ts.trace_zero.dim() == 6);
    CHECK(ts.scalars.dim() == 1);
    for (const Mat2& b : ts.scalars.basis) CHECK(ts.mhat.contains(b));
    for (const Mat2& b : ts.trace_zero.basis) {
      CHECK(ts.mhat.contains(b));
      CHECK(b.trace() == R->zero());
    }
  }

  // over F_25 a non-rational trace escapes the smaller space
  auto F25 = FiniteRing::product_field(5, {2});
  TraceSpaces ts = trace_subspaces(F25);
  uint64_t w = F25->fp_basis()[1];  // the non-rational basis element
  CHECK(ts.trace_zero.contains(Mat2{F25, {w, 0, 0, F25->neg(w)}}));
  CHECK(ts.trace_zero.contains(Mat2{F25, {0, w, 0, 0}}));
  CHECK_FALSE(ts.mhat.contains(Mat2{F25, {w, 0, 0, 0}}));
  CHECK(ts.mhat.contains(Mat2{F25, {F25->one(), 0, 0, 0}}));
  CHECK_FALSE(ts.scalars.contains(Mat2{F25, {w, 0, 0, w}}));

  CHECK_THROWS_AS(trace_subspaces(FiniteRing::zmod_pn(5, 2)), std::domain_error);
}

TEST_CASE("conjugation-stable spans") {
  auto F5 = FiniteRing::zmod_pn(5, 1);
  TraceSpaces t5 = trace_subspaces(F5);

  MatSubspace zero = make_subspace(F5, {Mat2::zero_matrix(F5)});
  CHECK(zero.dim() == 0);
  CHECK(adjoint_closure(zero).dim() == 0);

  // one nilpotent generates the whole trace-zero space
  MatSubspace nil = make_subspace(F5, {Mat2::from_ints(F5, 0, 1, 0, 0)});
  MatSubspace cl = adjoint_closure(nil);
  CHECK(cl.dim() == 3);
  for (const Mat2& b : t5.trace_zero.basis) CHECK(cl.contains(b));
  for (const Mat2& b : cl.basis) CHECK(t5.trace_zero.contains(b));

  // oracle: stability under every element of SL2(F_5), not just generators
  MatGroup sl25 = group_closure(MatGroup{F5, sl2_generators(F5), {}});
  for (const Mat2& s : sl25.elements)
    for (const Mat2& b : cl.basis) CHECK(cl.contains((s * b) * s.inverse()));

  // any nonzero trace-zero seed over a prime field spans everything
  auto gen = oracle::rng(416);
  for (uint64_t p : {5, 7}) {
    auto Fp = FiniteRing::zmod_pn(p, 1);
    for (int t = 0; t < 25; ++t) {
      uint64_t a = gen() % p, b = gen() % p, c = gen() % p;
      if (a == 0 && b == 0 && c == 0) continue;
      Mat2 m{Fp, {a, b, c, Fp->neg(a)}};
      CHECK(adjoint_closure(make_subspace(Fp, {m})).dim() == 3);
    }
  }

  // over the quadratic extension the scalar-restricted module is irreducible:
  // any nonzero trace-zero seed, rational or not, fills all six dimensions
  auto F25 = FiniteRing::product_field(5, {2});
  uint64_t w = F25->fp_basis()[1];
  Mat2 hw{F25, {w, 0, 0, F25->neg(w)}};
  MatSubspace clw = adjoint_closure(make_subspace(F25, {hw}));
  CHECK(clw.dim() == 6);
  Mat2 h1{F25, {F25->one(), 0, 0, F25->neg(F25->one())}};
  CHECK(clw.contains(h1));
  CHECK(adjoint_closure(make_subspace(F25, {h1})).dim() == 6);

  // the split algebra is different: a seed supported on one factor closes up
  // inside that factor and never meets the diagonally embedded matrices
  auto F5x5 = FiniteRing::product_field(5, {1, 1});
  uint64_t a0 = F5x5->from_fp_coords({1, 0});
  Mat2 h_left{F5x5, {a0, 0, 0, F5x5->neg(a0)}};
  MatSubspace cl_left = adjoint_closure(make_subspace(F5x5, {h_left}));
  CHECK(cl_left.dim() == 3);
  Mat2 hd{F5x5, {F5x5->one(), 0, 0, F5x5->neg(F5x5->one())}};
  CHECK_FALSE(cl_left.contains(hd));
  // a seed meeting the diagonal copy spans both factors
  CHECK(adjoint_closure(make_subspace(F5x5, {hd})).dim() == 6);

  CHECK_THROWS_AS(adjoint_closure(make_subspace(F5, {Mat2::from_ints(F5, 1, 0, 0, 0)})),
                  std::domain_error);
}

TEST_CASE("abstract groups and multiplication tables") {
  AbstractGroup c6 = cyclic_group(6);
  CHECK(c6.valid());
  CHECK(c6.order() == 6);
  CHECK(elt_order(c6, 1) == 6);
  CHECK(elt_order(c6, 2) == 3);
  CHECK(elt_order(c6, 3) == 2);
  CHECK(group_center(c6).size() == 6);

  auto F2 = FiniteRing::zmod_pn(2, 1);
  MatGroup gl22 = group_closure(MatGroup{F2, gl2_generators(F2), {}});
  CHECK(gl22.order() == 6);
  AbstractGroup s3 = abstract_from_matgroup(gl22);
  CHECK(s3.valid());
  CHECK(group_center(s3).size() == 1);
  std::map<unsigned, int> orders;
  for (unsigned i = 0; i < 6; ++i) orders[elt_order(s3, i)]++;
  CHECK(orders[1] == 1);
  CHECK(orders[2] == 3);
  CHECK(orders[3] == 2);

  auto F3 = FiniteRing::zmod_pn(3, 1);
  AbstractGroup sl23 = abstract_from_matgroup(MatGroup{F3, sl2_generators(F3), {}});
  CHECK(sl23.valid());
  CHECK(sl23.order() == 24);
  CHECK(group_center(sl23).size() == 2);

  AbstractGroup broken = cyclic_group(4);
  broken.mul[1][2] = 0;
  CHECK_FALSE(broken.valid());
}

TEST_CASE("fiber products") {
  // two copies of the permutation group on three letters glued over the sign
  auto F2 = FiniteRing::zmod_pn(2, 1);
  AbstractGroup s3 = abstract_from_matgroup(
      group_closure(MatGroup{F2, gl2_generators(F2), {}}));
  AbstractGroup c2 = cyclic_group(2);
  GroupHom sign{&s3, &c2, {}};
  sign.map.resize(6);
  for (unsigned i = 0; i < 6; ++i) sign.map[i] = elt_order(s3, i) == 2 ? 1 : 0;
  REQUIRE(is_homomorphism(sign));
  REQUIRE(is_surjective(sign));
  FiberProduct fp = fiber_product({&s3, &s3}, {sign, sign});
  CHECK(fp.group.order() == 18);
  CHECK(fp.group.valid());
  CHECK(group_center(fp.group).size() == 1);
  for (const auto& t : fp.tuples) CHECK(sign.map[t[0]] == sign.map[t[1]]);

  // dihedral group of order 8 as matrices mod 3
  auto F3 = FiniteRing::zmod_pn(3, 1);
  MatGroup d4m = group_closure(
      MatGroup{F3, {Mat2::from_ints(F3, 0, -1, 1, 0), Mat2::from_ints(F3, 1, 0, 0, -1)}, {}});
  CHECK(d4m.order() == 8);
  AbstractGroup d4 = abstract_from_matgroup(d4m);
  REQUIRE(d4.valid());
  CHECK(group_center(d4).size() == 2);

  // direct product: glue over the one-point group
  AbstractGroup c1 = cyclic_group(1);
  GroupHom collapse{&d4, &c1, std::vector<unsigned>(8, 0)};
  FiberProduct prod = fiber_product({&d4, &d4}, {collapse, collapse});
  CHECK(prod.group.order() == 64);
  CHECK(prod.group.valid());
  CHECK(group_center(prod.group).size() == 4);

  // glue the two copies over the determinant sign instead
  std::vector<Mat2> d4elems;
  {
    Mat2 id = Mat2::identity(F3);
    d4elems.push_back(id);
    for (const Mat2& m : d4m.elements)
      if (!(m == id)) d4elems.push_back(m);
  }
  GroupHom dethom{&d4, &c2, {}};
  dethom.map.resize(8);
  for (unsigned i = 0; i < 8; ++i) dethom.map[i] = d4elems[i].det() == F3->one() ? 0 : 1;
  REQUIRE(is_homomorphism(dethom));
  REQUIRE(is_surjective(dethom));
  FiberProduct half = fiber_product({&d4, &d4}, {dethom, dethom});
  CHECK(half.group.order() == 32);
  CHECK(half.group.valid());
  CHECK(group_center(half.group).size() == 4);

  // two cyclic groups of order four glued over the quotient of order two
  AbstractGroup c4 = cyclic_group(4);
  GroupHom md{&c4, &c2, {0, 1, 0, 1}};
  REQUIRE(is_homomorphism(md));
  FiberProduct cc = fiber_product({&c4, &c4}, {md, md});
  CHECK(cc.group.order() == 8);
  CHECK(cc.group.valid());
  CHECK(group_center(cc.group).size() == 8);
  std::map<unsigned, int> orders;
  for (unsigned i = 0; i < 8; ++i) orders[elt_order(cc.group, i)]++;
  CHECK(orders[1] == 1);
  CHECK(orders[2] == 3);
  CHECK(orders[4] == 4);

  // identity-first convention
  for (unsigned v : fp.tuples[0]) CHECK(v == 0);
  for (unsigned v : cc.tuples[0]) CHECK(v == 0);

  // a non-surjective leg is rejected
  GroupHom zero{&c4, &c2, {0, 0, 0, 0}};
  REQUIRE(is_homomorphism(zero));
  CHECK_THROWS_AS(fiber_product({&c4, &c4}, {md, zero}), std::domain_error);
  // so is a map that fails the homomorphism law
  GroupHom bad{&c4, &c2, {0, 1, 0, 0}};
  CHECK_FALSE(is_homomorphism(bad));
  CHECK_THROWS_AS(fiber_product({&c4, &c4}, {md, bad}), std::domain_error);
  // and mismatched endpoints
  CHECK_THROWS_AS(fiber_product({&c4, &d4}, {md, md}), std::invalid_argument);

  // random triples from a small pool: order formula and group laws
  auto gen = oracle::rng(417);
  std::vector<const AbstractGroup*> pool = {&c4, &d4, &s3};
  std::vector<GroupHom> leg = {md, dethom, sign};
  for (int t = 0; t < 3; ++t) {
    size_t i = gen() % pool.size(), j = gen() % pool.size();
    FiberProduct r = fiber_product({pool[i], pool[j]}, {leg[i], leg[j]});
    CHECK(r.group.valid());
    CHECK(r.group.order() == pool[i]->order() * pool[j]->order() / 2);
    for (const auto& tu : r.tuples) CHECK(leg[i].map[tu[0]] == leg[j].map[tu[1]]);
  }
}

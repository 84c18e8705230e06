#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace bogocert {

// Dense integer polynomial, constant term first.  The zero polynomial is the
// empty coefficient vector; otherwise the leading coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly from_ints(const std::vector<long>& v);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](size_t i) const { return c_[i]; }
  const mpz_class& lead() const { return c_.back(); }

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval_q(const mpq_class& x) const;
  IntPoly derivative() const;
  mpz_class content() const;    // gcd of coefficients, 0 for the zero polynomial
  IntPoly primitive() const;    // content divided out, leading coefficient > 0

  std::string str(const std::string& var = "X") const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

 private:
  std::vector<mpz_class> c_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

// m-th cyclotomic polynomial, computed by exact division of x^m - 1.
IntPoly cyclotomic(unsigned m);

// ---------------------------------------------------------------------------
// Polynomials over F_p (p < 2^31 prime), coefficient vectors constant-first,
// trailing zeros stripped.  Backbone of prime-splitting and irreducibility
// checks; inputs stay desk-scale (degree <= 8).
// ---------------------------------------------------------------------------
using FpPoly = std::vector<uint64_t>;

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod);
// Euler criterion; a may be negative.  p an odd prime.  True iff a is a
// nonzero square mod p.
bool is_square_mod(int64_t a, uint64_t p);

FpPoly fp_reduce(const IntPoly& f, uint64_t p);
FpPoly fp_trim(FpPoly a);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly fp_mod(FpPoly a, const FpPoly& m, uint64_t p);
FpPoly fp_divexact(FpPoly a, const FpPoly& d, uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p);  // monic, or empty if both zero
FpPoly fp_monic(FpPoly a, uint64_t p);
FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, uint64_t p);
std::string fp_str(const FpPoly& f, const std::string& var = "X");

struct FpFactor {
  FpPoly poly;  // monic irreducible
  int mult;
};

// Complete factorization into monic irreducibles over F_p.  Requires
// p not dividing the leading coefficient.  Factors are sorted by degree,
// then lexicographically by coefficient list (constant term first), so the
// output is deterministic.  The product of the factors (with multiplicity)
// times the leading coefficient reproduces the input mod p.
std::vector<FpFactor> factor_mod_p(const IntPoly& f, uint64_t p);

bool irreducible_mod_p(const IntPoly& f, uint64_t p);

}  // namespace bogocert

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

namespace bogocert {

// (p^2 - 1) / gcd(p^2 - 1, k - 1)
uint64_t delta(uint64_t p, uint64_t k);

struct CrystallineParams {
  uint64_t p = 0;
  uint64_t k = 0;
  uint64_t q = 0;      // p^2
  unsigned n = 1;      // level
  uint64_t delta = 0;  // (q-1)/gcd(q-1, k-1)
  bool p3_ok = false;  // p >= 5, p does not divide k-1, (p+1)/2 does not divide k-1

  static CrystallineParams make(uint64_t p, uint64_t k, unsigned n);
};

struct GaloisStructure {
  std::vector<mpz_class> invariants;  // [delta, p^{n-1}, p^{n-1}], trivial factors dropped
  mpz_class order;                    // delta * q^{n-1}
  bool verified_by_enumeration = false;
};

// abelian structure of the level-n extension group; cross-checked against the
// unit-group enumeration whenever p^{4n} <= 10^6 (throws std::logic_error on a
// mismatch, which would mean a formula bug)
GaloisStructure gal_structure(const CrystallineParams& params);

struct RamBreak {
  mpz_class lo, hi;        // index interval, inclusive
  unsigned fixed_level;    // the subgroup on this interval fixes level j
  mpz_class group_order;
};

struct RamificationFiltration {
  uint64_t p = 0, k = 0, q = 0;
  unsigned n = 1;
  uint64_t gcd_qk = 0;              // gcd(q-1, k-1)
  std::vector<RamBreak> breaks;     // intervals partition [0, last_index]
  mpz_class last_index;             // i_n = (q^{n-1}-1)/gcd(q-1,k-1)
  mpz_class last_group_order;       // p^2 when n >= 2, delta when n = 1
  mpz_class total_order;            // e_n = delta * q^{n-1}
};

RamificationFiltration ramification_filtration(const CrystallineParams& params);

struct NormCheck {
  bool surjective = false;
  bool degenerate = false;      // p divides k-1: the power map collapses
  bool by_enumeration = false;
};

// image of u -> (u * conj(u))^{k-1} on the level-(n-1) unit layer against the
// full base-side layer; for n = 1 the norm itself on residue fields
NormCheck norm_surjective(uint64_t p, unsigned n, uint64_t k);

// M^{2(p-1)}; requires M >= 2 and gcd(M, p) = 1
mpz_class central_exponent(uint64_t p, const mpz_class& M);

struct Assumption3Row {
  unsigned n = 1;
  mpz_class e_n, i_n;
  bool ratio_ok = false;  // e_n <= (q-1) * (i_n + 1)
};

struct Assumption3Report {
  mpz_class C1;  // p^2
  mpz_class C2;  // p^{4 * hecke_degree}
  std::vector<Assumption3Row> rows;
  bool all_ok = false;
};

Assumption3Report assumption3_constants(uint64_t p, uint64_t k, unsigned hecke_degree,
                                        unsigned n_max);

struct OmegaOrders {
  std::set<uint64_t> orders;          // m with ord(zeta_m^2) = chi_at_p_order
  std::set<uint64_t> twisted_orders;  // orders of zeta * sqrt(-1) over those zeta
};

OmegaOrders omega_order(uint64_t chi_at_p_order);

// (Z/p^n)[x]/(f) for the fixed lexicographically-least irreducible quadratic f
// mod p; element index = a + b*p^n encoding a + b*omega. Brute-force oracle for
// the unit group of the unramified quadratic extension at level n.
class UnitGroupModel {
public:
  static UnitGroupModel make(uint64_t p, unsigned n);  // caps p^{2n} <= 10^6

  uint64_t p() const { return p_; }
  unsigned level() const { return n_; }
  uint64_t modulus() const { return pn_; }      // p^n
  uint64_t cardinality() const { return pn_ * pn_; }
  uint64_t f0() const { return f0_; }
  uint64_t f1() const { return f1_; }

  uint64_t zero() const { return 0; }
  uint64_t one() const { return 1; }
  uint64_t encode(uint64_t a, uint64_t b) const;
  uint64_t const_part(uint64_t u) const { return u % pn_; }
  uint64_t omega_part(uint64_t u) const { return u / pn_; }
  uint64_t add(uint64_t u, uint64_t v) const;
  uint64_t mul(uint64_t u, uint64_t v) const;
  uint64_t pow(uint64_t u, const mpz_class& e) const;
  uint64_t conj(uint64_t u) const;   // the order-2 ring automorphism
  uint64_t norm(uint64_t u) const;   // u * conj(u), as a residue mod p^n
  bool is_unit(uint64_t u) const;
  const std::vector<uint64_t>& units() const { return units_; }

  // sorted image of the e-th power map on the unit group
  std::vector<uint64_t> power_subgroup(const mpz_class& e) const;
  // primary prime-power multiset of an abelian subgroup, from order statistics
  std::vector<mpz_class> subgroup_invariants(const std::vector<uint64_t>& subgroup) const;

private:
  UnitGroupModel() = default;
  uint64_t p_ = 0, pn_ = 0, f0_ = 0, f1_ = 0;
  unsigned n_ = 1;
  std::vector<uint64_t> units_;
};

// split a list of cyclic-factor sizes into the multiset of prime powers
std::vector<mpz_class> primary_decomposition(const std::vector<mpz_class>& invariants);

}  // namespace bogocert

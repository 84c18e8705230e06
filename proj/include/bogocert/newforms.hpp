#pragma once

#include <bogocert/heights.hpp>
#include <bogocert/lmfdb.hpp>
#include <bogocert/localfields.hpp>
#include <bogocert/numberfield.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bogocert {

// The requested route does not apply to this input (e.g. the prime has no
// degree-1 unramified factor in the coefficient field).
struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A normalized eigenform record: level, weight, character table, coefficient
// field, and q-expansion coefficients up to a stated bound.
struct NewformRecord {
  std::string label;
  uint64_t level = 0;
  uint64_t weight = 0;
  uint64_t char_conductor = 0;
  uint64_t char_order = 0;
  FieldPtr hecke_field;
  std::map<uint64_t, FieldElement> char_values;  // unit residues mod conductor
  uint64_t an_bound = 0;
  std::map<uint64_t, FieldElement> an;
  bool cm = false;

  // Parse + validate: a_1 = 1, character values are roots of unity of joint
  // order char_order, and the character table is multiplicative.
  static NewformRecord from_payload(const std::string& payload);

  unsigned hecke_degree() const;
  const FieldElement& coefficient(uint64_t n) const;  // throws DataUnavailable
  FieldElement char_value(uint64_t m) const;          // m coprime to conductor

  // Exponents of the character on ascending unit residues mod the conductor,
  // lex-minimized over Galois twists; independent of the chosen root of unity.
  std::vector<unsigned> char_orbit_exponents() const;
  QuerySpec newspace_query(uint64_t level) const;
};

// Evidence that the mod-p representation is irreducible with full special
// linear image: an irreducible Frobenius characteristic polynomial plus empty
// new subspaces at every admissible lower level.
struct BigImageEvidence {
  uint64_t p = 0;
  uint64_t root = 0;  // degree-1 factor of p in the coefficient field
  uint64_t r = 0;     // auxiliary prime, r not dividing p*level
  uint64_t charpoly_b = 0, charpoly_c = 0;  // X^2 - bX + c over F_p
  bool irreducible = false;
  uint64_t l = 0;  // exact-level prime used for the lower-level descent
  std::vector<std::pair<uint64_t, uint64_t>> lower_dims;  // (level, dim_new)
  bool lower_level_empty = false;

  bool positive() const { return irreducible && lower_level_empty; }
};

struct AssumptionReport {
  uint64_t p = 0;
  bool P0 = false;  // p does not divide the level
  bool P1 = false;  // a_p = 0
  bool P3 = false;  // p >= 5, p and (p+1)/2 both avoid k-1
  PrimeFactorization splitting;
  std::optional<BigImageEvidence> P2;

  bool verdict() const { return P0 && P1 && P3 && P2 && P2->positive(); }
};

// Evaluate P0/P1/P3 exactly and record the splitting of p; P2 is left to
// mascot_diamond_check. Rejects records flagged with complex multiplication.
AssumptionReport check_assumption1(const NewformRecord& rec, uint64_t p);

// (b, c) with X^2 - bX + c the image of the degree-r Frobenius characteristic
// polynomial X^2 - a_r X + eps(r) r^{k-1} along the degree-1 factor (p, root).
std::pair<uint64_t, uint64_t> frobenius_charpoly(const NewformRecord& rec, uint64_t r,
                                                 uint64_t p, uint64_t root);

// X^2 - bX + c irreducible over F_p (odd p): discriminant is a non-square.
bool irreducible_quadratic(uint64_t b, uint64_t c, uint64_t p);

// Weight-2 big-image route: irreducible Frobenius charpoly at (p, root) plus
// empty new subspaces at every level M with conductor | M | level/l, where l
// exactly divides the level and avoids p and the conductor.
BigImageEvidence mascot_diamond_check(const NewformRecord& rec, uint64_t p, uint64_t r,
                                      uint64_t l, LmfdbClient& client);

struct FiltrationRow {
  unsigned n = 1;
  mpz_class last_break;  // i_n
  mpz_class tail_order;  // order of the last nontrivial ramification subgroup
};

struct Certificate {
  std::string label;
  uint64_t p = 0;
  uint64_t root = 0;
  AssumptionReport report;
  uint64_t bottom_degree = 0;             // delta(p, k)
  std::vector<FiltrationRow> filtration;  // levels 1..3
  mpz_class C1;                           // p^2
  mpz_class C2;                           // p^(4 * coefficient-field degree)
  mpz_class central_g;                    // 2^(2(p-1))
  mpz_class lambda;
  std::string c_closed;
  double c_log10 = 0.0;
  std::optional<HeightValue> c_value;
  bool verdict = false;
};

// Stable-field-order structured rendering; reruns are byte-identical.
std::string certificate_json(const Certificate& cert);

struct PrimeScanFailure {
  uint64_t p = 0;
  std::string reason;
};

struct CertifyResult {
  std::optional<Certificate> certificate;
  std::vector<PrimeScanFailure> failures;  // one entry per rejected prime
};

// Deterministic scan: smallest qualifying prime p <= p_bound, then smallest
// admissible exact-level prime l with empty lower levels, then smallest
// auxiliary prime r with irreducible charpoly. Rejects CM records.
CertifyResult certify(const NewformRecord& rec, uint64_t p_bound, LmfdbClient& client);

// ---- bundled reference table ----

struct TableRow {
  std::string label;
  uint64_t level = 0;
  std::string field_name;  // "Q(i)", "Q(sqrt(-3))", "Q(zeta_8)"
  uint64_t conductor = 0;
  uint64_t r = 0;
  uint64_t p = 0;
  long charpoly_c = 0;  // X^2 + c with c = r * eps(r) (a_r = 0 throughout)
};

struct TableRowReport {
  TableRow published;
  TableRow computed;
  std::vector<std::string> mismatches;  // "field: published -> computed"
  bool checks_passed = false;  // a_p = a_r = 0, eps(r) = ±1, irreducible mod p
};

struct TableReport {
  std::vector<TableRowReport> rows;
  bool all_match() const;     // no row diverges from the published values
  bool all_verified() const;  // every row's computed data passes all checks
};

const std::vector<TableRow>& reference_table();

// Re-derive every reference row from fixtures: verify the published values,
// correct any field that fails verification (deterministically: smallest
// qualifying replacement), and report the diffs.
TableReport reproduce_table(LmfdbClient& client);

std::string quadratic_str(long c);           // "X^2-11", "X^2+83", "X^2"
std::string table_text(const TableReport&);  // human-readable rendering

}  // namespace bogocert

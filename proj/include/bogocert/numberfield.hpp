#pragma once

#include <bogocert/intpoly.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bogocert {

enum class FieldKind { cyclotomic, quadratic, generic };

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a number field in the power basis of the defining polynomial.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<mpq_class> coords);

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;          // all coords beyond the first vanish
  mpq_class rational_value() const;  // valid iff is_rational()

  FieldElement inverse() const;  // throws on zero
  FieldElement pow(long e) const;
  std::string str() const;

  friend FieldElement operator+(const FieldElement&, const FieldElement&);
  friend FieldElement operator-(const FieldElement&, const FieldElement&);
  friend FieldElement operator*(const FieldElement&, const FieldElement&);
  friend FieldElement operator/(const FieldElement&, const FieldElement&);
  friend FieldElement operator-(const FieldElement&);
  friend bool operator==(const FieldElement&, const FieldElement&);
  friend bool operator!=(const FieldElement&, const FieldElement&);

 private:
  FieldPtr field_;
  std::vector<mpq_class> coords_;
};

// Number field Q[x]/(f) with f monic irreducible of degree <= 8.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  static FieldPtr cyclotomic_field(unsigned m);  // Q(zeta_m), phi(m) <= 8
  static FieldPtr quadratic_field(long d);       // Q(sqrt(d)), d squarefree, not 0 or 1
  static FieldPtr generic_field(IntPoly f);      // monic, degree 1..8, irreducible

  const IntPoly& defining_poly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  FieldKind kind() const { return kind_; }
  unsigned cyclotomic_order() const;  // valid iff kind()==cyclotomic
  std::string str() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;
  FieldElement from_rational(const mpq_class& q) const;
  FieldElement element(std::vector<mpq_class> coords) const;

 private:
  NumberField(IntPoly f, FieldKind k, unsigned m);

  IntPoly poly_;
  FieldKind kind_;
  unsigned cyc_m_ = 0;
};

struct PrimeFactor {
  int e;  // ramification signal: multiplicity of the factor mod p
  int f;  // residual degree
  std::optional<uint64_t> root;  // present iff f == 1
};

struct PrimeFactorization {
  uint64_t p;
  std::vector<PrimeFactor> factors;  // degree-1 factors first (root ascending),
                                     // then by (f, e)
};

// Factor the defining polynomial mod p and read off (e, f, root) data.
PrimeFactorization splitting_type(const NumberField& field, uint64_t p);

// Reduction along a degree-1 prime (p, root): evaluate the power-basis coords
// at root mod p. Throws if any coordinate denominator is divisible by p.
uint64_t residue_image(const FieldElement& x, uint64_t p, uint64_t root);

// Galois action on a cyclotomic field: zeta_m -> zeta_m^exponent.
class AbelianAutomorphism {
 public:
  AbelianAutomorphism(FieldPtr field, unsigned exponent);

  unsigned exponent() const { return exponent_; }
  const FieldPtr& field() const { return field_; }
  FieldElement apply(const FieldElement& x) const;

 private:
  FieldPtr field_;
  unsigned exponent_;
  std::vector<FieldElement> basis_images_;  // image of zeta^j for j < degree
};

// Least-degree monic rational annihilator, cleared to primitive integer form
// with positive leading coefficient.
IntPoly minimal_polynomial(const FieldElement& x);

// Multiplicative order if x is a root of unity (order <= 30 suffices for
// degree <= 8), otherwise nullopt.
std::optional<unsigned> torsion_order(const FieldElement& x);

// Discriminant of a polynomial via the Sylvester resultant of (f, f').
mpz_class poly_discriminant(const IntPoly& f);

// Certified complex enclosure of one conjugate of an algebraic number.
// The midpoint is exact (dyadic rational); re/im are rounded double views.
struct EmbeddingBox {
  mpq_class re_exact;
  mpq_class im_exact;
  double re;
  double im;
  int err_exp2;  // |true value - (re_exact + i*im_exact)| <= 2^err_exp2
};

// One enclosure per root of the minimal polynomial of x, sorted by exact
// (re, im), each certified to |error| <= 2^(1 - precision). precision >= 64.
std::vector<EmbeddingBox> complex_embeddings(const FieldElement& x, unsigned precision);

// Certified enclosure of log M(f) = log|lead| + sum log max(1, |root|),
// with hi - lo < target_width. f nonzero, not constant.
void mahler_log_interval(const IntPoly& f, double target_width, double& lo, double& hi);

}  // namespace bogocert

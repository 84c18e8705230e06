#pragma once

#include <bogocert/numberfield.hpp>

#include <optional>
#include <string>

namespace bogocert {

// Certified interval around a height, natural-log units.
struct HeightValue {
  double lower;
  double upper;
};

// Logarithmic Weil height of a nonzero algebraic number, computed through the
// Mahler measure of its minimal polynomial:
//   h(x) = (1/deg) * (log|lead| + sum over roots of log max(1, |root|)).
// The returned interval has width < 1e-10; roots of unity give upper < 1e-10.
HeightValue weil_height(const FieldElement& x);

struct BoundParams {
  unsigned a = 1;            // >= 1
  unsigned b = 1;            // >= 1
  double rho = 1.0;          // > 0
  unsigned s_size = 1;       // |S| >= 1
  mpq_class degree_ratio;    // in (0, 1]
  uint64_t p = 2;
};

// (1/(a+b)) * (|S| * degree_ratio * rho * log p - log 2); may be <= 0.
double lower_bound(const BoundParams& params);

// lambda-fold iterate of s -> min(p*s, s+1) starting from rho (exact).
mpq_class accelerate(uint64_t p, const mpq_class& rho, const mpz_class& lambda);

// beta = tau(x) / x^g for integer g > 1; rejects x = 0 and roots of unity.
// Satisfies h(x) >= h(beta)/(g+1) and beta is never a root of unity.
FieldElement special_element(const FieldElement& x, const AbelianAutomorphism& tau, long g);

struct BogomolovConstant {
  uint64_t p;
  mpq_class C1;
  mpz_class C2;
  mpz_class lambda;                     // minimal with accelerate(p, 1/C1, lambda) >= C2
  std::string c_closed;                 // "log(p/2)/(2*p^lambda)"
  double c_log10;                       // log10 of c (well-defined even for huge lambda)
  std::optional<HeightValue> c_value;   // numeric interval when p^lambda fits a double
};

// lambda = min{ l >= 0 : accelerate(p, 1/C1, l) >= C2 }, c = log(p/2)/(2*p^lambda).
BogomolovConstant bogomolov_constant(uint64_t p, const mpq_class& C1, const mpz_class& C2);

}  // namespace bogocert

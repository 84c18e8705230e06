#include <bogocert/numberfield.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bogocert {

namespace {

using QVec = std::vector<mpq_class>;

QVec qp_trim(QVec v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

QVec qp_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qp_trim(std::move(r));
}

// remainder of a modulo m (m need not be monic)
QVec qp_rem(QVec a, const QVec& m) {
  while (a.size() >= m.size()) {
    mpq_class coef = a.back() / m.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[shift + i] -= coef * m[i];
    a.pop_back();
    a = qp_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// s with s*a == gcd(a, m) mod m; for irreducible m and a nonzero mod m the
// gcd is a unit, so s/gcd is the inverse of a
QVec qp_invmod(const QVec& a, const QVec& m) {
  QVec r0 = m, r1 = qp_trim(a);
  QVec s0 = {}, s1 = {mpq_class(1)};
  while (!r1.empty()) {
    // quotient of r0 by r1
    QVec q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    QVec rem = r0;
    while (rem.size() >= r1.size()) {
      mpq_class coef = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] = coef;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= coef * r1[i];
      rem = qp_trim(std::move(rem));
      if (rem.empty()) break;
    }
    QVec s2 = s0;
    {
      QVec qs = qp_mul(qp_trim(std::move(q)), s1);
      if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      s2 = qp_trim(std::move(s2));
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::domain_error("element not invertible (defining polynomial not irreducible?)");
  for (auto& c : s0) c /= r0[0];
  return s0;
}

QVec poly_to_q(const IntPoly& f) {
  QVec v(f.coeffs().size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = mpq_class(f[i]);
  return v;
}

// reduce v in place modulo the monic defining polynomial
void reduce_mod_field(QVec& v, const IntPoly& f) {
  size_t d = static_cast<size_t>(f.degree());
  for (size_t i = v.size(); i-- > d;) {
    mpq_class coef = v[i];
    if (coef == 0) continue;
    v[i] = 0;
    for (size_t j = 0; j < d; ++j) v[i - d + j] -= coef * mpq_class(f[j]);
  }
  v.resize(d, 0);
}

// Rejection is best-effort: rational roots and square factors are detected,
// anything subtler stays the caller's contract (full factorization over Q is
// out of scope).
bool proven_reducible(const IntPoly& f) {
  int d = f.degree();
  if (d <= 1) return false;
  // rational root test (f monic: integer roots divide the constant term)
  mpz_class a0 = f[0];
  if (a0 == 0) return true;
  mpz_class m = abs(a0);
  for (mpz_class t = 1; t * t <= m && t <= 1000000; ++t) {
    if (m % t != 0) continue;
    for (const mpz_class& cand : {mpz_class(t), mpz_class(m / t)})
      for (int sign : {1, -1})
        if (f.eval(sign * cand) == 0) return true;
  }
  // square factor over Q
  return poly_discriminant(f) == 0;
}

unsigned euler_phi(unsigned m) {
  unsigned r = m;
  for (unsigned q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      r -= r / q;
      while (m % q == 0) m /= q;
    }
  if (m > 1) r -= r / m;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<mpq_class> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw std::invalid_argument("element needs a field");
  for (auto& c : coords_) c.canonicalize();  // tolerate non-canonical caller input
  size_t d = static_cast<size_t>(field_->degree());
  if (coords_.size() > d) {
    reduce_mod_field(coords_, field_->defining_poly());
  }
  coords_.resize(d, 0);
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

mpq_class FieldElement::rational_value() const {
  if (!is_rational()) throw std::domain_error("element is not rational");
  return coords_.empty() ? mpq_class(0) : coords_[0];
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field().get() != b.field().get() &&
      !(a.field() && b.field() &&
        a.field()->defining_poly() == b.field()->defining_poly()))
    throw std::invalid_argument("elements of different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  QVec r = a.coords_;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b.coords_[i];
  return FieldElement(a.field_, std::move(r));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  QVec r = a.coords_;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b.coords_[i];
  return FieldElement(a.field_, std::move(r));
}

FieldElement operator-(const FieldElement& a) {
  QVec r = a.coords_;
  for (auto& c : r) c = -c;
  return FieldElement(a.field_, std::move(r));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  QVec r = qp_mul(a.coords_, b.coords_);
  reduce_mod_field(r, a.field_->defining_poly());
  return FieldElement(a.field_, std::move(r));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  QVec inv = qp_invmod(coords_, poly_to_q(field_->defining_poly()));
  reduce_mod_field(inv, field_->defining_poly());
  return FieldElement(field_, std::move(inv));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inverse();
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r = field_->one();
  FieldElement base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return a.coords_ == b.coords_;
}

bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

std::string FieldElement::str() const {
  std::string s;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coords_[i].get_str();
    if (i > 0) s += "*t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// NumberField
// ---------------------------------------------------------------------------

NumberField::NumberField(IntPoly f, FieldKind k, unsigned m)
    : poly_(std::move(f)), kind_(k), cyc_m_(m) {}

FieldPtr NumberField::cyclotomic_field(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  if (euler_phi(m) > 8) throw std::invalid_argument("field degree above 8");
  return FieldPtr(new NumberField(cyclotomic(m), FieldKind::cyclotomic, m));
}

FieldPtr NumberField::quadratic_field(long d) {
  if (d == 0 || d == 1) throw std::invalid_argument("d must not be 0 or 1");
  long ad = d < 0 ? -d : d;
  for (long q = 2; q * q <= ad; ++q)
    if (d % (q * q) == 0) throw std::invalid_argument("d must be squarefree");
  return FieldPtr(new NumberField(IntPoly::from_ints({-d, 0, 1}), FieldKind::quadratic, 0));
}

FieldPtr NumberField::generic_field(IntPoly f) {
  if (f.degree() < 1 || f.degree() > 8) throw std::invalid_argument("degree must be 1..8");
  if (!f.is_monic()) throw std::invalid_argument("defining polynomial must be monic");
  if (f.degree() > 1 && proven_reducible(f))
    throw std::invalid_argument("defining polynomial is reducible");
  return FieldPtr(new NumberField(std::move(f), FieldKind::generic, 0));
}

unsigned NumberField::cyclotomic_order() const {
  if (kind_ != FieldKind::cyclotomic) throw std::domain_error("not a cyclotomic field");
  return cyc_m_;
}

std::string NumberField::str() const {
  switch (kind_) {
    case FieldKind::cyclotomic:
      return "Q(zeta_" + std::to_string(cyc_m_) + ")";
    case FieldKind::quadratic: {
      mpz_class d = -poly_[0];
      return "Q(sqrt(" + d.get_str() + "))";
    }
    default:
      return "Q[t]/(" + poly_.str("t") + ")";
  }
}

FieldElement NumberField::zero() const { return element({}); }

FieldElement NumberField::one() const { return element({mpq_class(1)}); }

FieldElement NumberField::generator() const {
  if (degree() == 1) {
    // t is congruent to the rational root of the linear defining polynomial
    mpq_class root(-poly_[0], poly_[1]);
    root.canonicalize();
    return element({root});
  }
  return element({mpq_class(0), mpq_class(1)});
}

FieldElement NumberField::from_rational(const mpq_class& q) const { return element({q}); }

FieldElement NumberField::element(std::vector<mpq_class> coords) const {
  return FieldElement(shared_from_this(), std::move(coords));
}

// ---------------------------------------------------------------------------
// splitting, residue maps, automorphisms
// ---------------------------------------------------------------------------

PrimeFactorization splitting_type(const NumberField& field, uint64_t p) {
  auto fs = factor_mod_p(field.defining_poly(), p);
  PrimeFactorization out{p, {}};
  for (auto& fac : fs) {
    PrimeFactor pf;
    pf.e = fac.mult;
    pf.f = static_cast<int>(fac.poly.size()) - 1;
    if (pf.f == 1) pf.root = (p - fac.poly[0] % p) % p;
    out.factors.push_back(pf);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimeFactor& a, const PrimeFactor& b) {
              if (a.f != b.f) return a.f < b.f;
              if (a.e != b.e) return a.e < b.e;
              return a.root.value_or(0) < b.root.value_or(0);
            });
  return out;
}

uint64_t residue_image(const FieldElement& x, uint64_t p, uint64_t root) {
  const IntPoly& f = x.field()->defining_poly();
  {
    mpz_class chk = f.eval(mpz_class(static_cast<unsigned long>(root % p)));
    if (mpz_fdiv_ui(chk.get_mpz_t(), static_cast<unsigned long>(p)) != 0)
      throw std::invalid_argument("(p, root) is not a degree-1 factor of the defining polynomial");
  }
  uint64_t acc = 0;
  uint64_t pw = 1;
  for (const auto& c : x.coords()) {
    uint64_t num = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p));
    uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), static_cast<unsigned long>(p));
    if (den == 0) throw std::invalid_argument("coordinate denominator divisible by p");
    uint64_t term = (__uint128_t)num * powmod_u64(den, p - 2, p) % p;
    acc = (acc + (__uint128_t)term * pw) % p;
    pw = (__uint128_t)pw * (root % p) % p;
  }
  return acc;
}

AbelianAutomorphism::AbelianAutomorphism(FieldPtr field, unsigned exponent)
    : field_(std::move(field)) {
  if (!field_ || field_->kind() != FieldKind::cyclotomic)
    throw std::invalid_argument("automorphisms need a cyclotomic field");
  unsigned m = field_->cyclotomic_order();
  exponent_ = exponent % m;
  if (exponent_ == 0) exponent_ = m == 1 ? 1 : 0;
  if (std::gcd(exponent_, m) != 1)
    throw std::invalid_argument("exponent must be coprime to the cyclotomic order");
  // images of the power basis: zeta^j -> zeta^(j*a mod m)
  std::vector<FieldElement> zeta_pow;
  zeta_pow.reserve(m);
  FieldElement cur = field_->one();
  FieldElement g = field_->generator();
  for (unsigned t = 0; t < m; ++t) {
    zeta_pow.push_back(cur);
    cur = cur * g;
  }
  unsigned d = static_cast<unsigned>(field_->degree());
  basis_images_.reserve(d);
  for (unsigned j = 0; j < d; ++j)
    basis_images_.push_back(zeta_pow[(static_cast<unsigned long>(j) * exponent_) % m]);
}

FieldElement AbelianAutomorphism::apply(const FieldElement& x) const {
  if (x.field().get() != field_.get() &&
      x.field()->defining_poly() != field_->defining_poly())
    throw std::invalid_argument("element of a different field");
  FieldElement acc = field_->zero();
  for (size_t j = 0; j < x.coords().size(); ++j) {
    if (x.coords()[j] == 0) continue;
    acc = acc + field_->from_rational(x.coords()[j]) * basis_images_[j];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// minimal polynomial, torsion, discriminant
// ---------------------------------------------------------------------------

IntPoly minimal_polynomial(const FieldElement& x) {
  size_t d = static_cast<size_t>(x.field()->degree());
  // reduced echelon basis of the span of 1, x, x^2, ... with tracked
  // combinations; the first power that reduces to zero yields the dependency
  std::vector<QVec> basis;   // echelon rows, length d
  std::vector<QVec> combo;   // same length as basis; coefficients over powers
  std::vector<size_t> lead;  // pivot column of each basis row

  FieldElement pw = x.field()->one();
  for (size_t k = 0; k <= d; ++k) {
    QVec row = pw.coords();
    QVec cmb(k + 1, 0);
    cmb[k] = 1;
    for (size_t r = 0; r < basis.size(); ++r) {
      if (row[lead[r]] == 0) continue;
      mpq_class f = row[lead[r]] / basis[r][lead[r]];
      for (size_t i = 0; i < d; ++i) row[i] -= f * basis[r][i];
      if (combo[r].size() > cmb.size()) cmb.resize(combo[r].size(), 0);
      for (size_t i = 0; i < combo[r].size(); ++i) cmb[i] -= f * combo[r][i];
    }
    size_t piv = d;
    for (size_t i = 0; i < d; ++i)
      if (row[i] != 0) {
        piv = i;
        break;
      }
    if (piv == d) {
      // x^k = -sum of lower powers; cmb gives the annihilator
      cmb.resize(k + 1, 0);
      mpz_class den = 1;
      for (auto& c : cmb) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      std::vector<mpz_class> ic(cmb.size());
      for (size_t i = 0; i < cmb.size(); ++i) {
        mpq_class scaled = cmb[i] * mpq_class(den);
        ic[i] = scaled.get_num();
      }
      return IntPoly(std::move(ic)).primitive();
    }
    basis.push_back(std::move(row));
    combo.push_back(std::move(cmb));
    lead.push_back(piv);
    pw = pw * x;
  }
  throw std::logic_error("no dependency among d+1 powers");
}

std::optional<unsigned> torsion_order(const FieldElement& x) {
  if (x.is_zero()) return std::nullopt;
  FieldElement cur = x;
  const FieldElement one = x.field()->one();
  for (unsigned m = 1; m <= 30; ++m) {
    if (cur == one) return m;
    cur = cur * x;
  }
  return std::nullopt;
}

mpz_class poly_discriminant(const IntPoly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (d == 1) return 1;
  IntPoly df = f.derivative();
  // resultant via Bareiss fraction-free elimination on the Sylvester matrix
  int n = d + (d - 1);
  std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n, 0));
  for (int r = 0; r < d - 1; ++r)
    for (int i = 0; i <= d; ++i) M[r][r + i] = f[d - i];
  for (int r = 0; r < d; ++r)
    for (int i = 0; i <= d - 1; ++i) M[d - 1 + r][r + i] = df[d - 1 - i];
  mpz_class denom = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (M[r][k] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;  // resultant zero: common factor
      std::swap(M[k], M[swap]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) M[r][c] = (M[k][k] * M[r][c] - M[r][k] * M[k][c]) / denom;
      M[r][k] = 0;
    }
    denom = M[k][k];
  }
  mpz_class res = sign * M[n - 1][n - 1];
  // disc = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)
  mpz_class disc = res / f.lead();
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace bogocert

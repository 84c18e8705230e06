#include <bogocert/finitering.hpp>

#include <sstream>
#include <stdexcept>

namespace bogocert {

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t checked_pow(uint64_t base, unsigned exp, const char* what) {
  uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) throw std::overflow_error(what);
    r *= base;
  }
  return r;
}

// inverse of a mod m for gcd(a, m) = 1
uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t qt = r / newr;
    int64_t tmp = t - qt * newt;
    t = newt;
    newt = tmp;
    tmp = r - qt * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("element is not a unit");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

}  // namespace

FpPoly least_irreducible(uint64_t p, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  if (degree == 1) return FpPoly{0, 1};  // x itself: F_p[x]/(x) = F_p
  // odometer over (c_0, ..., c_{d-1}) with the LAST coordinate moving fastest,
  // so tuples are visited in ascending lex order with c_0 most significant
  std::vector<uint64_t> c(degree, 0);
  for (;;) {
    std::vector<mpz_class> z(degree + 1);
    for (unsigned i = 0; i < degree; ++i) z[i] = c[i];
    z[degree] = 1;
    IntPoly f{std::move(z)};
    if (irreducible_mod_p(f, p)) {
      FpPoly out(c.begin(), c.end());
      out.push_back(1);
      return out;
    }
    int i = static_cast<int>(degree) - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == p - 1) {
      c[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) throw std::logic_error("no irreducible found");  // cannot happen
    ++c[static_cast<size_t>(i)];
  }
}

RingPtr FiniteRing::zmod_pn(uint64_t p, unsigned n) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->kind_ = RingKind::ZmodPn;
  r->p_ = p;
  r->n_ = n;
  r->card_ = checked_pow(p, n, "p^n does not fit in 64 bits");
  r->one_ = r->card_ > 1 ? 1 : 0;
  return r;
}

RingPtr FiniteRing::product_field(uint64_t p, std::vector<unsigned> degrees) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (degrees.empty()) throw std::invalid_argument("need at least one component");
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->kind_ = RingKind::ProductField;
  r->p_ = p;
  r->n_ = 1;
  r->degrees_ = std::move(degrees);
  r->card_ = 1;
  for (unsigned f : r->degrees_) {
    if (f == 0) throw std::invalid_argument("component degree must be positive");
    uint64_t cc = checked_pow(p, f, "component size does not fit in 64 bits");
    if (r->card_ > UINT64_MAX / cc) throw std::overflow_error("ring size does not fit in 64 bits");
    r->comp_card_.push_back(cc);
    r->card_ *= cc;
    r->moduli_.push_back(least_irreducible(p, f));
  }
  std::vector<uint64_t> ones(r->comp_card_.size(), 1);
  r->one_ = r->join(ones);
  return r;
}

bool FiniteRing::same_ring(const FiniteRing& o) const {
  return kind_ == o.kind_ && p_ == o.p_ && n_ == o.n_ && degrees_ == o.degrees_;
}

bool FiniteRing::is_fp_algebra() const {
  return kind_ == RingKind::ProductField || n_ == 1;
}

unsigned FiniteRing::fp_dimension() const {
  if (!is_fp_algebra()) throw std::domain_error("not an F_p-algebra");
  if (kind_ == RingKind::ZmodPn) return 1;
  unsigned d = 0;
  for (unsigned f : degrees_) d += f;
  return d;
}

uint64_t FiniteRing::unit_count() const {
  if (kind_ == RingKind::ZmodPn) return card_ / p_ * (p_ - 1);
  uint64_t u = 1;
  for (uint64_t cc : comp_card_) u *= cc - 1;
  return u;
}

std::string FiniteRing::str() const {
  std::ostringstream os;
  if (kind_ == RingKind::ZmodPn) {
    os << "Z/" << p_;
    if (n_ > 1) os << "^" << n_;
  } else {
    for (size_t i = 0; i < comp_card_.size(); ++i) {
      if (i) os << " x ";
      os << "F_" << comp_card_[i];
    }
  }
  return os.str();
}

std::vector<uint64_t> FiniteRing::split(uint64_t a) const {
  std::vector<uint64_t> c(comp_card_.size());
  for (size_t i = 0; i < comp_card_.size(); ++i) {
    c[i] = a % comp_card_[i];
    a /= comp_card_[i];
  }
  return c;
}

uint64_t FiniteRing::join(const std::vector<uint64_t>& c) const {
  uint64_t a = 0;
  for (size_t i = comp_card_.size(); i-- > 0;) a = a * comp_card_[i] + c[i];
  return a;
}

uint64_t FiniteRing::from_int(long v) const {
  if (kind_ == RingKind::ZmodPn) {
    int64_t m = static_cast<int64_t>(card_);
    int64_t r = static_cast<int64_t>(v % m);
    if (r < 0) r += m;
    return static_cast<uint64_t>(r);
  }
  int64_t m = static_cast<int64_t>(p_);
  int64_t r = static_cast<int64_t>(v % m);
  if (r < 0) r += m;
  std::vector<uint64_t> c(comp_card_.size(), static_cast<uint64_t>(r));
  return join(c);
}

uint64_t FiniteRing::add(uint64_t a, uint64_t b) const {
  if (kind_ == RingKind::ZmodPn) {
    uint64_t s = a + b;  // card_ <= 2^63 is not guaranteed; go through 128 bits
    return (static_cast<__uint128_t>(a) + b) >= card_ ? s - card_ : s;
  }
  auto ca = split(a), cb = split(b);
  for (size_t i = 0; i < ca.size(); ++i) {
    // digitwise base-p addition of the two polynomial encodings
    uint64_t x = ca[i], y = cb[i], out = 0, mult = 1;
    while (x || y) {
      out += mult * ((x % p_ + y % p_) % p_);
      x /= p_;
      y /= p_;
      mult *= p_;
    }
    ca[i] = out;
  }
  return join(ca);
}

uint64_t FiniteRing::neg(uint64_t a) const {
  if (kind_ == RingKind::ZmodPn) return a == 0 ? 0 : card_ - a;
  auto c = split(a);
  for (auto& comp : c) {
    uint64_t x = comp, out = 0, mult = 1;
    while (x) {
      uint64_t d = x % p_;
      out += mult * (d ? p_ - d : 0);
      x /= p_;
      mult *= p_;
    }
    comp = out;
  }
  return join(c);
}

uint64_t FiniteRing::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FiniteRing::mul(uint64_t a, uint64_t b) const {
  if (kind_ == RingKind::ZmodPn) return mulmod_u64(a, b, card_);
  auto ca = split(a), cb = split(b);
  for (size_t i = 0; i < ca.size(); ++i) {
    FpPoly x, y;
    for (uint64_t v = ca[i]; v; v /= p_) x.push_back(v % p_);
    for (uint64_t v = cb[i]; v; v /= p_) y.push_back(v % p_);
    FpPoly z = fp_mod(fp_mul(x, y, p_), moduli_[i], p_);
    uint64_t out = 0;
    for (size_t j = z.size(); j-- > 0;) out = out * p_ + z[j];
    ca[i] = out;
  }
  return join(ca);
}

bool FiniteRing::is_unit(uint64_t a) const {
  if (kind_ == RingKind::ZmodPn) return a % p_ != 0;
  for (uint64_t comp : split(a))
    if (comp == 0) return false;
  return true;
}

uint64_t FiniteRing::inverse(uint64_t a) const {
  if (!is_unit(a)) throw std::domain_error("element is not a unit");
  if (kind_ == RingKind::ZmodPn) return inv_mod_u64(a, card_);
  auto c = split(a);
  for (size_t i = 0; i < c.size(); ++i) {
    FpPoly x;
    for (uint64_t v = c[i]; v; v /= p_) x.push_back(v % p_);
    // field component: a^(p^f - 2) is the inverse
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p_), degrees_[i]);
    e -= 2;
    FpPoly z = fp_powmod(x, e, moduli_[i], p_);
    uint64_t out = 0;
    for (size_t j = z.size(); j-- > 0;) out = out * p_ + z[j];
    c[i] = out;
  }
  return join(c);
}

bool FiniteRing::in_prime_subring(uint64_t a) const {
  if (kind_ == RingKind::ZmodPn) return true;
  auto c = split(a);
  for (uint64_t comp : c)
    if (comp >= p_) return false;  // a non-constant polynomial in some component
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != c[0]) return false;
  return true;
}

std::vector<uint64_t> FiniteRing::fp_coords(uint64_t a) const {
  if (!is_fp_algebra()) throw std::domain_error("not an F_p-algebra");
  if (kind_ == RingKind::ZmodPn) return {a};
  std::vector<uint64_t> out;
  auto c = split(a);
  for (size_t i = 0; i < c.size(); ++i) {
    uint64_t v = c[i];
    for (unsigned j = 0; j < degrees_[i]; ++j) {
      out.push_back(v % p_);
      v /= p_;
    }
  }
  return out;
}

uint64_t FiniteRing::from_fp_coords(const std::vector<uint64_t>& coords) const {
  if (!is_fp_algebra()) throw std::domain_error("not an F_p-algebra");
  if (coords.size() != fp_dimension()) throw std::invalid_argument("coordinate count mismatch");
  if (kind_ == RingKind::ZmodPn) return coords[0] % p_;
  std::vector<uint64_t> c(comp_card_.size(), 0);
  size_t pos = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    uint64_t v = 0;
    for (size_t j = degrees_[i]; j-- > 0;) v = v * p_ + coords[pos + j] % p_;
    c[i] = v;
    pos += degrees_[i];
  }
  return join(c);
}

std::vector<uint64_t> FiniteRing::fp_basis() const {
  unsigned d = fp_dimension();
  std::vector<uint64_t> out;
  std::vector<uint64_t> coords(d, 0);
  for (unsigned i = 0; i < d; ++i) {
    coords[i] = 1;
    out.push_back(from_fp_coords(coords));
    coords[i] = 0;
  }
  return out;
}

std::string FiniteRing::elem_str(uint64_t a) const {
  if (kind_ == RingKind::ZmodPn) return std::to_string(a);
  std::ostringstream os;
  auto c = split(a);
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    if (degrees_[i] == 1) {
      os << c[i];
    } else {
      FpPoly x;
      for (uint64_t v = c[i]; v; v /= p_) x.push_back(v % p_);
      os << fp_str(x, "w");
    }
  }
  os << ")";
  return os.str();
}

}  // namespace bogocert

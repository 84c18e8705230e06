#include <bogocert/intpoly.hpp>

#include <algorithm>
#include <stdexcept>

namespace bogocert {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::from_ints(const std::vector<long>& v) {
  std::vector<mpz_class> c(v.begin(), v.end());
  return IntPoly(std::move(c));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

mpq_class IntPoly::eval_q(const mpq_class& x) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + mpq_class(*it);
  return r;
}

IntPoly IntPoly::derivative() const {
  std::vector<mpz_class> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * long(i));
  return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return IntPoly();
  mpz_class g = content();
  if (lead() < 0) g = -g;
  std::vector<mpz_class> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x / g);
  return IntPoly(std::move(r));
}

std::string IntPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& a = c_[i];
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (s.empty()) {
      if (a < 0) s += "-";
    } else {
      s += (a < 0) ? " - " : " + ";
    }
    if (i == 0 || mag != 1) s += mag.get_str();
    if (i > 0) {
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < a.coeffs().size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) r[i] += b[i];
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < a.coeffs().size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) r[i] -= b[i];
  return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> r(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] += a[i] * b[j];
  return IntPoly(std::move(r));
}

namespace {
// exact division of integer polynomials (remainder known to vanish)
IntPoly divexact(const IntPoly& num, const IntPoly& den) {
  std::vector<mpz_class> r = num.coeffs();
  std::vector<mpz_class> q(num.coeffs().size() - den.coeffs().size() + 1, 0);
  while (r.size() >= den.coeffs().size() && !(r.size() == 1 && r[0] == 0)) {
    size_t shift = r.size() - den.coeffs().size();
    mpz_class coef = r.back() / den.lead();
    q[shift] = coef;
    for (size_t i = 0; i < den.coeffs().size(); ++i) r[shift + i] -= coef * den[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  return IntPoly(std::move(q));
}
}  // namespace

IntPoly cyclotomic(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
  std::vector<mpz_class> xm(m + 1, 0);
  xm[0] = -1;
  xm[m] = 1;
  IntPoly num{std::move(xm)};
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) num = divexact(num, cyclotomic(d));
  return num;
}

// ---------------------------------------------------------------------------
// F_p layer
// ---------------------------------------------------------------------------

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = static_cast<uint64_t>((__uint128_t)r * base % mod);
    base = static_cast<uint64_t>((__uint128_t)base * base % mod);
    exp >>= 1;
  }
  return r;
}

bool is_square_mod(int64_t a, uint64_t p) {
  int64_t r = a % static_cast<int64_t>(p);
  if (r < 0) r += static_cast<int64_t>(p);
  if (r == 0) return false;
  return powmod_u64(static_cast<uint64_t>(r), (p - 1) / 2, p) == 1;
}

FpPoly fp_trim(FpPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FpPoly fp_reduce(const IntPoly& f, uint64_t p) {
  FpPoly r(f.coeffs().size());
  for (size_t i = 0; i < r.size(); ++i) {
    mpz_class m = f[i] % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    r[i] = m.get_ui();
  }
  return fp_trim(std::move(r));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + (__uint128_t)a[i] * b[j]) % p;
  return fp_trim(std::move(r));
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, uint64_t p) {
  uint64_t inv_lead = powmod_u64(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    uint64_t coef = (__uint128_t)a.back() * inv_lead % p;
    size_t shift = a.size() - m.size();
    if (coef)
      for (size_t i = 0; i < m.size(); ++i) {
        uint64_t sub = (__uint128_t)coef * m[i] % p;
        a[shift + i] = (a[shift + i] + p - sub) % p;
      }
    a.pop_back();
    a = fp_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

FpPoly fp_divexact(FpPoly a, const FpPoly& d, uint64_t p) {
  FpPoly q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, 0);
  uint64_t inv_lead = powmod_u64(d.back(), p - 2, p);
  while (a.size() >= d.size()) {
    uint64_t coef = (__uint128_t)a.back() * inv_lead % p;
    size_t shift = a.size() - d.size();
    q[shift] = coef;
    for (size_t i = 0; i < d.size(); ++i) {
      uint64_t sub = (__uint128_t)coef * d[i] % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    a = fp_trim(std::move(a));
    if (a.empty()) break;
  }
  return fp_trim(std::move(q));
}

FpPoly fp_monic(FpPoly a, uint64_t p) {
  if (a.empty() || a.back() == 1) return a;
  uint64_t inv = powmod_u64(a.back(), p - 2, p);
  for (auto& c : a) c = (__uint128_t)c * inv % p;
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, uint64_t p) {
  FpPoly r = {1};
  FpPoly b = fp_mod(base, m, p);
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = fp_mod(fp_mul(r, b, p), m, p);
    b = fp_mod(fp_mul(b, b, p), m, p);
    k >>= 1;
  }
  return r;
}

std::string fp_str(const FpPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string s;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || f[i] != 1) s += std::to_string(f[i]);
    if (i > 0) {
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

namespace {

FpPoly fp_derivative(const FpPoly& f, uint64_t p) {
  FpPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % p) % p);
  return fp_trim(std::move(d));
}

// squarefree decomposition: list of (g_i, i) with f = prod g_i^i, g_i squarefree.
// Handles the f' = 0 (p-th power) branch, where over F_p the inner polynomial
// keeps the same coefficients at indices divisible by p.
void squarefree_decompose(FpPoly f, uint64_t p, int outer_mult,
                          std::vector<std::pair<FpPoly, int>>& out) {
  f = fp_monic(std::move(f), p);
  if (f.size() <= 1) return;
  FpPoly df = fp_derivative(f, p);
  if (df.empty()) {
    FpPoly g((f.size() - 1) / p + 1);
    for (size_t i = 0; i < g.size(); ++i) g[i] = f[i * p];
    squarefree_decompose(std::move(g), p, outer_mult * static_cast<int>(p), out);
    return;
  }
  FpPoly c = fp_gcd(f, df, p);
  FpPoly w = fp_divexact(f, c, p);  // product of squarefree part
  int i = 1;
  while (w.size() > 1) {
    FpPoly y = fp_gcd(w, c, p);
    FpPoly piece = fp_divexact(w, y, p);  // factors of exact multiplicity i
    if (piece.size() > 1) out.emplace_back(piece, i * outer_mult);
    w = std::move(y);
    c = fp_divexact(c, w, p);
    ++i;
  }
  // leftover c is a p-th power; the recursion's derivative-vanishes branch
  // supplies the extra factor of p in the multiplicity
  if (c.size() > 1) squarefree_decompose(std::move(c), p, outer_mult, out);
}

// distinct-degree then equal-degree split of a squarefree monic polynomial.
void factor_squarefree(const FpPoly& f, uint64_t p, std::vector<FpPoly>& out) {
  FpPoly rem = f;
  // linear factors by exhaustive root scan (desk-scale p)
  for (uint64_t x = 0; x < p && rem.size() > 1; ++x) {
    uint64_t val = 0;
    for (auto it = rem.rbegin(); it != rem.rend(); ++it) val = ((__uint128_t)val * x + *it) % p;
    if (val == 0) out.push_back(FpPoly{(p - x) % p, 1}), rem = fp_divexact(rem, {(p - x) % p, 1}, p);
  }
  if (rem.size() <= 1) return;

  // distinct-degree: rem now has no roots, factors of degree >= 2
  FpPoly h = fp_mod({0, 1}, rem, p);  // x
  mpz_class pz(static_cast<unsigned long>(p));
  for (size_t d = 1; rem.size() > 1 && d <= (rem.size() - 1) / 2 + 1; ++d) {
    h = fp_powmod(h, pz, rem, p);  // x^(p^d) mod rem
    FpPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    FpPoly g = fp_gcd(fp_trim(hx), rem, p);
    if (g.size() > 1) {
      // g = product of the irreducible factors of degree d; split it
      std::vector<FpPoly> stack = {g};
      mpz_class exp;
      mpz_pow_ui(exp.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(d));
      exp = (exp - 1) / 2;
      while (!stack.empty()) {
        FpPoly cur = stack.back();
        stack.pop_back();
        if (cur.size() - 1 == d) {
          out.push_back(cur);
          continue;
        }
        // deterministic split: enumerate probe polynomials v by base-p digits;
        // by CRT every residue tuple mod the factors of cur arises from some v
        // with deg v < deg cur, so a separating probe must appear
        bool split = false;
        for (uint64_t k = p; !split; ++k) {
          FpPoly v;
          for (uint64_t m = k; m; m /= p) v.push_back(m % p);
          if (v.size() >= cur.size()) throw std::runtime_error("equal-degree split failed");
          FpPoly probe;
          if (p == 2) {
            // trace map v + v^2 + ... + v^(2^(d-1)) mod cur
            FpPoly t = fp_mod(v, cur, p);
            FpPoly acc = t;
            FpPoly sq = t;
            for (size_t j = 1; j < d; ++j) {
              sq = fp_mod(fp_mul(sq, sq, p), cur, p);
              FpPoly next(std::max(acc.size(), sq.size()), 0);
              for (size_t i = 0; i < acc.size(); ++i) next[i] ^= acc[i];
              for (size_t i = 0; i < sq.size(); ++i) next[i] ^= sq[i];
              acc = fp_trim(std::move(next));
            }
            probe = acc;
          } else {
            // v^((p^d-1)/2) - 1 mod cur
            probe = fp_powmod(v, exp, cur, p);
            if (probe.empty())
              probe = {p - 1};
            else
              probe[0] = (probe[0] + p - 1) % p;
            probe = fp_trim(std::move(probe));
          }
          FpPoly q = fp_gcd(probe, cur, p);
          if (q.size() > 1 && q.size() < cur.size()) {
            stack.push_back(q);
            stack.push_back(fp_divexact(cur, q, p));
            split = true;
          }
        }
      }
      rem = fp_divexact(rem, g, p);
      h = fp_mod(h, rem, p);
    }
  }
  if (rem.size() > 1) out.push_back(rem);
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const IntPoly& f, uint64_t p) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  if (mpz_divisible_ui_p(f.lead().get_mpz_t(), static_cast<unsigned long>(p)))
    throw std::invalid_argument("leading coefficient vanishes mod p");
  FpPoly fp = fp_reduce(f, p);

  std::vector<std::pair<FpPoly, int>> sf;
  squarefree_decompose(fp, p, 1, sf);

  std::vector<FpFactor> result;
  for (auto& [g, mult] : sf) {
    std::vector<FpPoly> irr;
    factor_squarefree(g, p, irr);
    for (auto& q : irr) result.push_back({fp_monic(std::move(q), p), mult});
  }
  std::sort(result.begin(), result.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(),
                                        b.poly.end());
  });
  return result;
}

bool irreducible_mod_p(const IntPoly& f, uint64_t p) {
  auto fs = factor_mod_p(f, p);
  return fs.size() == 1 && fs[0].mult == 1 &&
         fs[0].poly.size() == f.coeffs().size();
}

}  // namespace bogocert

#include <bogocert/localfields.hpp>

#include <bogocert/finitering.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bogocert {

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class mpz_of(uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class mpz_pow(uint64_t base, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

void validate_pk(uint64_t p, uint64_t k) {
  if (p >= (uint64_t(1) << 31)) throw std::invalid_argument("prime too large");
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (k < 2) throw std::invalid_argument("weight must be at least 2");
}

}  // namespace

uint64_t delta(uint64_t p, uint64_t k) {
  validate_pk(p, k);
  uint64_t q = p * p;
  return (q - 1) / std::gcd(q - 1, k - 1);
}

CrystallineParams CrystallineParams::make(uint64_t p, uint64_t k, unsigned n) {
  validate_pk(p, k);
  if (n < 1) throw std::invalid_argument("level must be at least 1");
  CrystallineParams P;
  P.p = p;
  P.k = k;
  P.q = p * p;
  P.n = n;
  P.delta = bogocert::delta(p, k);
  P.p3_ok = p >= 5 && (k - 1) % p != 0 && (k - 1) % ((p + 1) / 2) != 0;
  return P;
}

GaloisStructure gal_structure(const CrystallineParams& params) {
  if (params.n >= 2 && (params.k - 1) % params.p == 0)
    throw std::invalid_argument("closed form needs p not dividing k-1 above level 1");
  GaloisStructure out;
  mpz_class qn1 = mpz_pow(params.q, params.n - 1);
  mpz_class pn1 = mpz_pow(params.p, params.n - 1);
  out.order = mpz_of(params.delta) * qn1;
  if (params.delta > 1) out.invariants.push_back(mpz_of(params.delta));
  if (params.n >= 2) {
    out.invariants.push_back(pn1);
    out.invariants.push_back(pn1);
  }
  // enumeration oracle on the unit-group model, when the scan is cheap
  __uint128_t gate = 1;
  bool small = true;
  for (unsigned i = 0; i < 4 * params.n && small; ++i) {
    gate *= params.p;
    if (gate > 1000000) small = false;
  }
  if (small) {
    UnitGroupModel M = UnitGroupModel::make(params.p, params.n);
    std::vector<uint64_t> sub = M.power_subgroup(mpz_of(params.k - 1));
    if (mpz_of(sub.size()) != out.order)
      throw std::logic_error("enumerated image order disagrees with the closed form");
    if (M.subgroup_invariants(sub) != primary_decomposition(out.invariants))
      throw std::logic_error("enumerated invariants disagree with the closed form");
    out.verified_by_enumeration = true;
  }
  return out;
}

RamificationFiltration ramification_filtration(const CrystallineParams& params) {
  RamificationFiltration out;
  out.p = params.p;
  out.k = params.k;
  out.q = params.q;
  out.n = params.n;
  out.gcd_qk = std::gcd(params.q - 1, params.k - 1);
  mpz_class g = mpz_of(out.gcd_qk);
  mpz_class qn1 = mpz_pow(params.q, params.n - 1);
  out.total_order = mpz_of(params.delta) * qn1;
  out.breaks.push_back(RamBreak{0, 0, 0, out.total_order});
  for (unsigned j = 1; j < params.n; ++j) {
    mpz_class qjm1 = mpz_pow(params.q, j - 1);
    mpz_class qj = mpz_pow(params.q, j);
    RamBreak b;
    mpz_cdiv_q(b.lo.get_mpz_t(), qjm1.get_mpz_t(), g.get_mpz_t());
    b.hi = (qj - 1) / g;  // exact: gcd(q-1,k-1) divides q^j - 1
    b.fixed_level = j;
    b.group_order = mpz_pow(params.q, params.n - j);
    out.breaks.push_back(std::move(b));
  }
  out.last_index = (qn1 - 1) / g;
  out.last_group_order = params.n >= 2 ? mpz_of(params.q) : mpz_of(params.delta);
  return out;
}

NormCheck norm_surjective(uint64_t p, unsigned n, uint64_t k) {
  validate_pk(p, k);
  UnitGroupModel M = UnitGroupModel::make(p, n);
  NormCheck out;
  out.degenerate = (k - 1) % p == 0;
  out.by_enumeration = true;
  if (n == 1) {
    // residue level: the norm itself must cover every base unit
    std::set<uint64_t> image, target;
    for (uint64_t u : M.units()) image.insert(M.norm(u));
    for (uint64_t c = 1; c < p; ++c) target.insert(c);
    out.surjective = image == target;
  } else {
    // top layer: (u * conj(u))^(k-1) on 1 + p^{n-1} * (model) against
    // 1 + p^{n-1} * (base)
    uint64_t pn = M.modulus(), pn1 = pn / p;
    std::set<uint64_t> image, target;
    for (uint64_t c = 0; c < p; ++c) target.insert((1 + pn1 * c) % pn);
    for (uint64_t xa = 0; xa < p; ++xa)
      for (uint64_t xb = 0; xb < p; ++xb) {
        uint64_t u = M.encode((1 + pn1 * xa) % pn, (pn1 * xb) % pn);
        image.insert(powmod_u64(M.norm(u), k - 1, pn));
      }
    out.surjective = image == target;
  }
  return out;
}

mpz_class central_exponent(uint64_t p, const mpz_class& M) {
  if (!is_prime_u64(p) || p > 1000000) throw std::invalid_argument("p must be a small prime");
  if (M < 2) throw std::invalid_argument("scalar seed must be at least 2");
  if (gcd(M, mpz_of(p)) != 1) throw std::invalid_argument("scalar seed must be prime to p");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), M.get_mpz_t(), 2 * static_cast<unsigned long>(p - 1));
  return out;
}

Assumption3Report assumption3_constants(uint64_t p, uint64_t k, unsigned hecke_degree,
                                        unsigned n_max) {
  if (hecke_degree == 0) throw std::invalid_argument("Hecke field degree must be positive");
  if (n_max < 1) throw std::invalid_argument("need at least one level");
  CrystallineParams probe = CrystallineParams::make(p, k, 1);
  if (!probe.p3_ok)
    throw std::invalid_argument(
        "need p >= 5 with neither p nor (p+1)/2 dividing k-1");
  Assumption3Report rep;
  rep.C1 = mpz_of(p) * mpz_of(p);
  rep.C2 = mpz_pow(p, 4ul * hecke_degree);
  rep.all_ok = true;
  mpz_class qm1 = mpz_of(p) * mpz_of(p) - 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    RamificationFiltration F = ramification_filtration(CrystallineParams::make(p, k, n));
    Assumption3Row row;
    row.n = n;
    row.e_n = F.total_order;
    row.i_n = F.last_index;
    row.ratio_ok = F.total_order <= qm1 * (F.last_index + 1) && qm1 < rep.C1;
    rep.all_ok = rep.all_ok && row.ratio_ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

OmegaOrders omega_order(uint64_t chi_at_p_order) {
  if (chi_at_p_order == 0) throw std::invalid_argument("character order must be positive");
  OmegaOrders out;
  // ord(zeta_m^2) = m / gcd(m, 2)
  if (chi_at_p_order % 2 == 1) out.orders.insert(chi_at_p_order);
  out.orders.insert(2 * chi_at_p_order);
  for (uint64_t m : out.orders)
    for (uint64_t a = 0; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;  // primitive m-th roots only
      uint64_t M = std::lcm<uint64_t>(m, 4);
      uint64_t t = (a * (M / m) + M / 4) % M;
      out.twisted_orders.insert(M / std::gcd(t, M));
    }
  return out;
}

UnitGroupModel UnitGroupModel::make(uint64_t p, unsigned n) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("level must be at least 1");
  __uint128_t card = 1;
  for (unsigned i = 0; i < 2 * n; ++i) {
    card *= p;
    if (card > 1000000) throw std::domain_error("unit-group model too large to enumerate");
  }
  UnitGroupModel M;
  M.p_ = p;
  M.n_ = n;
  M.pn_ = 1;
  for (unsigned i = 0; i < n; ++i) M.pn_ *= p;
  FpPoly f = least_irreducible(p, 2);
  M.f0_ = f[0];
  M.f1_ = f[1];
  for (uint64_t b = 0; b < M.pn_; ++b)
    for (uint64_t a = 0; a < M.pn_; ++a)
      if (a % p != 0 || b % p != 0) M.units_.push_back(a + b * M.pn_);
  std::sort(M.units_.begin(), M.units_.end());
  return M;
}

uint64_t UnitGroupModel::encode(uint64_t a, uint64_t b) const {
  if (a >= pn_ || b >= pn_) throw std::invalid_argument("coordinate out of range");
  return a + b * pn_;
}

uint64_t UnitGroupModel::add(uint64_t u, uint64_t v) const {
  return encode((u % pn_ + v % pn_) % pn_, (u / pn_ + v / pn_) % pn_);
}

uint64_t UnitGroupModel::mul(uint64_t u, uint64_t v) const {
  uint64_t a = u % pn_, b = u / pn_, c = v % pn_, d = v / pn_;
  uint64_t bd = b * d % pn_;
  // omega^2 = -f0 - f1*omega
  uint64_t re = (a * c % pn_ + pn_ - bd * f0_ % pn_) % pn_;
  uint64_t im = ((a * d + b * c) % pn_ + pn_ - bd * f1_ % pn_) % pn_;
  return encode(re, im);
}

uint64_t UnitGroupModel::pow(uint64_t u, const mpz_class& e) const {
  if (e < 0) throw std::invalid_argument("exponent must be nonnegative");
  uint64_t acc = one(), base = u;
  size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc;
}

uint64_t UnitGroupModel::conj(uint64_t u) const {
  uint64_t a = u % pn_, b = u / pn_;
  // the other root of X^2 + f1 X + f0 is -f1 - omega
  return encode((a + pn_ - b * f1_ % pn_) % pn_, (pn_ - b) % pn_);
}

uint64_t UnitGroupModel::norm(uint64_t u) const {
  uint64_t r = mul(u, conj(u));
  if (r / pn_ != 0) throw std::logic_error("norm left the base ring");
  return r;
}

bool UnitGroupModel::is_unit(uint64_t u) const {
  return (u % pn_) % p_ != 0 || (u / pn_) % p_ != 0;
}

std::vector<uint64_t> UnitGroupModel::power_subgroup(const mpz_class& e) const {
  std::set<uint64_t> image;
  for (uint64_t u : units_) image.insert(pow(u, e));
  return std::vector<uint64_t>(image.begin(), image.end());
}

std::vector<mpz_class> UnitGroupModel::subgroup_invariants(
    const std::vector<uint64_t>& subgroup) const {
  if (subgroup.empty()) throw std::invalid_argument("subgroup must be nonempty");
  std::vector<mpz_class> out;
  uint64_t rem = subgroup.size();
  for (uint64_t l = 2; l <= rem; ++l) {
    if (rem % l != 0) continue;
    unsigned e = 0;
    while (rem % l == 0) {
      rem /= l;
      ++e;
    }
    // d[j] = log_l #{x : x^(l^j) = 1}; d[j]-d[j-1] counts cyclic parts of
    // size >= l^j
    std::vector<unsigned> d(e + 1, 0);
    for (unsigned j = 1; j <= e; ++j) {
      mpz_class lj = mpz_pow(l, j);
      uint64_t cnt = 0;
      for (uint64_t x : subgroup)
        if (pow(x, lj) == one()) ++cnt;
      unsigned dj = 0;
      while (cnt > 1) {
        if (cnt % l != 0)
          throw std::logic_error("subgroup order statistics are not an l-power");
        cnt /= l;
        ++dj;
      }
      d[j] = dj;
    }
    for (unsigned j = 1; j <= e; ++j) {
      unsigned ge_j = d[j] - d[j - 1];
      unsigned ge_j1 = j < e ? d[j + 1] - d[j] : 0;
      for (unsigned t = ge_j1; t < ge_j; ++t) out.push_back(mpz_pow(l, j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> primary_decomposition(const std::vector<mpz_class>& invariants) {
  std::vector<mpz_class> out;
  for (mpz_class v : invariants) {
    if (v <= 0) throw std::invalid_argument("cyclic factors must be positive");
    for (mpz_class d = 2; d * d <= v; ++d)
      if (v % d == 0) {
        mpz_class pe = 1;
        while (v % d == 0) {
          v /= d;
          pe *= d;
        }
        out.push_back(pe);
      }
    if (v > 1) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bogocert

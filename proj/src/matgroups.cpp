#include <bogocert/matgroups.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bogocert {

namespace {

void require_same_ring(const Mat2& x, const Mat2& y) {
  if (!x.ring || !y.ring || !x.ring->same_ring(*y.ring))
    throw std::domain_error("matrix ring mismatch");
}

uint64_t ring_pow(const RingPtr& r, uint64_t a, uint64_t e) {
  uint64_t acc = r->one(), base = a;
  while (e) {
    if (e & 1) acc = r->mul(acc, base);
    base = r->mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// multiplicative order of a is exactly m (m = the candidate group exponent)
bool has_full_order(const RingPtr& r, uint64_t a, uint64_t m) {
  if (ring_pow(r, a, m) != r->one()) return false;
  for (uint64_t q : distinct_prime_factors(m))
    if (ring_pow(r, a, m / q) == r->one()) return false;
  return true;
}

uint64_t mul_checked(uint64_t a, uint64_t b) {
  __uint128_t t = static_cast<__uint128_t>(a) * b;
  if (t > UINT64_MAX) throw std::overflow_error("group order overflows 64 bits");
  return static_cast<uint64_t>(t);
}

uint64_t pow_checked(uint64_t b, unsigned e) {
  uint64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) acc = mul_checked(acc, b);
  return acc;
}

bool key_less(const Mat2& x, const Mat2& y) { return x.key() < y.key(); }

}  // namespace

Mat2 Mat2::identity(const RingPtr& r) { return Mat2{r, {r->one(), 0, 0, r->one()}}; }
Mat2 Mat2::zero_matrix(const RingPtr& r) { return Mat2{r, {0, 0, 0, 0}}; }

Mat2 Mat2::from_ints(const RingPtr& r, long a, long b, long c, long d) {
  return Mat2{r, {r->from_int(a), r->from_int(b), r->from_int(c), r->from_int(d)}};
}

Mat2 Mat2::elementary12(const RingPtr& r, uint64_t x) { return Mat2{r, {r->one(), x, 0, r->one()}}; }
Mat2 Mat2::elementary21(const RingPtr& r, uint64_t x) { return Mat2{r, {r->one(), 0, x, r->one()}}; }
Mat2 Mat2::diagonal(const RingPtr& r, uint64_t a, uint64_t d) { return Mat2{r, {a, 0, 0, d}}; }

Mat2 Mat2::operator*(const Mat2& o) const {
  require_same_ring(*this, o);
  const FiniteRing& R = *ring;
  return Mat2{ring,
              {R.add(R.mul(e[0], o.e[0]), R.mul(e[1], o.e[2])),
               R.add(R.mul(e[0], o.e[1]), R.mul(e[1], o.e[3])),
               R.add(R.mul(e[2], o.e[0]), R.mul(e[3], o.e[2])),
               R.add(R.mul(e[2], o.e[1]), R.mul(e[3], o.e[3]))}};
}

Mat2 Mat2::operator+(const Mat2& o) const {
  require_same_ring(*this, o);
  Mat2 out{ring, {}};
  for (int i = 0; i < 4; ++i) out.e[i] = ring->add(e[i], o.e[i]);
  return out;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  require_same_ring(*this, o);
  Mat2 out{ring, {}};
  for (int i = 0; i < 4; ++i) out.e[i] = ring->sub(e[i], o.e[i]);
  return out;
}

Mat2 Mat2::scaled(uint64_t c) const {
  Mat2 out{ring, {}};
  for (int i = 0; i < 4; ++i) out.e[i] = ring->mul(e[i], c);
  return out;
}

uint64_t Mat2::det() const {
  return ring->sub(ring->mul(e[0], e[3]), ring->mul(e[1], e[2]));
}

uint64_t Mat2::trace() const { return ring->add(e[0], e[3]); }

bool Mat2::invertible() const { return ring->is_unit(det()); }

Mat2 Mat2::inverse() const {
  uint64_t di = ring->inverse(det());  // throws on a non-unit determinant
  Mat2 adj{ring, {e[3], ring->neg(e[1]), ring->neg(e[2]), e[0]}};
  return adj.scaled(di);
}

bool Mat2::is_identity() const { return *this == identity(ring); }

bool Mat2::operator==(const Mat2& o) const {
  require_same_ring(*this, o);
  return e == o.e;
}

uint64_t Mat2::key() const {
  uint64_t C = ring->cardinality();
  if (C > 65535) throw ClosureOverflow("coefficient ring too large for matrix enumeration");
  return ((e[0] * C + e[1]) * C + e[2]) * C + e[3];
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << ring->elem_str(e[0]) << ", " << ring->elem_str(e[1]) << "], ["
     << ring->elem_str(e[2]) << ", " << ring->elem_str(e[3]) << "]]";
  return os.str();
}

size_t MatGroup::order() const {
  if (!enumerated()) throw std::logic_error("group has not been enumerated");
  return elements.size();
}

bool MatGroup::contains(const Mat2& m) const {
  if (!enumerated()) throw std::logic_error("group has not been enumerated");
  if (!ring || !m.ring || !ring->same_ring(*m.ring)) return false;
  uint64_t k = m.key();
  auto it = std::lower_bound(elements.begin(), elements.end(), k,
                             [](const Mat2& x, uint64_t v) { return x.key() < v; });
  return it != elements.end() && it->key() == k;
}

MatGroup group_closure(const MatGroup& g, size_t cap) {
  if (!g.ring) throw std::domain_error("closure needs a coefficient ring");
  for (const Mat2& m : g.generators) {
    if (!m.ring || !m.ring->same_ring(*g.ring)) throw std::domain_error("generator ring mismatch");
    if (!m.invertible()) throw std::domain_error("generator is not invertible");
  }
  Mat2 id = Mat2::identity(g.ring);
  std::unordered_set<uint64_t> seen{id.key()};
  std::vector<Mat2> elems{id};
  std::deque<size_t> frontier{0};
  while (!frontier.empty()) {
    size_t i = frontier.front();
    frontier.pop_front();
    for (const Mat2& s : g.generators) {
      Mat2 t = elems[i] * s;
      if (seen.insert(t.key()).second) {
        if (elems.size() >= cap) throw ClosureOverflow("group closure exceeds element cap");
        frontier.push_back(elems.size());
        elems.push_back(std::move(t));
      }
    }
  }
  std::sort(elems.begin(), elems.end(), key_less);
  return MatGroup{g.ring, g.generators, std::move(elems)};
}

MatGroup normal_closure(const MatGroup& h, const MatGroup& ambient, size_t cap) {
  MatGroup amb = ambient.enumerated() ? ambient : group_closure(ambient, cap);
  const std::vector<Mat2>& conjugators =
      ambient.generators.empty() ? amb.elements : ambient.generators;
  std::vector<Mat2> gens = h.generators.empty() ? h.elements : h.generators;
  for (const Mat2& m : gens)
    if (!amb.contains(m)) throw std::domain_error("subgroup does not lie in the ambient group");
  MatGroup cur = group_closure(MatGroup{amb.ring, gens, {}}, cap);
  for (;;) {
    std::vector<Mat2> extra;
    for (const Mat2& a : conjugators) {
      Mat2 ai = a.inverse();
      for (const Mat2& s : cur.elements) {
        Mat2 t = (a * s) * ai;
        if (!cur.contains(t)) extra.push_back(t);
      }
    }
    if (extra.empty()) break;
    gens.insert(gens.end(), extra.begin(), extra.end());
    cur = group_closure(MatGroup{amb.ring, gens, {}}, cap);
  }
  return MatGroup{amb.ring, h.generators, std::move(cur.elements)};
}

MatGroup center(const MatGroup& g) {
  MatGroup full = g.enumerated() ? g : group_closure(g);
  const std::vector<Mat2>& probes = full.generators.empty() ? full.elements : full.generators;
  std::vector<Mat2> z;
  for (const Mat2& m : full.elements) {
    bool commutes = true;
    for (const Mat2& t : probes)
      if (!(m * t == t * m)) {
        commutes = false;
        break;
      }
    if (commutes) z.push_back(m);
  }
  return MatGroup{full.ring, {}, std::move(z)};
}

std::vector<Mat2> sl2_generators(const RingPtr& r) {
  std::vector<Mat2> out;
  if (r->kind() == RingKind::ZmodPn) {
    // transvections generate SL2 over Z/p^n (image of the integer case)
    out.push_back(Mat2::elementary12(r, r->one()));
    out.push_back(Mat2::elementary21(r, r->one()));
  } else {
    for (uint64_t b : r->fp_basis()) {
      out.push_back(Mat2::elementary12(r, b));
      out.push_back(Mat2::elementary21(r, b));
    }
  }
  return out;
}

std::vector<Mat2> gl2_generators(const RingPtr& r) {
  std::vector<Mat2> out = sl2_generators(r);
  if (r->kind() == RingKind::ZmodPn) {
    uint64_t m = r->unit_count();
    if (m > 1) {
      bool found = false;
      for (uint64_t c = 2; c < r->cardinality() && !found; ++c) {
        if (!r->is_unit(c)) continue;
        if (has_full_order(r, c, m)) {
          out.push_back(Mat2::diagonal(r, c, r->one()));
          found = true;
        }
      }
      if (!found) throw std::domain_error("unit group is not cyclic");
    }
  } else {
    // one diagonal generator per component: a primitive element there, 1 elsewhere
    const std::vector<uint64_t> onec = r->fp_coords(r->one());
    unsigned off = 0;
    for (unsigned deg : r->degrees()) {
      uint64_t q = 1;
      for (unsigned j = 0; j < deg; ++j) q *= r->p();
      if (q > 2) {
        bool found = false;
        for (uint64_t cand = 2; cand < q && !found; ++cand) {
          std::vector<uint64_t> cc = onec;
          uint64_t t = cand;
          for (unsigned j = 0; j < deg; ++j) {
            cc[off + j] = t % r->p();
            t /= r->p();
          }
          uint64_t a = r->from_fp_coords(cc);
          if (has_full_order(r, a, q - 1)) {
            out.push_back(Mat2::diagonal(r, a, r->one()));
            found = true;
          }
        }
        if (!found) throw std::logic_error("no primitive element found");
      }
      off += deg;
    }
  }
  return out;
}

uint64_t gl2_order(const RingPtr& r) {
  if (r->kind() == RingKind::ZmodPn) {
    uint64_t p = r->p();
    uint64_t p2 = mul_checked(p, p);
    return mul_checked(pow_checked(p, 4 * (r->level() - 1)), mul_checked(p2 - 1, p2 - p));
  }
  uint64_t acc = 1;
  for (unsigned deg : r->degrees()) {
    uint64_t q = pow_checked(r->p(), deg);
    uint64_t q2 = mul_checked(q, q);
    acc = mul_checked(acc, mul_checked(q2 - 1, q2 - q));
  }
  return acc;
}

uint64_t sl2_order(const RingPtr& r) {
  if (r->kind() == RingKind::ZmodPn) {
    uint64_t p = r->p();
    uint64_t p2 = mul_checked(p, p);
    return mul_checked(pow_checked(p, 3 * (r->level() - 1)), mul_checked(p, p2 - 1));
  }
  uint64_t acc = 1;
  for (unsigned deg : r->degrees()) {
    uint64_t q = pow_checked(r->p(), deg);
    uint64_t q2 = mul_checked(q, q);
    acc = mul_checked(acc, mul_checked(q, q2 - 1));
  }
  return acc;
}

MatGroup ghat(const RingPtr& r, unsigned k, size_t cap) {
  if (k < 1) throw std::invalid_argument("weight must be at least 1");
  // determinant classes: (k-1)-th powers of the integer units of the ring
  std::vector<uint64_t> dets;
  {
    std::unordered_set<uint64_t> seen;
    uint64_t bound = r->kind() == RingKind::ZmodPn ? r->cardinality() : r->p();
    for (uint64_t c = 1; c < bound; ++c) {
      uint64_t u = r->from_int(static_cast<long>(c));
      if (!r->is_unit(u)) continue;
      uint64_t d = ring_pow(r, u, k - 1);
      if (seen.insert(d).second) dets.push_back(d);
    }
  }
  MatGroup sl2 = group_closure(MatGroup{r, sl2_generators(r), {}}, cap);
  if (static_cast<__uint128_t>(sl2.elements.size()) * dets.size() > cap)
    throw ClosureOverflow("determinant cosets exceed element cap");
  std::vector<Mat2> elems;
  elems.reserve(sl2.elements.size() * dets.size());
  std::vector<Mat2> gens = sl2.generators;
  for (uint64_t d : dets) {
    Mat2 rep = Mat2::diagonal(r, d, r->one());
    if (d != r->one()) gens.push_back(rep);
    for (const Mat2& s : sl2.elements) elems.push_back(rep * s);
  }
  std::sort(elems.begin(), elems.end(), key_less);
  return MatGroup{r, std::move(gens), std::move(elems)};
}

bool contains_sl2(const MatGroup& g) {
  MatGroup full = g.enumerated() ? g : group_closure(g);
  for (const Mat2& m : sl2_generators(full.ring))
    if (!full.contains(m)) return false;
  return true;
}

Mat2 log_map(const Mat2& m) {
  const RingPtr& r = m.ring;
  if (!r || r->kind() != RingKind::ZmodPn || r->level() < 2)
    throw std::domain_error("matrix logarithm needs Z/p^n with n >= 2");
  uint64_t card = r->cardinality();
  uint64_t pn1 = card / r->p();
  RingPtr fp = FiniteRing::zmod_pn(r->p(), 1);
  std::array<uint64_t, 4> idm = {r->one(), 0, 0, r->one()};
  Mat2 out{fp, {}};
  for (int i = 0; i < 4; ++i) {
    uint64_t d = m.e[i] >= idm[i] ? m.e[i] - idm[i] : m.e[i] + (card - idm[i]);
    if (d % pn1 != 0)
      throw std::domain_error("matrix is not congruent to the identity at the penultimate level");
    out.e[i] = d / pn1;
  }
  return out;
}

namespace {

std::vector<uint64_t> mat_coords(const Mat2& m) {
  std::vector<uint64_t> v;
  for (int i = 0; i < 4; ++i) {
    std::vector<uint64_t> c = m.ring->fp_coords(m.e[i]);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

Mat2 mat_from_coords(const RingPtr& r, const std::vector<uint64_t>& v) {
  unsigned D = r->fp_dimension();
  Mat2 m{r, {}};
  for (int i = 0; i < 4; ++i)
    m.e[i] = r->from_fp_coords(
        std::vector<uint64_t>(v.begin() + i * D, v.begin() + (i + 1) * D));
  return m;
}

size_t pivot_of(const std::vector<uint64_t>& row) {
  for (size_t j = 0; j < row.size(); ++j)
    if (row[j]) return j;
  return row.size();
}

uint64_t inv_mod_prime(uint64_t a, uint64_t p) {
  int64_t t = 0, nt = 1;
  int64_t rr = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
  while (nr != 0) {
    int64_t q = rr / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = rr - q * nr;
    rr = nr;
    nr = tmp;
  }
  if (rr != 1) throw std::domain_error("not invertible mod p");
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

// reduced row echelon form over F_p, rows kept sorted by pivot column
struct Rref {
  uint64_t p = 0;
  std::vector<std::vector<uint64_t>> rows;

  void subtract_multiple(std::vector<uint64_t>& v, uint64_t c,
                         const std::vector<uint64_t>& row) const {
    for (size_t j = 0; j < v.size(); ++j)
      v[j] = static_cast<uint64_t>(
          (v[j] + static_cast<__uint128_t>(p - c) * row[j]) % p);
  }

  void reduce(std::vector<uint64_t>& v) const {
    for (const auto& row : rows) {
      size_t pc = pivot_of(row);
      if (v[pc]) subtract_multiple(v, v[pc], row);
    }
  }

  bool insert(std::vector<uint64_t> v) {
    reduce(v);
    size_t pc = pivot_of(v);
    if (pc == v.size()) return false;
    uint64_t s = inv_mod_prime(v[pc], p);
    for (auto& x : v) x = static_cast<uint64_t>(static_cast<__uint128_t>(x) * s % p);
    for (auto& row : rows)
      if (row[pc]) subtract_multiple(row, row[pc], v);
    auto it = rows.begin();
    while (it != rows.end() && pivot_of(*it) < pc) ++it;
    rows.insert(it, std::move(v));
    return true;
  }
};

}  // namespace

bool MatSubspace::contains(const Mat2& m) const {
  if (!ring || !m.ring || !ring->same_ring(*m.ring))
    throw std::domain_error("matrix ring mismatch");
  std::vector<uint64_t> v = mat_coords(m);
  Rref rr{ring->p(), {}};
  for (const Mat2& b : basis) rr.rows.push_back(mat_coords(b));
  rr.reduce(v);
  return pivot_of(v) == v.size();
}

MatSubspace make_subspace(const RingPtr& ring, const std::vector<Mat2>& spanning) {
  if (!ring->is_fp_algebra())
    throw std::domain_error("matrix subspaces need an F_p-algebra coefficient ring");
  Rref rr{ring->p(), {}};
  for (const Mat2& m : spanning) {
    if (!m.ring || !m.ring->same_ring(*ring)) throw std::domain_error("matrix ring mismatch");
    rr.insert(mat_coords(m));
  }
  MatSubspace out{ring, {}};
  for (const auto& row : rr.rows) out.basis.push_back(mat_from_coords(ring, row));
  return out;
}

TraceSpaces trace_subspaces(const RingPtr& ring) {
  if (!ring->is_fp_algebra())
    throw std::domain_error("trace subspaces need an F_p-algebra coefficient ring");
  std::vector<Mat2> tz;
  for (uint64_t b : ring->fp_basis()) {
    tz.push_back(Mat2{ring, {b, 0, 0, ring->neg(b)}});
    tz.push_back(Mat2{ring, {0, b, 0, 0}});
    tz.push_back(Mat2{ring, {0, 0, b, 0}});
  }
  std::vector<Mat2> mh = tz;
  mh.push_back(Mat2::identity(ring));
  return TraceSpaces{make_subspace(ring, mh), make_subspace(ring, tz),
                     make_subspace(ring, {Mat2::identity(ring)})};
}

MatSubspace adjoint_closure(const MatSubspace& v) {
  const RingPtr& r = v.ring;
  for (const Mat2& b : v.basis)
    if (b.trace() != r->zero())
      throw std::domain_error("adjoint closure needs trace-zero input");
  std::vector<Mat2> gens = sl2_generators(r);
  std::vector<Mat2> invs;
  invs.reserve(gens.size());
  for (const Mat2& g : gens) invs.push_back(g.inverse());
  MatSubspace cur = make_subspace(r, v.basis);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mat2> span = cur.basis;
    for (const Mat2& b : cur.basis)
      for (size_t i = 0; i < gens.size(); ++i) {
        Mat2 c = (gens[i] * b) * invs[i];
        if (!cur.contains(c)) {
          span.push_back(c);
          grew = true;
        }
      }
    if (grew) cur = make_subspace(r, span);
  }
  return cur;
}

bool AbstractGroup::valid() const {
  size_t n = mul.size();
  if (n == 0 || inv.size() != n) return false;
  for (const auto& row : mul) {
    if (row.size() != n) return false;
    for (unsigned v : row)
      if (v >= n) return false;
  }
  for (unsigned v : inv)
    if (v >= n) return false;
  for (unsigned i = 0; i < n; ++i)
    if (mul[0][i] != i || mul[i][0] != i) return false;
  for (unsigned i = 0; i < n; ++i)
    if (mul[i][inv[i]] != 0 || mul[inv[i]][i] != 0) return false;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        if (mul[mul[i][j]][k] != mul[i][mul[j][k]]) return false;
  return true;
}

AbstractGroup cyclic_group(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclic group needs positive order");
  AbstractGroup g;
  g.mul.assign(n, std::vector<unsigned>(n));
  g.inv.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    g.inv[i] = (n - i) % n;
    for (unsigned j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
  }
  return g;
}

AbstractGroup abstract_from_matgroup(const MatGroup& g0) {
  MatGroup g = g0.enumerated() ? g0 : group_closure(g0);
  size_t n = g.elements.size();
  std::vector<Mat2> elems;
  elems.reserve(n);
  Mat2 id = Mat2::identity(g.ring);
  elems.push_back(id);
  for (const Mat2& m : g.elements)
    if (!(m == id)) elems.push_back(m);
  std::unordered_map<uint64_t, unsigned> idx;
  for (unsigned i = 0; i < n; ++i) idx.emplace(elems[i].key(), i);
  AbstractGroup a;
  a.mul.assign(n, std::vector<unsigned>(n));
  a.inv.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    a.inv[i] = idx.at(elems[i].inverse().key());
    for (unsigned j = 0; j < n; ++j) a.mul[i][j] = idx.at((elems[i] * elems[j]).key());
  }
  return a;
}

bool is_homomorphism(const GroupHom& f) {
  if (!f.dom || !f.cod) return false;
  size_t n = f.dom->order(), m = f.cod->order();
  if (f.map.size() != n) return false;
  for (unsigned v : f.map)
    if (v >= m) return false;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (f.map[f.dom->mul[i][j]] != f.cod->mul[f.map[i]][f.map[j]]) return false;
  return true;
}

bool is_surjective(const GroupHom& f) {
  if (!f.dom || !f.cod) return false;
  std::vector<char> hit(f.cod->order(), 0);
  for (unsigned v : f.map)
    if (v < hit.size()) hit[v] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

FiberProduct fiber_product(const std::vector<const AbstractGroup*>& gs,
                           const std::vector<GroupHom>& homs, size_t cap) {
  if (gs.empty() || gs.size() != homs.size())
    throw std::invalid_argument("need one morphism per factor");
  const AbstractGroup* cod = homs[0].cod;
  for (size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i] || homs[i].dom != gs[i] || homs[i].cod != cod)
      throw std::invalid_argument("morphism endpoints do not match the factors");
    if (!is_homomorphism(homs[i])) throw std::domain_error("morphism is not a homomorphism");
    if (!is_surjective(homs[i])) throw std::domain_error("fiber product needs surjective morphisms");
  }
  __uint128_t scan = 1;
  for (const AbstractGroup* g : gs) {
    scan *= g->order();
    if (scan > 100000000) throw ClosureOverflow("fiber product scan too large");
  }
  std::vector<std::vector<unsigned>> tuples;
  std::vector<unsigned> cur(gs.size(), 0);
  for (;;) {
    unsigned c = homs[0].map[cur[0]];
    bool ok = true;
    for (size_t i = 1; i < gs.size() && ok; ++i)
      if (homs[i].map[cur[i]] != c) ok = false;
    if (ok) {
      if (tuples.size() >= cap) throw ClosureOverflow("fiber product exceeds element cap");
      tuples.push_back(cur);
    }
    size_t i = gs.size();
    while (i > 0 && ++cur[i - 1] == gs[i - 1]->order()) {
      cur[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  size_t n = tuples.size();
  if (n > 10000) throw ClosureOverflow("fiber product too large to tabulate");
  std::map<std::vector<unsigned>, unsigned> idx;
  for (unsigned i = 0; i < n; ++i) idx.emplace(tuples[i], i);
  AbstractGroup a;
  a.mul.assign(n, std::vector<unsigned>(n));
  a.inv.resize(n);
  std::vector<unsigned> t(gs.size());
  for (unsigned i = 0; i < n; ++i) {
    for (size_t k = 0; k < gs.size(); ++k) t[k] = gs[k]->inv[tuples[i][k]];
    a.inv[i] = idx.at(t);
    for (unsigned j = 0; j < n; ++j) {
      for (size_t k = 0; k < gs.size(); ++k) t[k] = gs[k]->mul[tuples[i][k]][tuples[j][k]];
      a.mul[i][j] = idx.at(t);
    }
  }
  return FiberProduct{std::move(a), std::move(tuples)};
}

std::vector<unsigned> group_center(const AbstractGroup& g) {
  std::vector<unsigned> z;
  size_t n = g.order();
  for (unsigned i = 0; i < n; ++i) {
    bool central = true;
    for (unsigned j = 0; j < n && central; ++j)
      if (g.mul[i][j] != g.mul[j][i]) central = false;
    if (central) z.push_back(i);
  }
  return z;
}

}  // namespace bogocert

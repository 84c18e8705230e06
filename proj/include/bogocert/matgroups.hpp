#pragma once

#include <bogocert/finitering.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bogocert {

// raised whenever an enumeration would exceed its cap; never silently truncates
class ClosureOverflow : public std::runtime_error {
public:
  explicit ClosureOverflow(const std::string& w) : std::runtime_error(w) {}
};

struct Mat2 {
  RingPtr ring;
  std::array<uint64_t, 4> e{};  // row-major [a, b; c, d]

  static Mat2 identity(const RingPtr& r);
  static Mat2 zero_matrix(const RingPtr& r);
  static Mat2 from_ints(const RingPtr& r, long a, long b, long c, long d);
  static Mat2 elementary12(const RingPtr& r, uint64_t x);
  static Mat2 elementary21(const RingPtr& r, uint64_t x);
  static Mat2 diagonal(const RingPtr& r, uint64_t a, uint64_t d);

  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 scaled(uint64_t c) const;  // multiply every entry by from_int(c)
  uint64_t det() const;
  uint64_t trace() const;
  bool invertible() const;
  Mat2 inverse() const;  // throws std::domain_error when det is not a unit
  bool is_identity() const;
  bool operator==(const Mat2& o) const;
  bool operator!=(const Mat2& o) const { return !(*this == o); }
  uint64_t key() const;  // packed entry tuple; needs cardinality <= 65535
  std::string str() const;
};

struct MatGroup {
  RingPtr ring;
  std::vector<Mat2> generators;
  std::vector<Mat2> elements;  // sorted by key() when enumerated; empty otherwise

  bool enumerated() const { return !elements.empty(); }
  size_t order() const;
  bool contains(const Mat2& m) const;  // needs enumerated()
};

MatGroup group_closure(const MatGroup& gens, size_t cap = 1000000);
MatGroup normal_closure(const MatGroup& h, const MatGroup& ambient, size_t cap = 1000000);
MatGroup center(const MatGroup& g);

// {M in GL_2(ring) : det(M) = u^(k-1) for a unit u of the prime subring}
MatGroup ghat(const RingPtr& ring, unsigned k, size_t cap = 1000000);
bool contains_sl2(const MatGroup& g);

std::vector<Mat2> sl2_generators(const RingPtr& ring);
std::vector<Mat2> gl2_generators(const RingPtr& ring);
uint64_t gl2_order(const RingPtr& ring);
uint64_t sl2_order(const RingPtr& ring);

// for m = I + p^{n-1} A over Z/p^n (n >= 2), the class of A mod p;
// additive on the kernel and equivariant under conjugation
Mat2 log_map(const Mat2& m);

struct MatSubspace {
  RingPtr ring;
  std::vector<Mat2> basis;  // reduced row echelon over F_p, deterministic

  unsigned dim() const { return static_cast<unsigned>(basis.size()); }
  bool contains(const Mat2& m) const;
};

MatSubspace make_subspace(const RingPtr& ring, const std::vector<Mat2>& spanning);

struct TraceSpaces {
  MatSubspace mhat;        // trace in the diagonally embedded F_p
  MatSubspace trace_zero;  // trace 0
  MatSubspace scalars;     // F_p multiples of the identity
};
TraceSpaces trace_subspaces(const RingPtr& ring);

// smallest F_p-subspace containing v and stable under X -> g X g^{-1}
// for the standard SL_2 generators; input must be trace zero
MatSubspace adjoint_closure(const MatSubspace& v);

// Abstract finite groups as multiplication tables, for fiber products.
// Element 0 is the identity.
struct AbstractGroup {
  std::vector<std::vector<unsigned>> mul;
  std::vector<unsigned> inv;
  size_t order() const { return mul.size(); }
  bool valid() const;  // identity, inverses, associativity (cubic; small groups)
};

AbstractGroup cyclic_group(unsigned n);
AbstractGroup abstract_from_matgroup(const MatGroup& g);

struct GroupHom {
  const AbstractGroup* dom = nullptr;
  const AbstractGroup* cod = nullptr;
  std::vector<unsigned> map;  // image of each domain element
};

bool is_homomorphism(const GroupHom& f);
bool is_surjective(const GroupHom& f);

struct FiberProduct {
  AbstractGroup group;
  std::vector<std::vector<unsigned>> tuples;  // element i is tuples[i]
};

// {(g_i) : phi_i(g_i) equal for all i}; every morphism must be a verified
// surjective homomorphism onto the common codomain
FiberProduct fiber_product(const std::vector<const AbstractGroup*>& gs,
                           const std::vector<GroupHom>& homs, size_t cap = 1000000);
std::vector<unsigned> group_center(const AbstractGroup& g);

}  // namespace bogocert

#pragma once

#include <bogocert/intpoly.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bogocert {

enum class RingKind { ZmodPn, ProductField };

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// Finite coefficient rings for 2x2 matrix work: Z/p^n, or a product of finite
// fields F_{p^{f_i}} where component i is F_p[x]/(g_i) with g_i the
// lexicographically least monic irreducible of degree f_i (coefficient tuples
// compared constant term first). Elements are addressed by dense indices in
// [0, cardinality()): residues for Z/p^n, mixed-radix tuples of base-p digit
// encodings for products.
class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
public:
  static RingPtr zmod_pn(uint64_t p, unsigned n);
  static RingPtr product_field(uint64_t p, std::vector<unsigned> degrees);

  RingKind kind() const { return kind_; }
  uint64_t p() const { return p_; }
  unsigned level() const { return n_; }  // n for Z/p^n, 1 otherwise
  const std::vector<unsigned>& degrees() const { return degrees_; }
  uint64_t cardinality() const { return card_; }
  uint64_t unit_count() const;
  bool is_fp_algebra() const;  // killed by p: ProductField, or Z/p^n with n = 1
  unsigned fp_dimension() const;
  std::string str() const;

  uint64_t zero() const { return 0; }
  uint64_t one() const { return one_; }
  uint64_t from_int(long v) const;
  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  bool is_unit(uint64_t a) const;
  uint64_t inverse(uint64_t a) const;  // throws std::domain_error on a non-unit
  // a lies in the image of Z -> ring (the diagonally embedded prime ring)
  bool in_prime_subring(uint64_t a) const;
  std::string elem_str(uint64_t a) const;

  // F_p-vector-space structure; only for is_fp_algebra() rings
  std::vector<uint64_t> fp_coords(uint64_t a) const;
  uint64_t from_fp_coords(const std::vector<uint64_t>& c) const;
  std::vector<uint64_t> fp_basis() const;

  // component moduli (ProductField), as F_p coefficient vectors
  const std::vector<FpPoly>& component_moduli() const { return moduli_; }

  bool same_ring(const FiniteRing& o) const;

private:
  FiniteRing() = default;
  std::vector<uint64_t> split(uint64_t a) const;   // component indices
  uint64_t join(const std::vector<uint64_t>& c) const;

  RingKind kind_ = RingKind::ZmodPn;
  uint64_t p_ = 0;
  unsigned n_ = 1;
  std::vector<unsigned> degrees_;
  std::vector<FpPoly> moduli_;
  std::vector<uint64_t> comp_card_;
  uint64_t card_ = 0;
  uint64_t one_ = 0;
};

// lexicographically least monic irreducible of the given degree over F_p,
// comparing coefficient tuples (c_0, c_1, ...) left to right
FpPoly least_irreducible(uint64_t p, unsigned degree);

}  // namespace bogocert

#include <bogocert/numberfield.hpp>

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Root isolation: Aberth-Ehrlich iteration in floating complex arithmetic,
// then a posteriori certification with exact rational arithmetic via the
// inclusion disks D(z_i, n*|f(z_i)| / (|lc|*prod_{j!=i}|z_i - z_j|)); the
// union of the disks covers all roots, and pairwise disjoint disks each
// contain exactly one (Smith, Math. Comp. 1970).

namespace bogocert {

namespace {

struct C {
  mpfr_t re, im;
};

void c_init(C& z, mpfr_prec_t p) {
  mpfr_init2(z.re, p);
  mpfr_init2(z.im, p);
}

void c_clear(C& z) {
  mpfr_clear(z.re);
  mpfr_clear(z.im);
}

mpq_class to_q(const mpfr_t v) {
  if (mpfr_zero_p(v)) return mpq_class(0);
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
  mpq_class q(mant);
  if (e >= 0) {
    mpz_class sh;
    mpz_mul_2exp(sh.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    return mpq_class(sh);
  }
  mpq_class r;
  r.get_num() = mant;
  mpz_ui_pow_ui(r.get_den().get_mpz_t(), 2, static_cast<unsigned long>(-e));
  r.canonicalize();
  return r;
}

struct RootBox {
  mpq_class re, im;    // exact midpoint
  mpq_class rad2;      // exact upper bound on squared error radius
};

// Aberth-Ehrlich at working precision; deterministic starting points on the
// Cauchy-bound circle. Returns approximations (unordered, unverified).
std::vector<std::pair<mpq_class, mpq_class>> aberth(const IntPoly& f, mpfr_prec_t P) {
  const int d = f.degree();
  std::vector<C> z(d), coef(d + 1);
  for (auto& c : z) c_init(c, P);
  for (auto& c : coef) c_init(c, P);
  for (int i = 0; i <= d; ++i) {
    mpfr_set_z(coef[i].re, f[i].get_mpz_t(), MPFR_RNDN);
    mpfr_set_ui(coef[i].im, 0, MPFR_RNDN);
  }

  // Cauchy bound R = 1 + max |a_i| / |a_d|
  mpfr_t R, t1, t2;
  mpfr_init2(R, P);
  mpfr_init2(t1, P);
  mpfr_init2(t2, P);
  mpfr_set_ui(R, 0, MPFR_RNDN);
  for (int i = 0; i < d; ++i) {
    mpfr_abs(t1, coef[i].re, MPFR_RNDN);
    mpfr_max(R, R, t1, MPFR_RNDN);
  }
  mpfr_abs(t1, coef[d].re, MPFR_RNDN);
  mpfr_div(R, R, t1, MPFR_RNDN);
  mpfr_add_ui(R, R, 1, MPFR_RNDN);

  // z_k = R * exp(2*pi*i*(k + 0.25)/d + i*0.42/d)
  mpfr_t pi, ang;
  mpfr_init2(pi, P);
  mpfr_init2(ang, P);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (int k = 0; k < d; ++k) {
    mpfr_set_ui(ang, 4 * static_cast<unsigned long>(k) + 1, MPFR_RNDN);
    mpfr_mul(ang, ang, pi, MPFR_RNDN);
    mpfr_div_ui(ang, ang, 2 * static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_set_d(t1, 0.42 / d, MPFR_RNDN);
    mpfr_add(ang, ang, t1, MPFR_RNDN);
    mpfr_sin_cos(z[k].im, z[k].re, ang, MPFR_RNDN);
    mpfr_mul(z[k].re, z[k].re, R, MPFR_RNDN);
    mpfr_mul(z[k].im, z[k].im, R, MPFR_RNDN);
  }

  C b, db, num, acc, tmp, w;
  c_init(b, P);
  c_init(db, P);
  c_init(num, P);
  c_init(acc, P);
  c_init(tmp, P);
  c_init(w, P);
  mpfr_t den, thresh, moved, mag;
  mpfr_init2(den, P);
  mpfr_init2(thresh, P);
  mpfr_init2(moved, P);
  mpfr_init2(mag, P);
  mpfr_set_ui_2exp(thresh, 1, -static_cast<mpfr_exp_t>(P) + 8, MPFR_RNDN);

  auto cmul_assign = [&](C& a, const C& c2) {
    // a *= c2 (uses t1, t2)
    mpfr_mul(t1, a.re, c2.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, c2.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_mul(t2, a.re, c2.im, MPFR_RNDN);
    mpfr_mul(a.im, a.im, c2.re, MPFR_RNDN);
    mpfr_add(a.im, a.im, t2, MPFR_RNDN);
    mpfr_set(a.re, t1, MPFR_RNDN);
  };
  auto cdiv = [&](C& out, const C& a, const C& c2) {
    // out = a / c2 (uses den, t1, t2); caller guarantees c2 != 0
    mpfr_mul(den, c2.re, c2.re, MPFR_RNDN);
    mpfr_mul(t1, c2.im, c2.im, MPFR_RNDN);
    mpfr_add(den, den, t1, MPFR_RNDN);
    mpfr_mul(t1, a.re, c2.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, c2.im, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_mul(t2, a.im, c2.re, MPFR_RNDN);
    mpfr_mul(out.im, a.re, c2.im, MPFR_RNDN);
    mpfr_sub(out.im, t2, out.im, MPFR_RNDN);
    mpfr_div(out.re, t1, den, MPFR_RNDN);
    mpfr_div(out.im, out.im, den, MPFR_RNDN);
  };

  const long maxit = 200 + static_cast<long>(P) / 2;
  for (long iter = 0; iter < maxit; ++iter) {
    mpfr_set_ui(moved, 0, MPFR_RNDN);
    for (int i = 0; i < d; ++i) {
      // Horner for f(z_i) and f'(z_i)
      mpfr_set(b.re, coef[d].re, MPFR_RNDN);
      mpfr_set_ui(b.im, 0, MPFR_RNDN);
      mpfr_set_ui(db.re, 0, MPFR_RNDN);
      mpfr_set_ui(db.im, 0, MPFR_RNDN);
      for (int k = d - 1; k >= 0; --k) {
        cmul_assign(db, z[i]);
        mpfr_add(db.re, db.re, b.re, MPFR_RNDN);
        mpfr_add(db.im, db.im, b.im, MPFR_RNDN);
        cmul_assign(b, z[i]);
        mpfr_add(b.re, b.re, coef[k].re, MPFR_RNDN);
      }
      if (mpfr_zero_p(b.re) && mpfr_zero_p(b.im)) continue;
      if (mpfr_zero_p(db.re) && mpfr_zero_p(db.im)) {
        // derivative vanished; nudge the point off the critical spot
        mpfr_mul(t1, thresh, R, MPFR_RNDN);
        mpfr_add(z[i].re, z[i].re, t1, MPFR_RNDN);
        continue;
      }
      cdiv(num, b, db);  // Newton correction
      // acc = sum over j != i of 1/(z_i - z_j)
      mpfr_set_ui(acc.re, 0, MPFR_RNDN);
      mpfr_set_ui(acc.im, 0, MPFR_RNDN);
      bool coincide = false;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        mpfr_sub(tmp.re, z[i].re, z[j].re, MPFR_RNDN);
        mpfr_sub(tmp.im, z[i].im, z[j].im, MPFR_RNDN);
        if (mpfr_zero_p(tmp.re) && mpfr_zero_p(tmp.im)) {
          coincide = true;
          break;
        }
        // reuse w as the inverse slot to avoid an extra allocation
        mpfr_set_ui(w.re, 1, MPFR_RNDN);
        mpfr_set_ui(w.im, 0, MPFR_RNDN);
        cdiv(w, w, tmp);
        mpfr_add(acc.re, acc.re, w.re, MPFR_RNDN);
        mpfr_add(acc.im, acc.im, w.im, MPFR_RNDN);
      }
      if (coincide) {
        mpfr_mul(t1, thresh, R, MPFR_RNDN);
        mpfr_add(z[i].re, z[i].re, t1, MPFR_RNDN);
        continue;
      }
      // w = num / (1 - num*acc)
      cmul_assign(acc, num);
      mpfr_ui_sub(acc.re, 1, acc.re, MPFR_RNDN);
      mpfr_neg(acc.im, acc.im, MPFR_RNDN);
      if (mpfr_zero_p(acc.re) && mpfr_zero_p(acc.im)) {
        mpfr_set(w.re, num.re, MPFR_RNDN);
        mpfr_set(w.im, num.im, MPFR_RNDN);
      } else {
        cdiv(w, num, acc);
      }
      mpfr_sub(z[i].re, z[i].re, w.re, MPFR_RNDN);
      mpfr_sub(z[i].im, z[i].im, w.im, MPFR_RNDN);
      // relative movement
      mpfr_abs(t1, w.re, MPFR_RNDN);
      mpfr_abs(t2, w.im, MPFR_RNDN);
      mpfr_add(mag, t1, t2, MPFR_RNDN);
      mpfr_abs(t1, z[i].re, MPFR_RNDN);
      mpfr_abs(t2, z[i].im, MPFR_RNDN);
      mpfr_add(t1, t1, t2, MPFR_RNDN);
      mpfr_add_ui(t1, t1, 1, MPFR_RNDN);
      mpfr_div(mag, mag, t1, MPFR_RNDN);
      mpfr_max(moved, moved, mag, MPFR_RNDN);
    }
    if (mpfr_cmp(moved, thresh) < 0) break;
  }

  std::vector<std::pair<mpq_class, mpq_class>> out;
  out.reserve(d);
  for (int i = 0; i < d; ++i) out.emplace_back(to_q(z[i].re), to_q(z[i].im));

  for (auto& c : z) c_clear(c);
  for (auto& c : coef) c_clear(c);
  c_clear(b);
  c_clear(db);
  c_clear(num);
  c_clear(acc);
  c_clear(tmp);
  c_clear(w);
  mpfr_clears(R, t1, t2, pi, ang, den, thresh, moved, mag, (mpfr_ptr)nullptr);
  return out;
}

// Exact |f(x + iy)|^2 for rational x, y.
mpq_class abs2_eval(const IntPoly& f, const mpq_class& x, const mpq_class& y) {
  mpq_class br(f.lead()), bi(0);
  for (int k = f.degree() - 1; k >= 0; --k) {
    mpq_class nr = br * x - bi * y + mpq_class(f[k]);
    bi = br * y + bi * x;
    br = nr;
  }
  return br * br + bi * bi;
}

// Certify one Aberth output set; empty result means certification failed at
// this precision (colliding points or oversized disks).
std::vector<RootBox> certify(const IntPoly& f,
                             const std::vector<std::pair<mpq_class, mpq_class>>& z,
                             const mpq_class& rad2_cap) {
  const int d = f.degree();
  std::vector<RootBox> boxes(d);
  mpq_class lc2(f.lead() * f.lead());
  for (int i = 0; i < d; ++i) {
    mpq_class D(1);
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      mpq_class dr = z[i].first - z[j].first;
      mpq_class di = z[i].second - z[j].second;
      mpq_class dist2 = dr * dr + di * di;
      if (dist2 == 0) return {};
      D *= dist2;
    }
    mpq_class F = abs2_eval(f, z[i].first, z[i].second);
    boxes[i] = RootBox{z[i].first, z[i].second,
                       mpq_class(d) * mpq_class(d) * F / (lc2 * D)};
    if (boxes[i].rad2 > rad2_cap) return {};
  }
  // pairwise disjoint: dist^2 > 2*(r_i^2 + r_j^2) implies dist > r_i + r_j
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      mpq_class dr = boxes[i].re - boxes[j].re;
      mpq_class di = boxes[i].im - boxes[j].im;
      if (dr * dr + di * di <= 2 * (boxes[i].rad2 + boxes[j].rad2)) return {};
    }
  return boxes;
}

// All roots of squarefree f enclosed in pairwise disjoint disks with squared
// radius <= rad2_cap.
std::vector<RootBox> isolate_roots(const IntPoly& f, const mpq_class& rad2_cap) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("root isolation needs degree >= 1");
  if (d == 1) {
    mpq_class root(-f[0], f[1]);
    root.canonicalize();
    return {RootBox{root, mpq_class(0), mpq_class(0)}};
  }
  for (mpfr_prec_t P = 128; P <= 16384; P *= 2) {
    auto z = aberth(f, P);
    auto boxes = certify(f, z, rad2_cap);
    if (!boxes.empty()) return boxes;
  }
  throw std::runtime_error("root certification did not converge (non-squarefree input?)");
}

// upper/lower sqrt of an exact rational, as MPFR at 128 bits
void sqrt_dir(mpfr_t out, const mpq_class& q, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 128);
  mpfr_set_q(t, q.get_mpq_t(), rnd);
  mpfr_sqrt(out, t, rnd);
  mpfr_clear(t);
}

}  // namespace

void mahler_log_interval(const IntPoly& f, double target_width, double& lo, double& hi) {
  if (f.degree() < 1) throw std::invalid_argument("need degree >= 1");
  mpq_class rad2_cap(1, 1);
  {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 24);
    rad2_cap = mpq_class(1) / mpq_class(den);
  }
  for (int attempt = 0; attempt < 8; ++attempt) {
    rad2_cap /= 1000000;
    auto boxes = isolate_roots(f, rad2_cap);
    mpfr_t slo, shi, t, r;
    mpfr_init2(slo, 128);
    mpfr_init2(shi, 128);
    mpfr_init2(t, 128);
    mpfr_init2(r, 128);
    // log |lead|
    mpfr_set_z(t, f.lead().get_mpz_t(), MPFR_RNDN);
    mpfr_abs(t, t, MPFR_RNDN);
    mpfr_log(slo, t, MPFR_RNDD);
    mpfr_log(shi, t, MPFR_RNDU);
    for (auto& b : boxes) {
      mpq_class m2 = b.re * b.re + b.im * b.im;
      // |root| in [sqrt_down(m2) - sqrt_up(rad2), sqrt_up(m2) + sqrt_up(rad2)]
      sqrt_dir(t, m2, MPFR_RNDD);
      sqrt_dir(r, b.rad2, MPFR_RNDU);
      mpfr_sub(t, t, r, MPFR_RNDD);
      if (mpfr_cmp_ui(t, 1) > 0) {
        mpfr_log(t, t, MPFR_RNDD);
        mpfr_add(slo, slo, t, MPFR_RNDD);
      }
      sqrt_dir(t, m2, MPFR_RNDU);
      mpfr_add(t, t, r, MPFR_RNDU);
      if (mpfr_cmp_ui(t, 1) > 0) {
        mpfr_log(t, t, MPFR_RNDU);
        mpfr_add(shi, shi, t, MPFR_RNDU);
      }
    }
    lo = mpfr_get_d(slo, MPFR_RNDD);
    hi = mpfr_get_d(shi, MPFR_RNDU);
    mpfr_clears(slo, shi, t, r, (mpfr_ptr)nullptr);
    if (hi - lo < target_width) return;
  }
  throw std::runtime_error("could not certify Mahler measure to requested width");
}

std::vector<EmbeddingBox> complex_embeddings(const FieldElement& x, unsigned precision) {
  if (precision < 64) throw std::invalid_argument("precision must be >= 64");
  IntPoly mp = minimal_polynomial(x);
  // squared radius cap 2^(2 - 2*precision) certifies error <= 2^(1 - precision)
  mpq_class cap;
  mpz_ui_pow_ui(cap.get_den().get_mpz_t(), 2, 2 * precision - 2);
  cap.get_num() = 1;
  cap.canonicalize();
  auto boxes = isolate_roots(mp, cap);
  std::sort(boxes.begin(), boxes.end(), [](const RootBox& a, const RootBox& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  std::vector<EmbeddingBox> out;
  out.reserve(boxes.size());
  for (auto& b : boxes) {
    EmbeddingBox e;
    e.re_exact = b.re;
    e.im_exact = b.im;
    e.re = b.re.get_d();
    e.im = b.im.get_d();
    e.err_exp2 = 1 - static_cast<int>(precision);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace bogocert

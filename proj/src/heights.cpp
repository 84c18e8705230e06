#include <bogocert/heights.hpp>

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bogocert {

HeightValue weil_height(const FieldElement& x) {
  if (x.is_zero()) throw std::invalid_argument("height of zero is undefined");
  IntPoly mp = minimal_polynomial(x);
  int d = mp.degree();
  double lo, hi;
  mahler_log_interval(mp, 5e-11, lo, hi);
  lo = std::nextafter(lo / d, -1.0);
  hi = std::nextafter(hi / d, std::numeric_limits<double>::infinity());
  if (lo < 0) lo = 0;  // Mahler measure of an integer polynomial is >= 1
  return {lo, hi};
}

double lower_bound(const BoundParams& params) {
  if (params.a < 1 || params.b < 1) throw std::invalid_argument("a, b must be >= 1");
  if (!(params.rho > 0)) throw std::invalid_argument("rho must be positive");
  if (params.s_size < 1) throw std::invalid_argument("|S| must be >= 1");
  if (params.degree_ratio <= 0 || params.degree_ratio > 1)
    throw std::invalid_argument("degree ratio must lie in (0, 1]");
  double ratio = params.degree_ratio.get_d();
  return (params.s_size * ratio * params.rho * std::log(double(params.p)) - std::log(2.0)) /
         (params.a + params.b);
}

mpq_class accelerate(uint64_t p, const mpq_class& rho, const mpz_class& lambda) {
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (p < 2) throw std::invalid_argument("p must be a prime");
  mpq_class s = rho;
  s.canonicalize();  // tolerate non-canonical caller input
  mpq_class crit(1, static_cast<unsigned long>(p - 1));  // p*s <= s+1 iff s <= 1/(p-1)
  mpz_class left = lambda;
  // multiplicative phase: strictly below the crossover the min picks p*s
  while (left > 0 && s < crit) {
    s *= static_cast<unsigned long>(p);
    --left;
  }
  // additive phase: from the crossover on, the min picks s+1 forever
  return s + mpq_class(left);
}

FieldElement special_element(const FieldElement& x, const AbelianAutomorphism& tau, long g) {
  if (g <= 1) throw std::invalid_argument("g must be an integer > 1");
  if (x.is_zero()) throw std::invalid_argument("x must be nonzero");
  if (torsion_order(x)) throw std::invalid_argument("x must not be a root of unity");
  FieldElement beta = tau.apply(x) / x.pow(g);
  if (torsion_order(beta))
    throw std::logic_error("beta is torsion; this contradicts x being non-torsion");
  HeightValue hx = weil_height(x);
  HeightValue hb = weil_height(beta);
  if (hb.lower > (g + 1) * hx.upper)
    throw std::logic_error("height inequality h(x) >= h(beta)/(g+1) failed");
  return beta;
}

BogomolovConstant bogomolov_constant(uint64_t p, const mpq_class& C1, const mpz_class& C2) {
  if (p < 3) throw std::invalid_argument("p must be >= 3");
  if (C1 <= 0) throw std::invalid_argument("C1 must be positive");
  if (C2 < 1) throw std::invalid_argument("C2 must be a positive integer");
  mpq_class c1 = C1;
  c1.canonicalize();  // tolerate non-canonical caller input
  mpq_class s = 1 / c1;
  mpq_class crit(1, static_cast<unsigned long>(p - 1));
  mpz_class lambda = 0;
  // walk the multiplicative phase explicitly; it only lasts about log_p(C1) steps
  while (s < C2 && s < crit) {
    s *= static_cast<unsigned long>(p);
    ++lambda;
  }
  if (s < C2) {
    // additive phase: need the least t with s + t >= C2
    mpq_class gap = mpq_class(C2) - s;
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), gap.get_num().get_mpz_t(), gap.get_den().get_mpz_t());
    lambda += t;
  }

  BogomolovConstant out;
  out.p = p;
  out.C1 = C1;
  out.C2 = C2;
  out.lambda = lambda;
  out.c_closed = "log(" + std::to_string(p) + "/2)/(2*" + std::to_string(p) + "^" +
                 lambda.get_str() + ")";
  // log10 c = log10(log(p/2)) - log10(2) - lambda*log10(p)
  out.c_log10 = std::log10(std::log(p / 2.0)) - std::log10(2.0) -
                mpz_get_d(lambda.get_mpz_t()) * std::log10(double(p));
  if (lambda < 512) {
    mpfr_t t, den, lo, hi;
    mpfr_init2(t, 128);
    mpfr_init2(den, 128);
    mpfr_init2(lo, 128);
    mpfr_init2(hi, 128);
    unsigned long lam = static_cast<unsigned long>(lambda.get_ui());
    // lower end: round everything toward smaller c
    mpfr_set_ui(t, p, MPFR_RNDD);
    mpfr_div_ui(t, t, 2, MPFR_RNDD);
    mpfr_log(t, t, MPFR_RNDD);
    mpfr_ui_pow_ui(den, p, lam, MPFR_RNDU);
    mpfr_mul_ui(den, den, 2, MPFR_RNDU);
    mpfr_div(lo, t, den, MPFR_RNDD);
    mpfr_set_ui(t, p, MPFR_RNDU);
    mpfr_div_ui(t, t, 2, MPFR_RNDU);
    mpfr_log(t, t, MPFR_RNDU);
    mpfr_ui_pow_ui(den, p, lam, MPFR_RNDD);
    mpfr_mul_ui(den, den, 2, MPFR_RNDD);
    mpfr_div(hi, t, den, MPFR_RNDU);
    double clo = mpfr_get_d(lo, MPFR_RNDD);
    double chi = mpfr_get_d(hi, MPFR_RNDU);
    if (clo > 0 && std::isfinite(chi)) out.c_value = HeightValue{clo, chi};
    mpfr_clears(t, den, lo, hi, (mpfr_ptr)nullptr);
  }
  return out;
}

}  // namespace bogocert

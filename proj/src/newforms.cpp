#include <bogocert/newforms.hpp>

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bogocert {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw SchemaError("unparseable rational coordinate: " + s);
  q.canonicalize();
  return q;
}

// Order of a root of unity, or 0 if v^e != 1 for all e <= cap.
uint64_t unity_order(const FieldElement& v, const FieldElement& one, uint64_t cap) {
  FieldElement acc = v;
  for (uint64_t e = 1; e <= cap; ++e) {
    if (acc == one) return e;
    acc = acc * v;
  }
  return 0;
}

mpz_class pow_ui(uint64_t base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// First unramified degree-1 factor, if any (factors come root-ascending).
std::optional<uint64_t> degree1_root(const PrimeFactorization& split) {
  for (const auto& fac : split.factors)
    if (fac.e == 1 && fac.f == 1 && fac.root) return *fac.root;
  return std::nullopt;
}

}  // namespace

NewformRecord NewformRecord::from_payload(const std::string& payload) {
  validate_newform_payload(payload);
  json j = json::parse(payload);

  NewformRecord rec;
  rec.label = j.at("label").get<std::string>();
  rec.level = j.at("level").get<uint64_t>();
  rec.weight = j.at("weight").get<uint64_t>();
  rec.char_conductor = j.at("char_conductor").get<uint64_t>();
  rec.char_order = j.at("char_order").get<uint64_t>();
  rec.an_bound = j.at("an_bound").get<uint64_t>();
  rec.cm = j.at("cm").get<bool>();

  std::vector<long> poly;
  for (const auto& c : j.at("field_poly")) poly.push_back(c.get<long>());
  rec.hecke_field = NumberField::generic_field(IntPoly::from_ints(poly));

  auto parse_elem = [&](const json& arr) {
    std::vector<mpq_class> coords;
    for (const auto& s : arr) coords.push_back(parse_rational(s.get<std::string>()));
    return rec.hecke_field->element(std::move(coords));
  };
  for (const auto& [key, val] : j.at("char_values").items())
    rec.char_values.emplace(std::stoull(key), parse_elem(val));
  for (const auto& [key, val] : j.at("an").items())
    rec.an.emplace(std::stoull(key), parse_elem(val));

  const FieldElement one = rec.hecke_field->one();
  if (rec.an.at(1) != one) throw SchemaError("a_1 != 1 in " + rec.label);

  // The character values must be roots of unity whose orders join to the
  // stated order, and the table must be multiplicative.
  uint64_t joint = 1;
  for (const auto& [u, v] : rec.char_values) {
    uint64_t ord = unity_order(v, one, rec.char_order);
    if (ord == 0)
      throw SchemaError("character value at " + std::to_string(u) +
                        " is not a root of unity of order dividing " +
                        std::to_string(rec.char_order));
    joint = std::lcm(joint, ord);
  }
  if (joint != rec.char_order)
    throw SchemaError("character values have joint order " + std::to_string(joint) +
                      ", payload claims " + std::to_string(rec.char_order));
  for (const auto& [a, va] : rec.char_values)
    for (const auto& [b, vb] : rec.char_values) {
      uint64_t ab = (a * b) % rec.char_conductor;
      if (ab == 0) ab = rec.char_conductor;  // conductor 1 only
      if (va * vb != rec.char_values.at(ab))
        throw SchemaError("character table is not multiplicative at (" +
                          std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  return rec;
}

unsigned NewformRecord::hecke_degree() const {
  return static_cast<unsigned>(hecke_field->degree());
}

const FieldElement& NewformRecord::coefficient(uint64_t n) const {
  auto it = an.find(n);
  if (it == an.end())
    throw DataUnavailable("a_" + std::to_string(n) + " of " + label +
                          " is outside the stored range [1, " +
                          std::to_string(an_bound) + "]");
  return it->second;
}

FieldElement NewformRecord::char_value(uint64_t m) const {
  uint64_t u = m % char_conductor;
  if (u == 0) u = char_conductor;
  if (std::gcd(u, char_conductor) != 1)
    throw std::invalid_argument("character undefined at " + std::to_string(m) +
                                ": shares a factor with the conductor " +
                                std::to_string(char_conductor));
  return char_values.at(u);
}

std::vector<unsigned> NewformRecord::char_orbit_exponents() const {
  const FieldElement one = hecke_field->one();
  // Pick a value of full order as the reference root of unity; the image of
  // a multiplicative character is cyclic, so one exists.
  const FieldElement* z = nullptr;
  for (const auto& [u, v] : char_values)
    if (unity_order(v, one, char_order) == char_order) {
      z = &v;
      break;
    }
  if (!z) throw std::logic_error("character image is not cyclic");

  std::vector<FieldElement> powers;
  powers.reserve(char_order);
  powers.push_back(one);
  for (uint64_t e = 1; e < char_order; ++e) powers.push_back(powers.back() * *z);

  std::vector<unsigned> expo;
  for (const auto& [u, v] : char_values) {
    uint64_t e = char_order;
    for (uint64_t i = 0; i < char_order; ++i)
      if (powers[i] == v) {
        e = i;
        break;
      }
    if (e == char_order) throw std::logic_error("character image is not cyclic");
    expo.push_back(static_cast<unsigned>(e));
  }

  // Normalize away the choice of z: minimize over Galois twists of the orbit.
  std::vector<unsigned> best = expo;
  for (uint64_t t = 2; t < char_order; ++t) {
    if (std::gcd(t, char_order) != 1) continue;
    std::vector<unsigned> cand(expo.size());
    for (size_t i = 0; i < expo.size(); ++i)
      cand[i] = static_cast<unsigned>((expo[i] * t) % char_order);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

QuerySpec NewformRecord::newspace_query(uint64_t lvl) const {
  return QuerySpec::newspace_dim(lvl, weight, char_conductor, char_order,
                                 char_orbit_exponents());
}

AssumptionReport check_assumption1(const NewformRecord& rec, uint64_t p) {
  if (rec.cm)
    throw std::invalid_argument(rec.label +
                                " has complex multiplication; the open-image "
                                "route does not apply");
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");

  AssumptionReport rep;
  rep.p = p;
  rep.P0 = rec.level % p != 0;
  rep.P1 = rec.coefficient(p).is_zero();
  uint64_t km1 = rec.weight - 1;
  rep.P3 = p >= 5 && km1 % p != 0 && km1 % ((p + 1) / 2) != 0;
  rep.splitting = splitting_type(*rec.hecke_field, p);
  return rep;
}

std::pair<uint64_t, uint64_t> frobenius_charpoly(const NewformRecord& rec, uint64_t r,
                                                 uint64_t p, uint64_t root) {
  if (!is_prime_u64(r)) throw std::invalid_argument("auxiliary prime must be prime");
  if (r == p || rec.level % r == 0)
    throw std::invalid_argument("auxiliary prime must avoid p and the level");
  const FieldElement& ar = rec.coefficient(r);
  FieldElement det = rec.char_value(r) *
                     rec.hecke_field->from_rational(mpq_class(pow_ui(r, rec.weight - 1)));
  return {residue_image(ar, p, root), residue_image(det, p, root)};
}

bool irreducible_quadratic(uint64_t b, uint64_t c, uint64_t p) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be an odd prime");
  using u128 = unsigned __int128;
  b %= p;
  c %= p;
  uint64_t bb = static_cast<uint64_t>(u128(b) * b % p);
  uint64_t fourc = static_cast<uint64_t>(u128(4) * c % p);
  uint64_t disc = (bb + p - fourc) % p;
  if (disc == 0) return false;  // double root
  return powmod_u64(disc, (p - 1) / 2, p) == p - 1;
}

BigImageEvidence mascot_diamond_check(const NewformRecord& rec, uint64_t p, uint64_t r,
                                      uint64_t l, LmfdbClient& client) {
  if (rec.cm)
    throw std::invalid_argument(rec.label +
                                " has complex multiplication; the open-image "
                                "route does not apply");
  if (rec.weight != 2)
    throw std::invalid_argument("lower-level descent is implemented for weight 2 only");
  if (!is_prime_u64(l) || rec.level % l != 0 || (rec.level / l) % l == 0)
    throw std::invalid_argument("l must divide the level exactly once");
  if (l == p || rec.char_conductor % l == 0)
    throw std::invalid_argument("l must avoid p and the conductor");

  auto root = degree1_root(splitting_type(*rec.hecke_field, p));
  if (!root)
    throw NotApplicable("p = " + std::to_string(p) +
                        " has no unramified degree-1 factor in the coefficient field");

  BigImageEvidence ev;
  ev.p = p;
  ev.root = *root;
  ev.r = r;
  ev.l = l;
  std::tie(ev.charpoly_b, ev.charpoly_c) = frobenius_charpoly(rec, r, p, *root);
  ev.irreducible = irreducible_quadratic(ev.charpoly_b, ev.charpoly_c, p);

  uint64_t target = rec.level / l;
  for (uint64_t M = rec.char_conductor; M <= target; M += rec.char_conductor) {
    if (target % M != 0) continue;
    uint64_t dim = newspace_dim_of_payload(client.fetch(rec.newspace_query(M)));
    ev.lower_dims.emplace_back(M, dim);
  }
  ev.lower_level_empty =
      !ev.lower_dims.empty() &&
      std::all_of(ev.lower_dims.begin(), ev.lower_dims.end(),
                  [](const auto& md) { return md.second == 0; });
  return ev;
}

CertifyResult certify(const NewformRecord& rec, uint64_t p_bound, LmfdbClient& client) {
  if (rec.cm)
    throw std::invalid_argument(rec.label +
                                " has complex multiplication; the open-image "
                                "route does not apply");
  CertifyResult out;
  for (uint64_t p = 2; p <= p_bound; ++p) {
    if (!is_prime_u64(p)) continue;
    std::string reason;
    if (rec.level % p == 0) {
      out.failures.push_back({p, "divides the level"});
      continue;
    }
    if (p > rec.an_bound) {
      out.failures.push_back({p, "a_p outside the stored coefficient range"});
      continue;
    }
    AssumptionReport rep = check_assumption1(rec, p);
    {
      std::vector<std::string> bad;
      if (!rep.P1) bad.push_back("a_p != 0");
      if (!rep.P3) bad.push_back("weight gap condition fails");
      if (!bad.empty()) {
        for (size_t i = 1; i < bad.size(); ++i) bad[0] += "; " + bad[i];
        out.failures.push_back({p, bad[0]});
        continue;
      }
    }
    auto root = degree1_root(rep.splitting);
    if (!root) {
      out.failures.push_back({p, "no degree-1 unramified factor in the coefficient field"});
      continue;
    }
    if (rec.weight != 2) {
      out.failures.push_back({p, "lower-level descent is implemented for weight 2 only"});
      continue;
    }

    // Smallest exact-level prime away from p and the conductor whose lower
    // levels all carry trivial new subspaces.
    uint64_t chosen_l = 0;
    bool any_l = false;
    for (uint64_t l = 2; l <= rec.level; ++l) {
      if (!is_prime_u64(l) || rec.level % l != 0) continue;
      if ((rec.level / l) % l == 0) continue;
      if (l == p || rec.char_conductor % l == 0) continue;
      any_l = true;
      uint64_t target = rec.level / l;
      bool all_zero = true;
      for (uint64_t M = rec.char_conductor; M <= target; M += rec.char_conductor) {
        if (target % M != 0) continue;
        if (newspace_dim_of_payload(client.fetch(rec.newspace_query(M))) != 0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) {
        chosen_l = l;
        break;
      }
    }
    if (!any_l) {
      out.failures.push_back({p, "no admissible exact-level prime"});
      continue;
    }
    if (chosen_l == 0) {
      out.failures.push_back(
          {p, "every admissible lower level carries a nonzero new subspace"});
      continue;
    }

    // Smallest auxiliary prime with irreducible Frobenius charpoly mod p.
    uint64_t chosen_r = 0;
    for (uint64_t r = 2; r <= rec.an_bound; ++r) {
      if (!is_prime_u64(r) || r == p || rec.level % r == 0) continue;
      auto [b, c] = frobenius_charpoly(rec, r, p, *root);
      if (irreducible_quadratic(b, c, p)) {
        chosen_r = r;
        break;
      }
    }
    if (chosen_r == 0) {
      out.failures.push_back(
          {p, "no auxiliary prime with irreducible charpoly in the stored range"});
      continue;
    }

    rep.P2 = mascot_diamond_check(rec, p, chosen_r, chosen_l, client);

    Certificate cert;
    cert.label = rec.label;
    cert.p = p;
    cert.root = *root;
    cert.report = rep;
    cert.bottom_degree = delta(p, rec.weight);
    for (unsigned n = 1; n <= 3; ++n) {
      auto filt = ramification_filtration(CrystallineParams::make(p, rec.weight, n));
      cert.filtration.push_back({n, filt.last_index, filt.last_group_order});
    }
    cert.C1 = mpz_class(p) * p;
    cert.C2 = pow_ui(p, 4ul * rec.hecke_degree());
    cert.central_g = central_exponent(p, 2);
    BogomolovConstant bc = bogomolov_constant(p, mpq_class(cert.C1), cert.C2);
    cert.lambda = bc.lambda;
    cert.c_closed = bc.c_closed;
    cert.c_log10 = bc.c_log10;
    cert.c_value = bc.c_value;
    cert.verdict = rep.verdict();
    out.certificate = std::move(cert);
    return out;
  }
  return out;
}

std::string certificate_json(const Certificate& cert) {
  ordered_json j;
  j["schema"] = "bogomolov-certificate/1";
  j["label"] = cert.label;
  j["verdict"] = cert.verdict;
  j["p"] = cert.p;
  j["root"] = cert.root;

  ordered_json asm1;
  asm1["p_exact"] = cert.report.P0;
  asm1["a_p_zero"] = cert.report.P1;
  asm1["weight_gap"] = cert.report.P3;
  if (cert.report.P2) {
    const BigImageEvidence& ev = *cert.report.P2;
    ordered_json big;
    big["r"] = ev.r;
    big["charpoly_b"] = ev.charpoly_b;
    big["charpoly_c"] = ev.charpoly_c;
    big["irreducible"] = ev.irreducible;
    big["l"] = ev.l;
    ordered_json dims = ordered_json::array();
    for (const auto& [lvl, dim] : ev.lower_dims) dims.push_back({lvl, dim});
    big["lower_dims"] = dims;
    big["lower_level_empty"] = ev.lower_level_empty;
    asm1["big_image"] = big;
  }
  j["assumptions"] = asm1;

  ordered_json split = ordered_json::array();
  for (const auto& fac : cert.report.splitting.factors) {
    ordered_json f;
    f["e"] = fac.e;
    f["f"] = fac.f;
    if (fac.root) f["root"] = *fac.root;
    split.push_back(f);
  }
  j["splitting"] = split;

  ordered_json loc;
  loc["bottom_degree"] = cert.bottom_degree;
  ordered_json filt = ordered_json::array();
  for (const auto& row : cert.filtration) {
    ordered_json fr;
    fr["n"] = row.n;
    fr["last_break"] = row.last_break.get_str();
    fr["tail_order"] = row.tail_order.get_str();
    filt.push_back(fr);
  }
  loc["filtration"] = filt;
  j["local"] = loc;

  ordered_json cons;
  cons["C1"] = cert.C1.get_str();
  cons["C2"] = cert.C2.get_str();
  cons["central_exponent"] = cert.central_g.get_str();
  cons["lambda"] = cert.lambda.get_str();
  cons["c_closed"] = cert.c_closed;
  cons["c_log10"] = cert.c_log10;
  if (cert.c_value) cons["c_interval"] = {cert.c_value->lower, cert.c_value->upper};
  j["constants"] = cons;

  return j.dump(1);
}

}  // namespace bogocert

// bcert: command-line front end for the certification library.
// Exit codes: 0 check passed, 1 check failed, 2 usage error, 3 data missing.
#include <CLI11.hpp>
#include <json.hpp>

#include <bogocert/heights.hpp>
#include <bogocert/localfields.hpp>
#include <bogocert/matgroups.hpp>
#include <bogocert/newforms.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace bogocert;
using nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNoData = 3;

std::vector<long> parse_longs(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

std::vector<mpq_class> parse_rationals(const std::string& csv) {
  std::vector<mpq_class> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    mpq_class q;
    if (q.set_str(item, 10) != 0 || q.get_den() == 0)
      throw std::invalid_argument("bad rational: " + item);
    q.canonicalize();
    out.push_back(q);
  }
  if (out.empty()) throw std::invalid_argument("empty coordinate list");
  return out;
}

mpq_class parse_mpq(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

mpz_class parse_mpz(const std::string& s) {
  mpz_class z;
  if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer: " + s);
  return z;
}

struct GlobalOpts {
  bool online = false;
  bool refresh = false;
  bool json = false;
  std::string cache_dir;
  std::string fixtures_dir;

  LmfdbClient client() const {
    ClientOptions o;
    o.policy = refresh  ? FetchPolicy::refresh
               : online ? FetchPolicy::cache_first
                        : FetchPolicy::offline_only;
    o.cache_dir = cache_dir;
    o.fixtures_dir = fixtures_dir;
    return LmfdbClient(o);
  }
};

void emit(const GlobalOpts& g, const ordered_json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(1) << "\n";
  else
    std::cout << text;
}

// ---- subcommand bodies ----

int run_height(const GlobalOpts& g, const std::string& minpoly, const std::string& coords) {
  FieldPtr field = NumberField::generic_field(IntPoly::from_ints(parse_longs(minpoly)));
  FieldElement x = coords.empty() ? field->generator() : field->element(parse_rationals(coords));
  HeightValue h = weil_height(x);
  char buf[160];
  std::snprintf(buf, sizeof buf, "h = [%.17g, %.17g]\n", h.lower, h.upper);
  emit(g, ordered_json{{"lower", h.lower}, {"upper", h.upper}}, buf);
  return kPass;
}

int run_bound(const GlobalOpts& g, const BoundParams& params) {
  double v = lower_bound(params);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g\n", v);
  emit(g, ordered_json{{"bound", v}, {"positive", v > 0}}, buf);
  return kPass;
}

int run_accel(const GlobalOpts& g, uint64_t p, const std::string& rho, const std::string& lambda) {
  mpq_class s = accelerate(p, parse_mpq(rho), parse_mpz(lambda));
  emit(g, ordered_json{{"value", s.get_str()}}, s.get_str() + "\n");
  return kPass;
}

int run_const(const GlobalOpts& g, uint64_t p, const std::string& c1, const std::string& c2) {
  BogomolovConstant bc = bogomolov_constant(p, parse_mpq(c1), parse_mpz(c2));
  ordered_json j{{"p", p},
                 {"lambda", bc.lambda.get_str()},
                 {"c_closed", bc.c_closed},
                 {"c_log10", bc.c_log10}};
  std::ostringstream os;
  os << "lambda = " << bc.lambda.get_str() << "\nc = " << bc.c_closed
     << "  (log10 ~ " << bc.c_log10 << ")\n";
  if (bc.c_value) {
    j["c_interval"] = {bc.c_value->lower, bc.c_value->upper};
    char buf[96];
    std::snprintf(buf, sizeof buf, "c in [%.17g, %.17g]\n", bc.c_value->lower,
                  bc.c_value->upper);
    os << buf;
  }
  emit(g, j, os.str());
  return kPass;
}

int run_group_normal_closure(const GlobalOpts& g, uint64_t p) {
  auto Fp = FiniteRing::zmod_pn(p, 1);
  MatGroup gl2 = group_closure(MatGroup{Fp, gl2_generators(Fp), {}});
  // cyclic subgroup of order p^2-1: powers of the companion matrix of an
  // irreducible quadratic (a non-split torus)
  MatGroup torus{Fp, {}, {}};
  for (long t = 0; t < static_cast<long>(p) && !torus.enumerated(); ++t)
    for (long d = 1; d < static_cast<long>(p) && !torus.enumerated(); ++d) {
      if (!irreducible_mod_p(IntPoly::from_ints({d, -t, 1}), p)) continue;
      MatGroup cyc = group_closure(MatGroup{Fp, {Mat2::from_ints(Fp, 0, -d, 1, t)}, {}});
      if (cyc.order() == p * p - 1) torus = std::move(cyc);
    }
  if (!torus.enumerated()) throw std::runtime_error("no non-split torus found");
  MatGroup closure = normal_closure(MatGroup{Fp, torus.generators, {}}, gl2);
  bool full = closure.order() == gl2.order();
  std::ostringstream os;
  os << "torus order " << torus.order() << ", normal closure order " << closure.order()
     << ", ambient order " << gl2.order() << (full ? " (full group)" : " (proper)") << "\n";
  emit(g,
       ordered_json{{"p", p},
                    {"torus_order", torus.order()},
                    {"closure_order", closure.order()},
                    {"ambient_order", gl2.order()},
                    {"full", full}},
       os.str());
  return full ? kPass : kFail;
}

int run_group_center(const GlobalOpts& g, uint64_t p, unsigned n) {
  auto R = FiniteRing::zmod_pn(p, n);
  MatGroup gl2 = group_closure(MatGroup{R, gl2_generators(R), {}});
  MatGroup z = center(gl2);
  std::ostringstream os;
  os << "group order " << gl2.order() << ", center order " << z.order() << "\n";
  emit(g, ordered_json{{"order", gl2.order()}, {"center_order", z.order()}}, os.str());
  return kPass;
}

int run_group_adjoint(const GlobalOpts& g, uint64_t p, bool split, const std::string& seed) {
  RingPtr R = split ? FiniteRing::product_field(p, {1, 1}) : FiniteRing::product_field(p, {2});
  std::vector<long> e = parse_longs(seed);
  if (e.size() != 4) throw std::invalid_argument("seed needs 4 comma-separated entries");
  Mat2 m = Mat2::from_ints(R, e[0], e[1], e[2], e[3]);
  MatSubspace cl = adjoint_closure(make_subspace(R, {m}));
  std::ostringstream os;
  os << "closure dimension " << cl.dim() << " over F_" << p << (split ? " x F_" : "^2")
     << (split ? std::to_string(p) : "") << "\n";
  emit(g, ordered_json{{"p", p}, {"split", split}, {"dim", cl.dim()}}, os.str());
  return kPass;
}

int run_group_fiber(const GlobalOpts& g, unsigned copies) {
  // permutation group on three letters glued over the sign character
  auto F2 = FiniteRing::zmod_pn(2, 1);
  AbstractGroup s3 =
      abstract_from_matgroup(group_closure(MatGroup{F2, gl2_generators(F2), {}}));
  AbstractGroup c2 = cyclic_group(2);
  GroupHom sign{&s3, &c2, std::vector<unsigned>(s3.order(), 0)};
  for (unsigned i = 0; i < s3.order(); ++i) {
    unsigned ord = 1, x = i;
    while (x != 0) {
      x = s3.mul[x][i];
      ++ord;
    }
    sign.map[i] = ord == 2 ? 1 : 0;
  }
  if (!is_homomorphism(sign) || !is_surjective(sign))
    throw std::runtime_error("sign character construction failed");
  std::vector<const AbstractGroup*> gs(copies, &s3);
  std::vector<GroupHom> homs(copies, sign);
  FiberProduct fp = fiber_product(gs, homs);
  auto zc = group_center(fp.group);
  std::ostringstream os;
  os << copies << "-fold fiber product order " << fp.group.order() << ", center order "
     << zc.size() << "\n";
  emit(g,
       ordered_json{{"copies", copies},
                    {"order", fp.group.order()},
                    {"center_order", zc.size()}},
       os.str());
  return kPass;
}

int run_local_gal(const GlobalOpts& g, uint64_t p, uint64_t k, unsigned n) {
  GaloisStructure gs = gal_structure(CrystallineParams::make(p, k, n));
  std::ostringstream inv;
  for (size_t i = 0; i < gs.invariants.size(); ++i) {
    if (i) inv << ",";
    inv << gs.invariants[i].get_str();
  }
  std::ostringstream os;
  os << "invariants " << inv.str() << ", order " << gs.order.get_str()
     << (gs.verified_by_enumeration ? " (verified by enumeration)" : " (closed form)")
     << "\n";
  ordered_json j;
  j["invariants"] = ordered_json::array();
  for (const auto& v : gs.invariants) j["invariants"].push_back(v.get_str());
  j["order"] = gs.order.get_str();
  j["verified_by_enumeration"] = gs.verified_by_enumeration;
  emit(g, j, os.str());
  return kPass;
}

int run_local_ram(const GlobalOpts& g, uint64_t p, uint64_t k, unsigned n) {
  RamificationFiltration f = ramification_filtration(CrystallineParams::make(p, k, n));
  std::ostringstream os;
  ordered_json rows = ordered_json::array();
  for (const auto& b : f.breaks) {
    os << "[" << b.lo.get_str() << ", " << b.hi.get_str() << "]  fixes level "
       << b.fixed_level << "  order " << b.group_order.get_str() << "\n";
    rows.push_back(ordered_json{{"lo", b.lo.get_str()},
                                {"hi", b.hi.get_str()},
                                {"fixed_level", b.fixed_level},
                                {"order", b.group_order.get_str()}});
  }
  os << "last break " << f.last_index.get_str() << ", tail order "
     << f.last_group_order.get_str() << "\n";
  emit(g,
       ordered_json{{"breaks", rows},
                    {"last_break", f.last_index.get_str()},
                    {"tail_order", f.last_group_order.get_str()}},
       os.str());
  return kPass;
}

int run_local_norm(const GlobalOpts& g, uint64_t p, uint64_t k, unsigned n) {
  NormCheck nc = norm_surjective(p, n, k);
  std::ostringstream os;
  os << (nc.surjective ? "surjective" : "not surjective")
     << (nc.degenerate ? " (degenerate: p divides k-1)" : "")
     << (nc.by_enumeration ? " [enumerated]" : "") << "\n";
  emit(g,
       ordered_json{{"surjective", nc.surjective},
                    {"degenerate", nc.degenerate},
                    {"by_enumeration", nc.by_enumeration}},
       os.str());
  return nc.surjective ? kPass : kFail;
}

int run_local_constants(const GlobalOpts& g, uint64_t p, uint64_t k, unsigned degree,
                        unsigned nmax) {
  Assumption3Report rep = assumption3_constants(p, k, degree, nmax);
  std::ostringstream os;
  os << "C1 = " << rep.C1.get_str() << ", C2 = " << rep.C2.get_str() << "\n";
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    os << "n=" << r.n << "  e_n=" << r.e_n.get_str() << "  i_n=" << r.i_n.get_str()
       << "  ratio_ok=" << (r.ratio_ok ? "yes" : "no") << "\n";
    rows.push_back(ordered_json{{"n", r.n},
                                {"e_n", r.e_n.get_str()},
                                {"i_n", r.i_n.get_str()},
                                {"ratio_ok", r.ratio_ok}});
  }
  os << (rep.all_ok ? "all ratios within bound\n" : "RATIO BOUND VIOLATED\n");
  emit(g,
       ordered_json{{"C1", rep.C1.get_str()},
                    {"C2", rep.C2.get_str()},
                    {"rows", rows},
                    {"all_ok", rep.all_ok}},
       os.str());
  return rep.all_ok ? kPass : kFail;
}

int run_newform_check(const GlobalOpts& g, const std::string& label, uint64_t p) {
  LmfdbClient client = g.client();
  NewformRecord rec = NewformRecord::from_payload(client.fetch(QuerySpec::newform(label)));
  AssumptionReport rep = check_assumption1(rec, p);
  std::optional<uint64_t> root;
  for (const auto& fac : rep.splitting.factors)
    if (fac.e == 1 && fac.f == 1 && fac.root) {
      root = *fac.root;
      break;
    }
  bool ok = rep.P0 && rep.P1 && rep.P3 && root.has_value();
  std::ostringstream os;
  os << label << " at p=" << p << ": level coprime " << (rep.P0 ? "yes" : "NO")
     << ", a_p zero " << (rep.P1 ? "yes" : "NO") << ", weight gap "
     << (rep.P3 ? "yes" : "NO") << ", degree-1 factor ";
  if (root)
    os << "at root " << *root;
  else
    os << "NONE";
  os << "\n";
  ordered_json j{{"label", label},
                 {"p", p},
                 {"level_coprime", rep.P0},
                 {"a_p_zero", rep.P1},
                 {"weight_gap", rep.P3}};
  if (root) j["root"] = *root;
  j["ok"] = ok;
  emit(g, j, os.str());
  return ok ? kPass : kFail;
}

int run_certify(const GlobalOpts& g, const std::string& label, uint64_t bound) {
  LmfdbClient client = g.client();
  NewformRecord rec = NewformRecord::from_payload(client.fetch(QuerySpec::newform(label)));
  CertifyResult res = certify(rec, bound, client);
  if (!res.certificate) {
    std::ostringstream os;
    os << "no certificate for " << label << " with p <= " << bound << "\n";
    ordered_json fails = ordered_json::array();
    for (const auto& f : res.failures) {
      os << "  p=" << f.p << ": " << f.reason << "\n";
      fails.push_back(ordered_json{{"p", f.p}, {"reason", f.reason}});
    }
    emit(g, ordered_json{{"label", label}, {"certificate", nullptr}, {"failures", fails}},
         os.str());
    return kFail;
  }
  const Certificate& cert = *res.certificate;
  if (g.json) {
    std::cout << certificate_json(cert) << "\n";
  } else {
    std::ostringstream os;
    os << "certificate for " << cert.label << ": p=" << cert.p << " (root " << cert.root
       << "), l=" << cert.report.P2->l << ", r=" << cert.report.P2->r << ", charpoly X^2-"
       << cert.report.P2->charpoly_b << "X+" << cert.report.P2->charpoly_c << " mod "
       << cert.p << "\n";
    os << "bottom degree " << cert.bottom_degree << ", C1 = " << cert.C1.get_str()
       << ", C2 = " << cert.C2.get_str() << "\n";
    os << "c = " << cert.c_closed << "  (log10 ~ " << cert.c_log10 << ")\n";
    os << "verdict: " << (cert.verdict ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
    std::cout << os.str();
  }
  return cert.verdict ? kPass : kFail;
}

int run_table(const GlobalOpts& g) {
  LmfdbClient client = g.client();
  TableReport report = reproduce_table(client);
  if (g.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& rr : report.rows) {
      ordered_json r{{"label", rr.computed.label},
                     {"level", rr.computed.level},
                     {"field", rr.computed.field_name},
                     {"conductor", rr.computed.conductor},
                     {"r", rr.computed.r},
                     {"p", rr.computed.p},
                     {"charpoly", quadratic_str(rr.computed.charpoly_c)},
                     {"verified", rr.checks_passed}};
      r["corrections"] = rr.mismatches;
      rows.push_back(r);
    }
    std::cout << ordered_json{{"rows", rows},
                              {"all_verified", report.all_verified()},
                              {"all_match", report.all_match()}}
                     .dump(1)
              << "\n";
  } else {
    std::cout << table_text(report);
    size_t exact = 0;
    for (const auto& rr : report.rows)
      if (rr.mismatches.empty()) ++exact;
    std::cout << exact << "/" << report.rows.size() << " rows match the published data; "
              << (report.all_verified() ? "all rows verified" : "VERIFICATION FAILED")
              << "\n";
  }
  return report.all_verified() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenform certification toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  bool offline = false;
  app.add_flag("--offline", offline, "bundled/cached data only (default)");
  app.add_flag("--online", g.online, "fetch missing payloads remotely");
  app.add_flag("--refresh", g.refresh, "refetch and overwrite cached payloads");
  app.add_flag("--json", g.json, "structured output");
  app.add_option("--cache", g.cache_dir, "cache directory (default: $BOGOCERT_CACHE)");
  app.add_option("--fixtures", g.fixtures_dir,
                 "fixtures directory (default: $BOGOCERT_FIXTURES)");

  // height
  auto* c_height = app.add_subcommand("height", "Weil height of an algebraic number");
  std::string minpoly, coords;
  c_height->add_option("--minpoly", minpoly, "integer coefficients, constant first")
      ->required();
  c_height->add_option("--coords", coords, "rational coordinates in the power basis");

  // bound
  auto* c_bound = app.add_subcommand("bound", "height lower bound from local data");
  BoundParams bp;
  std::string ratio = "1";
  c_bound->add_option("--a", bp.a)->required();
  c_bound->add_option("--b", bp.b)->required();
  c_bound->add_option("--rho", bp.rho)->required();
  c_bound->add_option("--S", bp.s_size)->required();
  c_bound->add_option("--ratio", ratio, "degree ratio as a rational")->required();
  c_bound->add_option("--p", bp.p)->required();

  // accel
  auto* c_accel = app.add_subcommand("accel", "iterate s -> min(p*s, s+1)");
  uint64_t ap = 0;
  std::string arho, alambda;
  c_accel->add_option("--p", ap)->required();
  c_accel->add_option("--rho", arho, "starting valuation (rational)")->required();
  c_accel->add_option("--lambda", alambda, "iteration count (integer)")->required();

  // const
  auto* c_const = app.add_subcommand("const", "effective height constant (lambda, c)");
  uint64_t kp = 0;
  std::string kc1, kc2;
  c_const->add_option("--p", kp)->required();
  c_const->add_option("--C1", kc1, "rational")->required();
  c_const->add_option("--C2", kc2, "integer")->required();

  // group
  auto* c_group = app.add_subcommand("group", "matrix-group computations");
  c_group->require_subcommand(1);
  auto* g_nc = c_group->add_subcommand("normal-closure",
                                       "normal closure of a non-split torus in GL2(F_p)");
  uint64_t ncp = 5;
  g_nc->add_option("--p", ncp)->required();
  auto* g_ctr = c_group->add_subcommand("center", "center of GL2(Z/p^n)");
  uint64_t ctp = 5;
  unsigned ctn = 1;
  g_ctr->add_option("--p", ctp)->required();
  g_ctr->add_option("--n", ctn);
  auto* g_adj = c_group->add_subcommand("adjoint", "conjugation closure of a seed span");
  uint64_t adp = 5;
  bool adsplit = false;
  std::string adseed = "0,1,0,0";
  g_adj->add_option("--p", adp)->required();
  g_adj->add_flag("--split", adsplit, "work over F_p x F_p instead of F_{p^2}");
  g_adj->add_option("--seed", adseed, "4 entries, trace zero");
  auto* g_fib = c_group->add_subcommand("fiber", "fiber product of sign-glued copies");
  unsigned fcopies = 2;
  g_fib->add_option("--copies", fcopies);

  // local
  auto* c_local = app.add_subcommand("local", "tower invariants at p");
  c_local->require_subcommand(1);
  uint64_t lp = 5, lk = 2;
  unsigned ln = 1, ldeg = 1, lnmax = 4;
  auto* l_gal = c_local->add_subcommand("gal", "abelian invariants of the layer group");
  auto* l_ram = c_local->add_subcommand("ram", "ramification break table");
  auto* l_norm = c_local->add_subcommand("norm", "norm surjectivity on the top layer");
  auto* l_const = c_local->add_subcommand("constants", "tail constants report");
  for (CLI::App* sub : {l_gal, l_ram, l_norm, l_const}) {
    sub->add_option("--p", lp)->required();
    sub->add_option("--k", lk)->required();
    sub->add_option("--n", ln);
  }
  l_const->add_option("--degree", ldeg, "coefficient field degree");
  l_const->add_option("--nmax", lnmax, "levels to tabulate");

  // newform
  auto* c_newform = app.add_subcommand("newform", "eigenform record checks");
  c_newform->require_subcommand(1);
  auto* n_check = c_newform->add_subcommand("check", "local conditions at p");
  std::string nlabel;
  uint64_t np = 0;
  n_check->add_option("label", nlabel)->required();
  n_check->add_option("--p", np)->required();

  // certify
  auto* c_certify = app.add_subcommand("certify", "scan primes and emit a certificate");
  std::string clabel;
  uint64_t cbound = 1000;
  c_certify->add_option("label", clabel)->required();
  c_certify->add_option("--bound", cbound, "largest prime to scan");

  // table
  auto* c_table = app.add_subcommand("table", "reproduce the bundled reference table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (c_height->parsed()) return run_height(g, minpoly, coords);
    if (c_bound->parsed()) {
      bp.degree_ratio = parse_mpq(ratio);
      return run_bound(g, bp);
    }
    if (c_accel->parsed()) return run_accel(g, ap, arho, alambda);
    if (c_const->parsed()) return run_const(g, kp, kc1, kc2);
    if (c_group->parsed()) {
      if (g_nc->parsed()) return run_group_normal_closure(g, ncp);
      if (g_ctr->parsed()) return run_group_center(g, ctp, ctn);
      if (g_adj->parsed()) return run_group_adjoint(g, adp, adsplit, adseed);
      if (g_fib->parsed()) return run_group_fiber(g, fcopies);
    }
    if (c_local->parsed()) {
      if (l_gal->parsed()) return run_local_gal(g, lp, lk, ln);
      if (l_ram->parsed()) return run_local_ram(g, lp, lk, ln);
      if (l_norm->parsed()) return run_local_norm(g, lp, lk, ln);
      if (l_const->parsed()) return run_local_constants(g, lp, lk, ldeg, lnmax);
    }
    if (c_newform->parsed() && n_check->parsed()) return run_newform_check(g, nlabel, np);
    if (c_certify->parsed()) return run_certify(g, clabel, cbound);
    if (c_table->parsed()) return run_table(g);
  } catch (const DataUnavailable& e) {
    std::cerr << "data unavailable: " << e.what() << "\n";
    return kNoData;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kNoData;
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include <bogocert/lmfdb.hpp>

#include <gmpxx.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace bogocert {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v && *v) ? std::string(v) : fallback;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataUnavailable("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_or_schema_error(const std::string& payload, const std::string& what) {
  try {
    return json::parse(payload);
  } catch (const json::parse_error& e) {
    throw SchemaError(what + ": not valid structured text: " + e.what());
  }
}

uint64_t get_u64(const json& j, const char* field, const std::string& what) {
  if (!j.contains(field) || !j[field].is_number_integer() || j[field].get<int64_t>() < 0)
    throw SchemaError(what + ": missing or non-integral field '" + field + "'");
  return j[field].get<uint64_t>();
}

bool parse_rational(const std::string& s, mpq_class& out) {
  if (s.empty()) return false;
  if (out.set_str(s, 10) != 0) return false;
  out.canonicalize();
  return true;
}

std::vector<uint64_t> unit_residues(uint64_t modulus) {
  std::vector<uint64_t> units;
  for (uint64_t u = 1; u <= modulus; ++u)
    if (std::gcd(u, modulus) == 1) units.push_back(u % modulus == 0 ? modulus : u);
  return units;
}

// Coordinate vector must be `degree` rationals; returns true if it equals the
// given rational constant (first coordinate) with all higher coordinates zero.
bool coords_equal_rational(const json& arr, size_t degree, long value,
                           const std::string& what) {
  if (!arr.is_array() || arr.size() != degree)
    throw SchemaError(what + ": coordinate vector of wrong shape");
  bool match = true;
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw SchemaError(what + ": coordinates must be strings");
    mpq_class q;
    if (!parse_rational(arr[i].get<std::string>(), q))
      throw SchemaError(what + ": unparseable coordinate '" + arr[i].get<std::string>() + "'");
    if (q != mpq_class(i == 0 ? value : 0)) match = false;
  }
  return match;
}

void check_coord_vector(const json& arr, size_t degree, const std::string& what) {
  if (!arr.is_array() || arr.size() != degree)
    throw SchemaError(what + ": coordinate vector of wrong shape");
  for (const auto& c : arr) {
    if (!c.is_string()) throw SchemaError(what + ": coordinates must be strings");
    mpq_class q;
    if (!parse_rational(c.get<std::string>(), q))
      throw SchemaError(what + ": unparseable coordinate '" + c.get<std::string>() + "'");
  }
}

std::string join_exponents(const std::vector<unsigned>& exps) {
  std::string out;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (i) out += '_';
    out += std::to_string(exps[i]);
  }
  return out;
}

}  // namespace

QuerySpec QuerySpec::newform(std::string label) {
  if (std::count(label.begin(), label.end(), '.') != 3)
    throw std::invalid_argument("malformed record label: " + label);
  QuerySpec q;
  q.kind = Kind::newform;
  q.label = std::move(label);
  return q;
}

QuerySpec QuerySpec::newspace_dim(uint64_t level, uint64_t weight, uint64_t conductor,
                                  uint64_t order, std::vector<unsigned> exponents) {
  if (level < 1 || weight < 1 || conductor < 1 || order < 1)
    throw std::invalid_argument("newspace query needs positive parameters");
  if (level % conductor != 0)
    throw std::invalid_argument("character conductor must divide the level");
  QuerySpec q;
  q.kind = Kind::newspace_dim;
  q.level = level;
  q.weight = weight;
  q.char_conductor = conductor;
  q.char_order = order;
  q.char_orbit_exponents = std::move(exponents);
  return q;
}

std::string QuerySpec::cache_key() const {
  if (kind == Kind::newform) return label;
  return std::to_string(level) + "." + std::to_string(weight) + "." +
         std::to_string(char_conductor) + "." + std::to_string(char_order) + "." +
         join_exponents(char_orbit_exponents);
}

std::string QuerySpec::kind_dir() const {
  return kind == Kind::newform ? "newform" : "newspace_dim";
}

std::string QuerySpec::file_name() const {
  std::string name = cache_key();
  std::replace(name.begin(), name.end(), '.', '_');
  return name + ".json";
}

void validate_newform_payload(const std::string& payload) {
  json j = parse_or_schema_error(payload, "newform payload");
  const std::string what = "newform payload";
  if (!j.is_object()) throw SchemaError(what + ": top level must be an object");
  if (!j.contains("schema") || j["schema"] != "newform-fixture/1")
    throw SchemaError(what + ": unknown or missing schema tag");
  if (!j.contains("label") || !j["label"].is_string())
    throw SchemaError(what + ": missing label");
  std::string label = j["label"].get<std::string>();

  uint64_t level = get_u64(j, "level", what);
  uint64_t weight = get_u64(j, "weight", what);
  uint64_t conductor = get_u64(j, "char_conductor", what);
  uint64_t order = get_u64(j, "char_order", what);
  if (level < 1 || weight < 2) throw SchemaError(what + ": level/weight out of range");
  if (conductor < 1 || level % conductor != 0)
    throw SchemaError(what + ": character conductor must divide the level");
  if (order < 1) throw SchemaError(what + ": character order out of range");

  // label prefix must agree with the numeric fields
  std::string prefix = std::to_string(level) + "." + std::to_string(weight) + ".";
  if (label.rfind(prefix, 0) != 0)
    throw SchemaError(what + ": label '" + label + "' disagrees with level/weight");

  if (!j.contains("field_poly") || !j["field_poly"].is_array())
    throw SchemaError(what + ": missing field_poly");
  const json& fp = j["field_poly"];
  if (fp.size() < 2 || fp.size() > 9)
    throw SchemaError(what + ": coefficient field degree out of range");
  for (const auto& c : fp)
    if (!c.is_number_integer()) throw SchemaError(what + ": field_poly entries must be integers");
  if (fp.back().get<int64_t>() != 1) throw SchemaError(what + ": field_poly must be monic");
  size_t degree = fp.size() - 1;

  if (!j.contains("char_values") || !j["char_values"].is_object())
    throw SchemaError(what + ": missing char_values");
  std::set<uint64_t> expected;
  for (uint64_t u : unit_residues(conductor)) expected.insert(u);
  std::set<uint64_t> seen;
  for (const auto& [key, val] : j["char_values"].items()) {
    uint64_t u;
    try {
      size_t pos = 0;
      u = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw SchemaError(what + ": non-numeric char_values key '" + key + "'");
    }
    seen.insert(u);
    check_coord_vector(val, degree, what + " char_values[" + key + "]");
  }
  if (seen != expected)
    throw SchemaError(what + ": char_values keys must be exactly the units mod " +
                      std::to_string(conductor));

  uint64_t bound = get_u64(j, "an_bound", what);
  if (bound < 1) throw SchemaError(what + ": an_bound out of range");
  if (!j.contains("an") || !j["an"].is_object()) throw SchemaError(what + ": missing an");
  std::set<uint64_t> ns;
  for (const auto& [key, val] : j["an"].items()) {
    uint64_t n;
    try {
      size_t pos = 0;
      n = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw SchemaError(what + ": non-numeric an key '" + key + "'");
    }
    if (n < 1 || n > bound)
      throw SchemaError(what + ": coefficient index " + key + " outside 1..an_bound");
    ns.insert(n);
    check_coord_vector(val, degree, what + " an[" + key + "]");
  }
  if (ns.size() != bound)
    throw SchemaError(what + ": coefficients must cover every index 1..an_bound");

  if (!coords_equal_rational(j["an"]["1"], degree, 1, what))
    throw SchemaError(what + ": rejected, a_1 != 1 (record not normalized)");

  if (!j.contains("cm") || !j["cm"].is_boolean())
    throw SchemaError(what + ": missing cm flag");
}

void validate_newspace_payload(const std::string& payload, const QuerySpec* expect) {
  json j = parse_or_schema_error(payload, "newspace payload");
  const std::string what = "newspace payload";
  if (!j.is_object()) throw SchemaError(what + ": top level must be an object");
  if (!j.contains("schema") || j["schema"] != "newspace-dim-fixture/1")
    throw SchemaError(what + ": unknown or missing schema tag");

  uint64_t level = get_u64(j, "level", what);
  uint64_t weight = get_u64(j, "weight", what);
  uint64_t conductor = get_u64(j, "char_conductor", what);
  uint64_t order = get_u64(j, "char_order", what);
  if (level < 1 || weight < 1 || conductor < 1 || order < 1 || level % conductor != 0)
    throw SchemaError(what + ": inconsistent numeric fields");

  if (!j.contains("char_orbit_exponents") || !j["char_orbit_exponents"].is_array())
    throw SchemaError(what + ": missing char_orbit_exponents");
  std::vector<unsigned> exps;
  for (const auto& e : j["char_orbit_exponents"]) {
    if (!e.is_number_integer() || e.get<int64_t>() < 0 ||
        e.get<uint64_t>() >= order)
      throw SchemaError(what + ": orbit exponent out of range");
    exps.push_back(e.get<unsigned>());
  }
  if (exps.size() != unit_residues(conductor).size())
    throw SchemaError(what + ": orbit exponent count must equal the unit count mod " +
                      std::to_string(conductor));
  if (!exps.empty() && exps.front() != 0)
    throw SchemaError(what + ": character must be trivial at residue 1");

  (void)get_u64(j, "dim_new", what);

  QuerySpec derived = QuerySpec::newspace_dim(level, weight, conductor, order, exps);
  if (!j.contains("key") || j["key"] != derived.cache_key())
    throw SchemaError(what + ": key field disagrees with the numeric fields");
  if (expect && derived.cache_key() != expect->cache_key())
    throw SchemaError(what + ": payload describes " + derived.cache_key() +
                      ", expected " + expect->cache_key());
}

uint64_t newspace_dim_of_payload(const std::string& payload) {
  validate_newspace_payload(payload);
  return json::parse(payload)["dim_new"].get<uint64_t>();
}

LmfdbClient::LmfdbClient(ClientOptions opt) : opt_(std::move(opt)) {
  if (opt_.cache_dir.empty()) opt_.cache_dir = env_or("BOGOCERT_CACHE", "");
  if (opt_.fixtures_dir.empty())
    opt_.fixtures_dir = env_or("BOGOCERT_FIXTURES", "data/fixtures");
}

std::string LmfdbClient::local_path(const std::string& root, const QuerySpec& q) const {
  return root + "/" + q.kind_dir() + "/" + q.file_name();
}

std::string LmfdbClient::read_local(const QuerySpec& q, bool* from_cache) {
  for (bool cache_layer : {true, false}) {
    const std::string& root = cache_layer ? opt_.cache_dir : opt_.fixtures_dir;
    if (root.empty()) continue;
    std::string path = local_path(root, q);
    if (!fs::exists(path)) continue;
    std::string payload = read_file(path);
    try {
      if (q.kind == QuerySpec::Kind::newform)
        validate_newform_payload(payload);
      else
        validate_newspace_payload(payload, &q);
    } catch (const SchemaError&) {
      if (cache_layer) quarantine(q.file_name(), payload);
      throw;
    }
    if (q.kind == QuerySpec::Kind::newform) {
      json j = json::parse(payload);
      if (j["label"] != q.label)
        throw SchemaError("payload labeled " + j["label"].get<std::string>() +
                          " found under key " + q.label);
    }
    if (from_cache) *from_cache = cache_layer;
    return payload;
  }
  return {};
}

std::string LmfdbClient::fetch(const QuerySpec& q) {
  if (opt_.policy != FetchPolicy::refresh) {
    std::string payload = read_local(q, nullptr);
    if (!payload.empty()) return payload;
    if (opt_.policy == FetchPolicy::offline_only)
      throw DataUnavailable("no local copy of " + q.cache_key() +
                            " and the policy forbids network access");
  }
  return fetch_remote(q);
}

std::string LmfdbClient::fetch_remote(const QuerySpec& q) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  throw DataUnavailable("remote fetch of " + q.cache_key() +
                        " requires TLS support, which this build lacks");
#else
  std::unique_lock<std::mutex> lock(write_mu_);
  std::string path = q.kind == QuerySpec::Kind::newform
                         ? "/payload/newform?label=" + q.label
                         : "/payload/newspace_dim?key=" + q.cache_key();
  std::string body;
  for (unsigned attempt = 0; attempt <= opt_.retries; ++attempt) {
    auto since = std::chrono::steady_clock::now() - last_net_;
    auto spacing = std::chrono::milliseconds(opt_.min_spacing_ms);
    if (last_net_.time_since_epoch().count() != 0 && since < spacing)
      std::this_thread::sleep_for(spacing - since);
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(500u << (2 * (attempt - 1))));
    httplib::Client cli(("https://" + opt_.remote_host).c_str());
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    auto res = cli.Get(path.c_str());
    last_net_ = std::chrono::steady_clock::now();
    if (res && res->status == 200) {
      body = res->body;
      break;
    }
    if (attempt == opt_.retries)
      throw DataUnavailable("remote fetch of " + q.cache_key() + " failed after " +
                            std::to_string(opt_.retries + 1) + " attempts");
  }
  lock.unlock();
  try {
    if (q.kind == QuerySpec::Kind::newform)
      validate_newform_payload(body);
    else
      validate_newspace_payload(body, &q);
  } catch (const SchemaError&) {
    quarantine(q.file_name(), body);
    throw;
  }
  store(q, body, /*overwrite=*/true);
  return body;
#endif
}

void LmfdbClient::store(const QuerySpec& q, const std::string& payload, bool overwrite) {
  if (opt_.cache_dir.empty()) return;
  std::lock_guard<std::mutex> lock(write_mu_);
  fs::path dir = fs::path(opt_.cache_dir) / q.kind_dir();
  fs::create_directories(dir);
  fs::path target = dir / q.file_name();
  if (fs::exists(target) && !overwrite) return;
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("cannot write cache entry " + target.string());
  }
  fs::rename(tmp, target);
}

void LmfdbClient::quarantine(const std::string& file_name, const std::string& payload) {
  if (opt_.cache_dir.empty()) return;
  std::lock_guard<std::mutex> lock(write_mu_);
  fs::path dir = fs::path(opt_.cache_dir) / "quarantine";
  fs::create_directories(dir);
  std::ofstream out(dir / file_name, std::ios::binary | std::ios::trunc);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::string LmfdbClient::import_fixture(const std::string& path) {
  if (opt_.cache_dir.empty())
    throw std::invalid_argument("import requires a configured cache directory");
  std::string payload = read_file(path);
  json j = parse_or_schema_error(payload, "fixture " + path);
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
    throw SchemaError("fixture " + path + ": missing schema tag");
  std::string schema = j["schema"].get<std::string>();
  QuerySpec q;
  if (schema == "newform-fixture/1") {
    validate_newform_payload(payload);
    q = QuerySpec::newform(j["label"].get<std::string>());
  } else if (schema == "newspace-dim-fixture/1") {
    validate_newspace_payload(payload);
    std::vector<unsigned> exps;
    for (const auto& e : j["char_orbit_exponents"]) exps.push_back(e.get<unsigned>());
    q = QuerySpec::newspace_dim(j["level"].get<uint64_t>(), j["weight"].get<uint64_t>(),
                                j["char_conductor"].get<uint64_t>(),
                                j["char_order"].get<uint64_t>(), exps);
  } else {
    throw SchemaError("fixture " + path + ": unrecognized schema '" + schema + "'");
  }
  store(q, payload, /*overwrite=*/opt_.policy == FetchPolicy::refresh);
  return q.cache_key();
}

}  // namespace bogocert

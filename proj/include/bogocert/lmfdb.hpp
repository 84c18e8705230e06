#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bogocert {

// A required datum is not present (offline miss, coefficient out of range, ...).
struct DataUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A payload failed structural validation and was not served.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Identifies one fetchable datum: either a full eigenform record (by label) or
// the dimension of a new subspace with a prescribed character orbit.
struct QuerySpec {
  enum class Kind { newform, newspace_dim };

  Kind kind = Kind::newform;
  std::string label;  // newform only

  // newspace_dim only: the orbit is pinned by listing, for each unit residue
  // mod the conductor in ascending order, the exponent of the character value
  // on a fixed primitive root of unity, lex-minimized over Galois twists.
  uint64_t level = 0;
  uint64_t weight = 0;
  uint64_t char_conductor = 0;
  uint64_t char_order = 0;
  std::vector<unsigned> char_orbit_exponents;

  static QuerySpec newform(std::string label);
  static QuerySpec newspace_dim(uint64_t level, uint64_t weight, uint64_t conductor,
                                uint64_t order, std::vector<unsigned> exponents);

  // Pure function of the fields: "30.2.e.a" or "15.2.15.4.0_1_2_3_3_2_1_0".
  std::string cache_key() const;
  std::string kind_dir() const;   // "newform" / "newspace_dim"
  std::string file_name() const;  // cache key with '.' -> '_', plus ".json"
};

enum class FetchPolicy {
  offline_only,  // cache/fixture hit required; never touches the network
  cache_first,   // serve local copy when present, otherwise fetch remotely
  refresh        // fetch remotely, revalidate, overwrite the cached copy
};

struct ClientOptions {
  FetchPolicy policy = FetchPolicy::offline_only;
  std::string cache_dir;     // empty: $BOGOCERT_CACHE, else no cache layer
  std::string fixtures_dir;  // empty: $BOGOCERT_FIXTURES, else "data/fixtures"
  std::string remote_host = "www.lmfdb.org";
  unsigned retries = 3;             // bounded retries with exponential backoff
  unsigned min_spacing_ms = 1000;   // >= 1s between network calls
};

// Read-through store for eigenform data. Lookup order: cache directory, then
// bundled fixtures, then (policy permitting) the remote database. Every
// payload is validated against its schema before being served or cached;
// invalid remote/cache payloads are quarantined under <cache>/quarantine.
// The remote endpoints must serve this toolkit's payload schema; the public
// database's raw API uses a different shape and such responses are rejected.
class LmfdbClient {
 public:
  explicit LmfdbClient(ClientOptions opt = ClientOptions{});

  // Raw validated payload bytes; local hits are returned byte-identical.
  std::string fetch(const QuerySpec& q);

  // Validate a payload file and install it into the cache under its derived
  // key. An existing entry is replaced only under the refresh policy.
  // Returns the cache key.
  std::string import_fixture(const std::string& path);

  const ClientOptions& options() const { return opt_; }

 private:
  std::string local_path(const std::string& root, const QuerySpec& q) const;
  std::string read_local(const QuerySpec& q, bool* from_cache);
  std::string fetch_remote(const QuerySpec& q);
  void store(const QuerySpec& q, const std::string& payload, bool overwrite);
  void quarantine(const std::string& file_name, const std::string& payload);

  ClientOptions opt_;
  std::mutex write_mu_;
  std::chrono::steady_clock::time_point last_net_{};
};

// Structural schema checks (throw SchemaError). Deeper arithmetic validation
// happens when a payload is turned into a typed record.
void validate_newform_payload(const std::string& payload);
void validate_newspace_payload(const std::string& payload, const QuerySpec* expect = nullptr);

// Extract dim_new from a validated newspace payload.
uint64_t newspace_dim_of_payload(const std::string& payload);

}  // namespace bogocert

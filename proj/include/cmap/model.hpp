#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmap/combinatorics.hpp"
#include "cmap/rational.hpp"

namespace cmap {

/// A user is identified by the r-subset of access caches it reads.
using UserId = IndexSet;

/// (Λ, r, N, M_a, M_p, B) for one multi-access system with private caches.
struct SystemParams {
  int lambda = 0;            // number of access caches
  int r = 0;                 // access degree
  int n_files = 0;           // library size N
  Rational m_access{0};      // access cache size, in files
  Rational m_private{0};     // private cache size, in files
  std::int64_t file_bits = 0;  // B; 0 when no bit-level simulation is requested

  std::int64_t users() const;     // K = binom(Λ, r)
  Rational t_access() const;      // Λ·M_a / N
  Rational t_private() const;     // K·M_p / N
};

/// Integer replication factors for a parameter point that needs no memory sharing.
struct Regime {
  int lambda = 0;
  int r = 0;
  int t_access = 0;
  int t_private = 0;

  std::int64_t users() const { return binom(lambda, r); }
  /// binom(Λ - t_a, r): how many users miss any given subfile.
  std::int64_t wanting_users() const { return binom(lambda - t_access, r); }
  /// Every subfile reaches every user through the access caches.
  bool full_access() const { return wanting_users() == 0; }
  /// Mini-subfiles per subfile; 1 in the full-access regime.
  std::int64_t minis_per_subfile() const;
  std::int64_t subpacketization() const;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  Rational t_access{0};
  Rational t_private{0};
  bool t_access_integer = false;
  bool t_private_integer = false;
  std::int64_t users = 0;
  /// Present when both replication factors are integers.
  std::optional<std::int64_t> subpacketization;
  bool full_access = false;
};

/// Checks the system constraints. Never throws for bad values; every
/// violation is listed in the report.
ValidationReport validate(const SystemParams& params);

/// Throws ParameterError listing every violation when validate() fails.
void require_valid(const SystemParams& params);

/// Integer replication factors, or ParameterError when either is fractional,
/// outside its range, or when 0 < t_p exceeds the number of users wanting a subfile.
Regime integer_regime(const SystemParams& params);

/// All users in lexicographic order.
std::vector<UserId> all_users(int lambda, int r);

/// File requested by each user (files are 1-based).
class DemandVector {
 public:
  DemandVector() = default;
  explicit DemandVector(std::map<UserId, int> demands) : demands_(std::move(demands)) {}

  /// Demands listed for the users in lexicographic order.
  static DemandVector from_list(int lambda, int r, const std::vector<int>& files);

  int file_for(UserId user) const;
  const std::map<UserId, int>& entries() const { return demands_; }
  std::size_t size() const { return demands_.size(); }
  bool all_distinct() const;

 private:
  std::map<UserId, int> demands_;
};

/// The user of lexicographic rank i demands file i. Requires N >= K.
DemandVector worst_case_demand(const SystemParams& params);

/// Fraction of every file a single user can read from its access caches and
/// private cache. Requires integer replication factors.
Rational accessible_fraction(const SystemParams& params);

/// key=value configuration (lambda, r, n_files, m_access, m_private,
/// file_bits, seed). Blank lines and '#' comments are ignored.
struct Config {
  SystemParams params;
  std::optional<std::uint64_t> seed;
};
Config parse_config(std::istream& in);

}  // namespace cmap

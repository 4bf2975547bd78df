#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmap/delivery.hpp"
#include "cmap/model.hpp"
#include "cmap/placement.hpp"

namespace cmap {

/// Mini-subfiles a user holds: its access caches, its private cache, and
/// whatever it has peeled so far.
class UserKnowledge {
 public:
  UserKnowledge(const MiniCatalog& catalog, const PlacementMap& placement, UserId user);

  UserId user() const { return user_; }
  bool knows(const MiniSubfileId& mini) const;
  bool knows_id(std::uint32_t id) const { return known_[id] != 0; }
  void learn_id(std::uint32_t id);
  std::size_t count() const { return count_; }
  const MiniCatalog& catalog() const { return *catalog_; }

 private:
  const MiniCatalog* catalog_;
  UserId user_;
  std::vector<char> known_;
  std::size_t count_ = 0;
};

/// One peeling step: transmission `transmission` yields mini `mini`.
struct PeelStep {
  std::size_t transmission = 0;
  std::uint32_t mini = 0;
};

/// Repeatedly resolves any transmission with exactly one unknown term, until
/// nothing changes. Returns the newly learned minis; `knowledge` grows.
std::set<MiniSubfileId> peel_decode(UserId user, const Schedule& schedule,
                                    UserKnowledge& knowledge, const DemandVector& demand);

struct UserReport {
  UserId user;
  std::int64_t demanded = 0;  // minis of the requested file the user lacked
  std::int64_t decoded = 0;   // of those, recovered from the schedule
  std::vector<MiniSubfileId> missing;
  std::vector<PeelStep> steps;
};

struct VerificationReport {
  std::vector<UserReport> users;
  bool pass = false;
  std::int64_t total_missing = 0;

  /// `PASS|FAIL users=<K> missing=<total>`
  std::string summary_line() const;
  std::string to_text() const;
};

/// Peels every user against the placement for `params` (integer replication
/// factors). Users are verified in parallel.
VerificationReport verify_all(const SystemParams& params, const DemandVector& demand,
                              const Schedule& schedule);
/// Sequential reference for verify_all.
VerificationReport verify_all_serial(const SystemParams& params, const DemandVector& demand,
                                     const Schedule& schedule);

struct RoundtripOptions {
  /// Flip one bit of one transmission after encoding.
  std::optional<std::size_t> corrupt_transmission;
  std::size_t corrupt_bit = 0;
  bool parallel = true;
};

struct RoundtripResult {
  bool pass = false;
  std::map<UserId, std::int64_t> differing_bytes;
  std::int64_t total_differing_bytes = 0;
  std::size_t transmissions = 0;
  std::int64_t bits_per_transmission = 0;
  bool caches_at_capacity = false;  // every cache holds exactly its M·B bits
  std::string detail;
};

/// Generates the library from `seed`, fills every cache with real bits,
/// XOR-encodes the schedule and lets each user cancel what it holds.
/// Passes when every user rebuilds its requested file byte for byte.
/// Requires integer replication factors and params.file_bits divisible by F.
RoundtripResult bitlevel_roundtrip(const SystemParams& params, const DemandVector& demand,
                                   const Schedule& schedule, std::uint64_t seed,
                                   const RoundtripOptions& options = {});

}  // namespace cmap

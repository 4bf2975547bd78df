#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cmap/combinatorics.hpp"
#include "cmap/model.hpp"
#include "cmap/rational.hpp"

namespace cmap {

/// Unordered set of user sets naming the private caches that hold a
/// mini-subfile. Empty when private caches are unused; a single user for the
/// one-private-copy placement.
class Tag {
 public:
  Tag() = default;
  Tag(std::initializer_list<UserId> members);
  explicit Tag(std::vector<UserId> members);

  const std::vector<UserId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(UserId user) const;
  /// The single member of a one-element tag.
  UserId only() const;

  /// Members in compact notation joined by ',' ("14,24").
  std::string compact() const;
  static Tag parse(std::string_view text);

  friend bool operator==(const Tag&, const Tag&) = default;
  friend std::strong_ordering operator<=>(const Tag& a, const Tag& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<UserId> members_;  // sorted, unique
};

struct SubfileId {
  int file = 0;
  IndexSet subfile;
  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

/// One atomic symbol: mini-subfile `tag` of subfile `subfile` of file `file`.
struct MiniSubfileId {
  int file = 0;
  IndexSet subfile;
  Tag tag;
  friend auto operator<=>(const MiniSubfileId&, const MiniSubfileId&) = default;
};

using AccessPlacement = std::map<int, std::set<SubfileId>>;
using PrivatePlacement = std::map<UserId, std::set<MiniSubfileId>>;

struct PlacementMap {
  AccessPlacement access;
  PrivatePlacement private_caches;
};

/// Cache a holds every subfile whose index set contains a.
AccessPlacement access_placement(const SystemParams& params);

/// The private cache of U holds every mini-subfile whose tag contains U.
/// Tags are t_p-subsets of the users that miss the subfile; for t_p = 1 this
/// is one mini per (subfile, user missing it).
PrivatePlacement private_placement(const SystemParams& params);

PlacementMap make_placement(const SystemParams& params);

/// Users (r-subsets) whose access caches miss `subfile`, lexicographically.
std::vector<UserId> users_missing(int lambda, int r, IndexSet subfile);

/// Tags of the mini-subfiles of one subfile, in lexicographic order.
std::vector<Tag> tags_for_subfile(const Regime& regime, IndexSet subfile);

/// Dense numbering of all N·F mini-subfiles: id = (file - 1)·F + position,
/// positions ordered by (subfile, tag) lexicographically.
class MiniCatalog {
 public:
  MiniCatalog(const Regime& regime, int n_files);

  const Regime& regime() const { return regime_; }
  int n_files() const { return n_files_; }
  std::int64_t subpacketization() const { return static_cast<std::int64_t>(slots_.size()); }
  std::size_t size() const { return slots_.size() * static_cast<std::size_t>(n_files_); }

  std::uint32_t id(const MiniSubfileId& mini) const;
  MiniSubfileId at(std::uint32_t id) const;
  /// Position of (subfile, tag) inside a file, in [0, F).
  std::uint32_t position(IndexSet subfile, const Tag& tag) const;
  bool readable_from_access(UserId user, std::uint32_t id) const;

 private:
  Regime regime_;
  int n_files_;
  std::vector<std::pair<IndexSet, Tag>> slots_;
  std::map<std::pair<IndexSet, Tag>, std::uint32_t> lookup_;
};

/// Coefficients realizing a fractional replication factor by memory sharing:
/// t = alpha·hi + (1 - alpha)·lo. Integer t gives alpha = 1 and lo == hi.
struct MemorySplit {
  Rational alpha{1};
  int lo = 0;
  int hi = 0;
};

struct MemorySplits {
  MemorySplit access;   // over t_a = Λ·M_a/N
  MemorySplit private_; // over t_p = K·M_p/N
};

MemorySplits memory_split(const SystemParams& params);

/// One integer-replication scheme carrying `weight` of every file.
struct SchemePart {
  Regime regime;
  SystemParams params;  // integer-factor point with file_bits = bits_per_file
  Rational weight{1};
  std::int64_t bits_per_file = 0;  // weight·B
  std::int64_t bits_per_mini = 0;  // weight·B / F(regime)
};

/// Splits every file across the memory-sharing corners. Throws ParameterError
/// when file_bits does not divide exactly into every part's mini-subfiles.
std::vector<SchemePart> scheme_parts(const SystemParams& params, std::int64_t file_bits);

/// Smallest B for which scheme_parts() divides exactly.
std::int64_t minimal_file_bits(const SystemParams& params);

/// Stored bits per cache, computed by enumerating each part's placement.
struct MemoryAccounting {
  std::int64_t file_bits = 0;
  std::map<int, std::int64_t> access_bits;
  std::map<UserId, std::int64_t> private_bits;
  Rational access_budget_bits{0};   // M_a·B
  Rational private_budget_bits{0};  // M_p·B

  bool access_exact() const;
  bool private_exact() const;
};

MemoryAccounting account_memory(const SystemParams& params, std::int64_t file_bits);

}  // namespace cmap

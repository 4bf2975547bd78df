#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cmap {

/// A finite set of positive integers (cache indices, user sets, subfile sets).
///
/// Stored as a 64-bit mask, so elements are limited to [1, 63]. Equality is set
/// equality; ordering is lexicographic on the sorted element lists, so
/// {1,2} < {1,2,3} < {1,3} < {2}.
class IndexSet {
 public:
  static constexpr int kMaxElement = 63;

  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> elements);

  static IndexSet from_mask(std::uint64_t mask);
  /// {lo, lo+1, ..., hi}; empty when lo > hi.
  static IndexSet interval(int lo, int hi);
  /// Parses the compact notation produced by compact(): "124", "" or "{3,10,12}".
  static IndexSet parse(std::string_view text);

  std::uint64_t mask() const { return bits_; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool contains(int element) const;
  bool intersects(IndexSet other) const { return (bits_ & other.bits_) != 0; }
  bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }

  IndexSet operator|(IndexSet other) const { return from_mask(bits_ | other.bits_); }
  IndexSet operator&(IndexSet other) const { return from_mask(bits_ & other.bits_); }
  /// Set difference.
  IndexSet operator-(IndexSet other) const { return from_mask(bits_ & ~other.bits_); }

  std::vector<int> elements() const;

  /// Digits run together when every element is below 10 ("124"); otherwise
  /// a braced comma list ("{3,10}"). The empty set renders as "".
  std::string compact() const;

  friend bool operator==(IndexSet a, IndexSet b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(IndexSet a, IndexSet b);

 private:
  std::uint64_t bits_ = 0;
};

/// Binomial coefficient with the zero convention: 0 unless 0 <= k <= n.
/// Throws std::overflow_error when the value does not fit in int64.
std::int64_t binom(std::int64_t n, std::int64_t k);

/// All k-subsets of `ground` in lexicographic order. k > |ground| gives [];
/// k == 0 gives [{}].
std::vector<IndexSet> k_subsets(IndexSet ground, int k);

/// 1-based position of `subset` among the |subset|-subsets of `ground` in
/// lexicographic order. Throws ParameterError if subset is not inside ground.
std::int64_t rank(IndexSet subset, IndexSet ground);

/// Inverse of rank(). Throws ParameterError unless 1 <= index <= binom(|ground|, k).
IndexSet unrank(std::int64_t index, IndexSet ground, int k);

}  // namespace cmap

#include "cmap/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <string>

#include "cmap/errors.hpp"

namespace cmap {

namespace {

std::uint64_t bit_for(int element) {
  if (element < 1 || element > IndexSet::kMaxElement) {
    throw ParameterError("set element out of range [1, 63]: " + std::to_string(element));
  }
  return std::uint64_t{1} << (element - 1);
}

}  // namespace

IndexSet::IndexSet(std::initializer_list<int> elements) {
  for (int e : elements) bits_ |= bit_for(e);
}

IndexSet IndexSet::from_mask(std::uint64_t mask) {
  IndexSet s;
  s.bits_ = mask & ((std::uint64_t{1} << kMaxElement) - 1);
  return s;
}

IndexSet IndexSet::interval(int lo, int hi) {
  IndexSet s;
  for (int e = std::max(lo, 1); e <= hi; ++e) s.bits_ |= bit_for(e);
  return s;
}

IndexSet IndexSet::parse(std::string_view text) {
  IndexSet s;
  if (text.empty()) return s;
  if (text.front() == '{') {
    if (text.back() != '}') throw ParameterError("unterminated set: " + std::string(text));
    std::string_view body = text.substr(1, text.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw ParameterError("bad set element: " + std::string(item));
      }
      s.bits_ |= bit_for(value);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return s;
  }
  for (char c : text) {
    if (c < '1' || c > '9') throw ParameterError("bad set notation: " + std::string(text));
    s.bits_ |= bit_for(c - '0');
  }
  return s;
}

int IndexSet::size() const { return std::popcount(bits_); }

bool IndexSet::contains(int element) const {
  if (element < 1 || element > kMaxElement) return false;
  return (bits_ >> (element - 1)) & 1U;
}

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string IndexSet::compact() const {
  auto elems = elements();
  bool digits = std::all_of(elems.begin(), elems.end(), [](int e) { return e <= 9; });
  std::string out;
  if (digits) {
    for (int e : elems) out.push_back(static_cast<char>('0' + e));
    return out;
  }
  out.push_back('{');
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(elems[i]);
  }
  out.push_back('}');
  return out;
}

std::strong_ordering operator<=>(IndexSet a, IndexSet b) {
  std::uint64_t x = a.bits_;
  std::uint64_t y = b.bits_;
  while (x != 0 && y != 0) {
    int ex = std::countr_zero(x);
    int ey = std::countr_zero(y);
    if (ex != ey) return ex <=> ey;
    x &= x - 1;
    y &= y - 1;
  }
  // A proper prefix sorts first.
  return (x != 0) <=> (y != 0);
}

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step.
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds int64");
    }
  }
  return static_cast<std::int64_t>(result);
}

std::vector<IndexSet> k_subsets(IndexSet ground, int k) {
  std::vector<IndexSet> out;
  if (k < 0) return out;
  auto elems = ground.elements();
  const int n = static_cast<int>(elems.size());
  if (k > n) return out;
  out.reserve(static_cast<std::size_t>(binom(n, k)));
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << (elems[i] - 1);
    out.push_back(IndexSet::from_mask(mask));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::int64_t rank(IndexSet subset, IndexSet ground) {
  if (!subset.subset_of(ground)) {
    throw ParameterError("rank: {" + subset.compact() + "} is not inside {" + ground.compact() +
                         "}");
  }
  auto elems = ground.elements();
  const int n = static_cast<int>(elems.size());
  const int k = subset.size();
  std::int64_t before = 0;
  int prev = -1;
  int i = 0;
  for (int pos = 0; pos < n && i < k; ++pos) {
    if (!subset.contains(elems[pos])) continue;
    // Every subset that agrees on the first i picks and then picks an
    // earlier ground position comes first.
    for (int skipped = prev + 1; skipped < pos; ++skipped) {
      before += binom(n - 1 - skipped, k - 1 - i);
    }
    prev = pos;
    ++i;
  }
  return before + 1;
}

IndexSet unrank(std::int64_t index, IndexSet ground, int k) {
  auto elems = ground.elements();
  const int n = static_cast<int>(elems.size());
  const std::int64_t total = binom(n, k);
  if (index < 1 || index > total) {
    throw ParameterError("unrank: index " + std::to_string(index) + " outside [1, " +
                         std::to_string(total) + "]");
  }
  std::int64_t remaining = index - 1;
  std::uint64_t mask = 0;
  int pos = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      std::int64_t with_pos = binom(n - 1 - pos, k - 1 - i);
      if (remaining < with_pos) break;
      remaining -= with_pos;
      ++pos;
    }
    mask |= std::uint64_t{1} << (elems[pos] - 1);
    ++pos;
  }
  return IndexSet::from_mask(mask);
}

}  // namespace cmap

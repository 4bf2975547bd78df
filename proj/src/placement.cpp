#include "cmap/placement.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cmap/errors.hpp"

namespace cmap {

Tag::Tag(std::initializer_list<UserId> members) : Tag(std::vector<UserId>(members)) {}

Tag::Tag(std::vector<UserId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Tag::contains(UserId user) const {
  return std::binary_search(members_.begin(), members_.end(), user);
}

UserId Tag::only() const {
  if (members_.size() != 1) {
    throw SchemeInvariantError("expected a single-user tag, got '" + compact() + "'");
  }
  return members_.front();
}

std::string Tag::compact() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out.push_back(',');
    out += members_[i].compact();
  }
  return out;
}

Tag Tag::parse(std::string_view text) {
  std::vector<UserId> members;
  std::size_t depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '{') ++depth;
    if (i < text.size() && text[i] == '}') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      if (i > start) members.push_back(IndexSet::parse(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return Tag(std::move(members));
}

std::vector<UserId> users_missing(int lambda, int r, IndexSet subfile) {
  return k_subsets(IndexSet::interval(1, lambda) - subfile, r);
}

std::vector<Tag> tags_for_subfile(const Regime& regime, IndexSet subfile) {
  if (regime.full_access() || regime.t_private == 0) return {Tag{}};
  const auto family = users_missing(regime.lambda, regime.r, subfile);
  std::vector<Tag> tags;
  if (regime.t_private == 1) {
    tags.reserve(family.size());
    for (const auto& u : family) tags.push_back(Tag{u});
    return tags;
  }
  const int m = static_cast<int>(family.size());
  if (m > IndexSet::kMaxElement) {
    throw ParameterError("too many users per subfile for t_p >= 2: " + std::to_string(m));
  }
  for (IndexSet pick : k_subsets(IndexSet::interval(1, m), regime.t_private)) {
    std::vector<UserId> members;
    for (int idx : pick.elements()) members.push_back(family[static_cast<std::size_t>(idx - 1)]);
    tags.emplace_back(std::move(members));
  }
  return tags;
}

AccessPlacement access_placement(const SystemParams& params) {
  const Regime regime = integer_regime(params);
  AccessPlacement access;
  const auto subfiles = k_subsets(IndexSet::interval(1, regime.lambda), regime.t_access);
  for (int a = 1; a <= regime.lambda; ++a) {
    auto& cache = access[a];
    for (const auto& s : subfiles) {
      if (!s.contains(a)) continue;
      for (int n = 1; n <= params.n_files; ++n) cache.insert({n, s});
    }
  }
  return access;
}

PrivatePlacement private_placement(const SystemParams& params) {
  const Regime regime = integer_regime(params);
  PrivatePlacement out;
  const IndexSet all = IndexSet::interval(1, regime.lambda);
  for (const auto& user : all_users(regime.lambda, regime.r)) {
    auto& cache = out[user];
    for (const auto& s : k_subsets(all - user, regime.t_access)) {
      for (const auto& tag : tags_for_subfile(regime, s)) {
        if (!tag.contains(user)) continue;
        for (int n = 1; n <= params.n_files; ++n) cache.insert({n, s, tag});
      }
    }
  }
  return out;
}

PlacementMap make_placement(const SystemParams& params) {
  return {access_placement(params), private_placement(params)};
}

MiniCatalog::MiniCatalog(const Regime& regime, int n_files) : regime_(regime), n_files_(n_files) {
  for (const auto& s : k_subsets(IndexSet::interval(1, regime.lambda), regime.t_access)) {
    for (auto& tag : tags_for_subfile(regime, s)) {
      lookup_.emplace(std::pair{s, tag}, static_cast<std::uint32_t>(slots_.size()));
      slots_.emplace_back(s, std::move(tag));
    }
  }
}

std::uint32_t MiniCatalog::position(IndexSet subfile, const Tag& tag) const {
  auto it = lookup_.find({subfile, tag});
  if (it == lookup_.end()) {
    throw SchemeInvariantError("no mini-subfile (" + subfile.compact() + ", " + tag.compact() +
                               ") in this placement");
  }
  return it->second;
}

std::uint32_t MiniCatalog::id(const MiniSubfileId& mini) const {
  if (mini.file < 1 || mini.file > n_files_) {
    throw SchemeInvariantError("file index " + std::to_string(mini.file) + " out of range");
  }
  return static_cast<std::uint32_t>(static_cast<std::size_t>(mini.file - 1) * slots_.size() +
                                    position(mini.subfile, mini.tag));
}

MiniSubfileId MiniCatalog::at(std::uint32_t id) const {
  const std::size_t f = slots_.size();
  const auto& [s, tag] = slots_[id % f];
  return {static_cast<int>(id / f) + 1, s, tag};
}

bool MiniCatalog::readable_from_access(UserId user, std::uint32_t id) const {
  return slots_[id % slots_.size()].first.intersects(user);
}

namespace {

MemorySplit split_factor(const Rational& t) {
  MemorySplit split;
  split.lo = static_cast<int>(floor_to_int(t));
  split.hi = static_cast<int>(ceil_to_int(t));
  split.alpha = split.lo == split.hi ? Rational(1) : Rational(t - split.lo);
  return split;
}

struct Corner {
  int value;
  Rational weight;
};

std::vector<Corner> corners(const MemorySplit& split) {
  if (split.lo == split.hi) return {{split.lo, Rational(1)}};
  return {{split.hi, split.alpha}, {split.lo, Rational(1) - split.alpha}};
}

SystemParams regime_params(const SystemParams& params, const Regime& regime) {
  SystemParams p = params;
  p.m_access = Rational(regime.t_access) * params.n_files / params.lambda;
  p.m_private = Rational(regime.t_private) * params.n_files / params.users();
  p.file_bits = 0;
  return p;
}

}  // namespace

MemorySplits memory_split(const SystemParams& params) {
  return {split_factor(params.t_access()), split_factor(params.t_private())};
}

std::vector<SchemePart> scheme_parts(const SystemParams& params, std::int64_t file_bits) {
  const auto splits = memory_split(params);
  std::vector<SchemePart> parts;
  for (const auto& a : corners(splits.access)) {
    for (const auto& p : corners(splits.private_)) {
      const Rational weight = a.weight * p.weight;
      if (weight == 0) continue;
      SchemePart part;
      part.regime = integer_regime(regime_params(params, {params.lambda, params.r, a.value, p.value}));
      part.weight = weight;
      const Rational bits = weight * file_bits;
      const std::int64_t f = part.regime.subpacketization();
      if (!is_integer(bits) || to_int(bits) % f != 0) {
        throw ParameterError("file_bits = " + std::to_string(file_bits) +
                             " does not split exactly: part (t_a=" +
                             std::to_string(a.value) + ", t_p=" + std::to_string(p.value) +
                             ") gets " + format_rational(bits) + " bits for F = " +
                             std::to_string(f));
      }
      part.bits_per_file = to_int(bits);
      part.bits_per_mini = part.bits_per_file / f;
      part.params = regime_params(params, part.regime);
      part.params.file_bits = part.bits_per_file;
      parts.push_back(part);
    }
  }
  return parts;
}

std::int64_t minimal_file_bits(const SystemParams& params) {
  const auto splits = memory_split(params);
  std::int64_t bits = 1;
  for (const auto& a : corners(splits.access)) {
    for (const auto& p : corners(splits.private_)) {
      const Rational weight = a.weight * p.weight;
      if (weight == 0) continue;
      const Regime regime =
          integer_regime(regime_params(params, {params.lambda, params.r, a.value, p.value}));
      const std::int64_t f = regime.subpacketization();
      const auto num = boost::multiprecision::numerator(weight).convert_to<std::int64_t>();
      const auto den = boost::multiprecision::denominator(weight).convert_to<std::int64_t>();
      // weight·B / F is an integer iff den·F / gcd(num, F) divides B.
      bits = std::lcm(bits, den * f / std::gcd(num, f));
    }
  }
  return bits;
}

bool MemoryAccounting::access_exact() const {
  return std::all_of(access_bits.begin(), access_bits.end(),
                     [&](const auto& kv) { return Rational(kv.second) == access_budget_bits; });
}

bool MemoryAccounting::private_exact() const {
  return std::all_of(private_bits.begin(), private_bits.end(),
                     [&](const auto& kv) { return Rational(kv.second) == private_budget_bits; });
}

MemoryAccounting account_memory(const SystemParams& params, std::int64_t file_bits) {
  MemoryAccounting acc;
  acc.file_bits = file_bits;
  acc.access_budget_bits = params.m_access * file_bits;
  acc.private_budget_bits = params.m_private * file_bits;
  for (int a = 1; a <= params.lambda; ++a) acc.access_bits[a] = 0;
  for (const auto& u : all_users(params.lambda, params.r)) acc.private_bits[u] = 0;

  for (const auto& part : scheme_parts(params, file_bits)) {
    const SystemParams& p = part.params;
    const std::int64_t subfile_bits = part.bits_per_mini * part.regime.minis_per_subfile();
    for (const auto& [cache, contents] : access_placement(p)) {
      acc.access_bits[cache] += static_cast<std::int64_t>(contents.size()) * subfile_bits;
    }
    for (const auto& [user, contents] : private_placement(p)) {
      acc.private_bits[user] += static_cast<std::int64_t>(contents.size()) * part.bits_per_mini;
    }
  }
  return acc;
}

}  // namespace cmap

#include "cmap/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "cmap/delivery.hpp"
#include "cmap/errors.hpp"

namespace cmap {

Rational cmap_rate(int lambda, int r, int t) {
  Rational rate(binom(lambda - r - t, r), binom(t + r, t));
  for (int i = 1; i <= r - 1; ++i) {
    rate += Rational(binom(r, i) * binom(lambda - t - r, r - i), 2 * binom(t + i, i));
  }
  return rate;
}

namespace {

// Linear interpolation of f over integer t.
Rational interpolate(const Rational& t, const std::function<Rational(std::int64_t)>& f) {
  const auto lo = floor_to_int(t);
  if (is_integer(t)) return f(lo);
  const Rational alpha = t - lo;
  return (1 - alpha) * f(lo) + alpha * f(lo + 1);
}

void check_memory(const Rational& memory, std::int64_t n_files) {
  if (memory < 0 || memory > n_files) {
    throw ParameterError("memory " + format_rational(memory) + " outside [0, " +
                         std::to_string(n_files) + "]");
  }
}

Rational clamp_memory(const Rational& memory, std::int64_t n_files) {
  return memory > n_files ? Rational(n_files) : memory;
}

}  // namespace

Rational man_rate(std::int64_t users, const Rational& memory, std::int64_t n_files) {
  check_memory(memory, n_files);
  // binom(K, t+1)/binom(K, t) = (K-t)/(t+1), without the large binomials
  return interpolate(users * memory / n_files, [&](std::int64_t t) {
    return t >= users ? Rational(0) : Rational(users - t, t + 1);
  });
}

Rational cmacc_rate(int lambda, int r, const Rational& memory, std::int64_t n_files) {
  check_memory(memory, n_files);
  return interpolate(lambda * memory / n_files, [&](std::int64_t t) {
    return Rational(binom(lambda, t + r), binom(lambda, t));
  });
}

UncodedBounds uncoded_bounds(const SystemParams& params) {
  const auto n = params.n_files;
  UncodedBounds b;
  b.lower = man_rate(params.users(), clamp_memory(params.r * params.m_access + params.m_private, n), n);
  b.upper = cmacc_rate(params.lambda, params.r,
                       clamp_memory(params.m_access + params.m_private / params.r, n), n);
  return b;
}

CutsetBound cutset_bound(const SystemParams& params) {
  CutsetBound best;
  best.best_s = 1;
  const std::int64_t s_max = std::min<std::int64_t>(params.users(), params.n_files);
  for (std::int64_t s = 1; s <= s_max; ++s) {
    const std::int64_t q = std::min<std::int64_t>(s + params.r - 1, params.lambda);
    Rational term = s - (q * params.m_access + s * params.m_private) / (params.n_files / s);
    if (term < 0) term = 0;
    if (term > best.value) {
      best.value = term;
      best.best_s = static_cast<int>(s);
    }
  }
  return best;
}

std::int64_t transmission_lower_bound(int lambda, int r, int t) {
  if (t > lambda - r) return 0;
  const std::int64_t w = binom(lambda - t, r);
  const std::int64_t x = w - lambda + r + t - 2;
  return w * binom(lambda - r + 1, t + 1) - binom(lambda - r + 2, t + 2) + x * (x + 1) / 2;
}

std::int64_t coding_gain(int i, int t, int r) {
  return i == 0 ? binom(t + r, r) : 2 * binom(t + i, i);
}

namespace {

std::optional<Rational> corner_rate(const Regime& regime) {
  if (regime.full_access()) return Rational(0);
  if (regime.t_private > regime.wanting_users()) return std::nullopt;
  if (regime.t_private == 1) return cmap_rate(regime.lambda, regime.r, regime.t_access);
  if (regime.t_private == 0) {
    return Rational(binom(regime.lambda, regime.t_access + regime.r), binom(regime.lambda, regime.t_access));
  }
  if (regime.lambda == 4 && regime.r == 2 && regime.t_access == 1 && regime.t_private == 2) {
    return Rational(1, 6);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> achievable_rate(const SystemParams& params) {
  const Rational ta = params.t_access();
  const Rational tp = params.t_private();
  if (ta < 0 || ta > params.lambda || tp < 0) return std::nullopt;
  const auto splits = memory_split(params);
  const auto corners = [](const MemorySplit& s) {
    std::vector<std::pair<int, Rational>> out{{s.hi, s.alpha}};
    if (s.lo != s.hi) out.emplace_back(s.lo, 1 - s.alpha);
    return out;
  };
  Rational rate = 0;
  for (const auto& [a, wa] : corners(splits.access)) {
    for (const auto& [p, wp] : corners(splits.private_)) {
      if (wa * wp == 0) continue;
      const auto r = corner_rate({params.lambda, params.r, a, p});
      if (!r) return std::nullopt;
      rate += wa * wp * *r;
    }
  }
  return rate;
}

namespace {

bool holds(UserId user, const MiniSubfileId& mini) {
  return mini.subfile.intersects(user) || mini.tag.contains(user);
}

}  // namespace

IndexCodingInstance index_coding_instance(const SystemParams& params, const DemandVector& demand) {
  IndexCodingInstance inst;
  std::map<MiniSubfileId, std::uint32_t> index;
  const Regime regime = integer_regime(params);
  for (UserId u : all_users(regime.lambda, regime.r)) {
    for (const auto& [s, tag] : user_demand_set(params, u)) {
      MiniSubfileId mini{demand.file_for(u), s, tag};
      auto [it, fresh] = index.emplace(mini, static_cast<std::uint32_t>(inst.messages.size()));
      if (fresh) inst.messages.push_back(mini);
      inst.receivers.push_back({u, it->second, {}});
    }
  }
  for (auto& rx : inst.receivers) {
    for (std::uint32_t m = 0; m < inst.messages.size(); ++m) {
      if (m != rx.wanted && holds(rx.user, inst.messages[m])) rx.side_info.insert(m);
    }
  }
  return inst;
}

namespace {

// Receivers wanting each message.
std::map<std::uint32_t, std::vector<const IndexCodingInstance::Receiver*>> wanting(
    const IndexCodingInstance& inst) {
  std::map<std::uint32_t, std::vector<const IndexCodingInstance::Receiver*>> out;
  for (const auto& rx : inst.receivers) out[rx.wanted].push_back(&rx);
  return out;
}

// Some receiver of `m` holds nothing else in `live`.
bool free_in(std::uint32_t m, const std::set<std::uint32_t>& live,
             const std::map<std::uint32_t, std::vector<const IndexCodingInstance::Receiver*>>& want) {
  auto it = want.find(m);
  if (it == want.end()) return false;
  for (const auto* rx : it->second) {
    const bool clean = std::none_of(live.begin(), live.end(), [&](std::uint32_t o) {
      return o != m && rx->side_info.count(o);
    });
    if (clean) return true;
  }
  return false;
}

}  // namespace

bool is_generalized_independent(const IndexCodingInstance& instance,
                                const std::vector<std::uint32_t>& set) {
  const auto want = wanting(instance);
  std::set<std::uint32_t> live(set.begin(), set.end());
  // a message free in a set stays free in every subset, so greedy removal is exact
  while (!live.empty()) {
    auto it = std::find_if(live.begin(), live.end(),
                           [&](std::uint32_t m) { return free_in(m, live, want); });
    if (it == live.end()) return false;
    live.erase(it);
  }
  return true;
}

bool is_generalized_independent_exhaustive(const IndexCodingInstance& instance,
                                           const std::vector<std::uint32_t>& set) {
  if (set.size() > 20) throw ParameterError("exhaustive independence check limited to 20 messages");
  const auto want = wanting(instance);
  const std::uint64_t n = set.size();
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::set<std::uint32_t> sub;
    for (std::uint64_t k = 0; k < n; ++k) {
      if (mask >> k & 1) sub.insert(set[k]);
    }
    if (std::none_of(sub.begin(), sub.end(), [&](std::uint32_t m) { return free_in(m, sub, want); })) {
      return false;
    }
  }
  return true;
}

IndependentSetConstruction construct_independent_set(const SystemParams& params,
                                                     const DemandVector& demand) {
  const Regime regime = integer_regime(params);
  if (regime.t_private != 1) throw ParameterError("the independent set construction needs t_p = 1");
  if (!demand.all_distinct()) throw ParameterError("the independent set construction needs distinct demands");
  const int L = regime.lambda, r = regime.r, t = regime.t_access;
  const auto users = all_users(L, r);

  IndependentSetConstruction out;
  const auto mini = [&](UserId u, IndexSet s, UserId other) {
    return MiniSubfileId{demand.file_for(u), s, Tag{other}};
  };
  for (int i = 1; i <= L - r - t + 1; ++i) {
    const UserId ui = users[static_cast<std::size_t>(i - 1)];
    for (IndexSet s : k_subsets(IndexSet::interval(r + i, L), t)) {
      const auto want = users_missing(L, r, s);
      for (std::size_t k = static_cast<std::size_t>(i); k < want.size(); ++k) {
        out.first.push_back(mini(ui, s, want[k]));
      }
    }
  }
  const IndexSet last = IndexSet::interval(L - t + 1, L);
  const auto want = users_missing(L, r, last);
  for (std::size_t m = static_cast<std::size_t>(std::max(L - r - t + 1, 0)); m < want.size(); ++m) {
    for (std::size_t k = m + 1; k < want.size(); ++k) out.second.push_back(mini(want[m], last, want[k]));
  }

  // ordered criterion, with users ranked lexicographically
  std::map<int, UserId> by_file;
  std::map<UserId, std::size_t> rank;
  for (std::size_t k = 0; k < users.size(); ++k) {
    by_file[demand.file_for(users[k])] = users[k];
    rank[users[k]] = k;
  }
  std::vector<MiniSubfileId> all = out.first;
  all.insert(all.end(), out.second.begin(), out.second.end());
  out.ordered_check = true;
  for (const auto& m : all) {
    const UserId owner = by_file.at(m.file);
    for (const auto& o : all) {
      if (o == m || rank[by_file.at(o.file)] < rank[owner]) continue;
      if (holds(owner, o)) out.ordered_check = false;
    }
  }

  const auto inst = index_coding_instance(params, demand);
  std::map<MiniSubfileId, std::uint32_t> index;
  for (std::uint32_t k = 0; k < inst.messages.size(); ++k) index[inst.messages[k]] = k;
  std::vector<std::uint32_t> ids;
  for (const auto& m : all) {
    auto it = index.find(m);
    if (it == index.end()) {
      throw SchemeInvariantError("constructed message is not demanded: " + m.subfile.compact() + "|" +
                                 m.tag.compact());
    }
    ids.push_back(it->second);
  }
  out.exact_check = is_generalized_independent(inst, ids);
  if (ids.size() <= 16) out.exhaustive_check = is_generalized_independent_exhaustive(inst, ids);
  return out;
}

BoundsReport bounds_report(const SystemParams& params) {
  BoundsReport rep;
  rep.params = params;
  rep.rate_achievable = achievable_rate(params);
  const auto unc = uncoded_bounds(params);
  rep.man_lb = unc.lower;
  rep.cmacc_ub = unc.upper;
  const auto cut = cutset_bound(params);
  rep.cutset_lb = cut.value;
  rep.cutset_s = cut.best_s;

  const Rational ta = params.t_access(), tp = params.t_private();
  if (is_integer(ta) && is_integer(tp) && ta >= 0 && ta <= params.lambda && tp >= 0) {
    const Regime regime{params.lambda, params.r, static_cast<int>(to_int(ta)), static_cast<int>(to_int(tp))};
    if (regime.full_access() || regime.t_private <= regime.wanting_users()) {
      rep.subpacketization = regime.subpacketization();
      if (regime.t_private == 1 || regime.full_access()) {
        rep.alpha_lb = transmission_lower_bound(regime.lambda, regime.r, regime.t_access);
        rep.alpha_lb_normalized = Rational(*rep.alpha_lb, *rep.subpacketization);
      }
    }
  }
  return rep;
}

}  // namespace cmap

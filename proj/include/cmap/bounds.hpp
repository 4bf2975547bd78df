#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmap/model.hpp"
#include "cmap/placement.hpp"
#include "cmap/rational.hpp"

namespace cmap {

/// Worst-case rate of the greedy orbit scheme with one private copy per
/// mini-subfile (t_p = 1), integer access replication t:
///   binom(Λ-r-t, r)/binom(t+r, t) + Σ_{i=1}^{r-1} binom(r,i)·binom(Λ-t-r, r-i) / (2·binom(t+i, i))
Rational cmap_rate(int lambda, int r, int t);

/// Dedicated-cache baseline rate binom(K, t+1)/binom(K, t), t = K·M/N,
/// linearly interpolated between integer t. Throws ParameterError unless 0 <= M <= N.
Rational man_rate(std::int64_t users, const Rational& memory, std::int64_t n_files);

/// Multi-access baseline rate binom(Λ, t+r)/binom(Λ, t), t = Λ·M/N, interpolated.
Rational cmacc_rate(int lambda, int r, const Rational& memory, std::int64_t n_files);

/// Rate bracket under uncoded placement at matched per-user memory:
/// dedicated caches of r·M_a + M_p below, multi-access caches of
/// M_a + M_p/r above. Memories beyond N are clamped to N.
struct UncodedBounds {
  Rational lower{0};
  Rational upper{0};
};
UncodedBounds uncoded_bounds(const SystemParams& params);

/// max over s in [1, min(K, N)] of s - (q·M_a + s·M_p)/⌊N/s⌋ with
/// q = min(s + r - 1, Λ) caches reachable by the first s users; negative
/// terms count as 0.
struct CutsetBound {
  Rational value{0};
  int best_s = 0;
};
CutsetBound cutset_bound(const SystemParams& params);

/// Closed-form lower bound on the transmission count of the greedy orbit
/// scheme (t_p = 1). 0 when no user misses anything (t > Λ - r).
std::int64_t transmission_lower_bound(int lambda, int r, int t);

/// Users served per transmission: binom(t+r, r) for no-overlap orbits,
/// 2·binom(t+i, i) for overlap i.
std::int64_t coding_gain(int i, int t, int r);

/// Rate achieved by this library's schemes, with memory sharing for
/// fractional replication factors. Empty when some corner has no scheme
/// (t_p >= 2 outside (Λ=4, r=2, t_a=1, t_p=2)).
std::optional<Rational> achievable_rate(const SystemParams& params);

/// Messages and receivers of the delivery-phase index coding problem.
struct IndexCodingInstance {
  struct Receiver {
    UserId user;
    std::uint32_t wanted = 0;            // index into messages
    std::set<std::uint32_t> side_info;   // indices into messages
  };
  std::vector<MiniSubfileId> messages;
  std::vector<Receiver> receivers;
};

/// One receiver per demanded mini-subfile; side information is every other
/// demanded mini the user already holds. Requires t_p = 1 or t_p = 0.
IndexCodingInstance index_coding_instance(const SystemParams& params, const DemandVector& demand);

/// Exact test: every subset C of `set` has a message whose receiver holds none
/// of C's other messages. Polynomial, by repeatedly removing such a message.
bool is_generalized_independent(const IndexCodingInstance& instance,
                                const std::vector<std::uint32_t>& set);
/// Brute force over all 2^|set| subsets. Only for small sets (<= 20).
bool is_generalized_independent_exhaustive(const IndexCodingInstance& instance,
                                           const std::vector<std::uint32_t>& set);

/// The explicit generalized independent set behind transmission_lower_bound.
struct IndependentSetConstruction {
  std::vector<MiniSubfileId> first;   // users U_1 .. U_{Λ-r-t+1} against later wanting users
  std::vector<MiniSubfileId> second;  // subfile [Λ-t+1, Λ] among its remaining users
  bool ordered_check = false;  // demanding user holds no message of an equal or later user
  bool exact_check = false;    // is_generalized_independent on the union
  std::optional<bool> exhaustive_check;  // run when the union has at most 16 messages

  std::size_t size() const { return first.size() + second.size(); }
};
/// Requires worst-case (all distinct) demands and t_p = 1.
IndependentSetConstruction construct_independent_set(const SystemParams& params,
                                                     const DemandVector& demand);

struct BoundsReport {
  SystemParams params;
  std::optional<std::int64_t> subpacketization;
  std::optional<Rational> rate_achievable;
  Rational man_lb{0};
  Rational cmacc_ub{0};
  Rational cutset_lb{0};
  int cutset_s = 0;
  std::optional<std::int64_t> alpha_lb;
  std::optional<Rational> alpha_lb_normalized;
};

/// Evaluates every bound. Constraint violations (e.g. M_a + M_p >= N) are
/// tolerated so sweeps can cover the whole t range.
BoundsReport bounds_report(const SystemParams& params);

}  // namespace cmap

#pragma once

#include <array>
#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmap/model.hpp"
#include "cmap/placement.hpp"

namespace cmap {

/// W_{d_user, subfile, tag}: the piece of user's demanded file named by
/// (subfile, tag). Symbolic in the demand; resolve() binds the file index.
struct Term {
  UserId user;
  IndexSet subfile;
  Tag tag;

  MiniSubfileId resolve(const DemandVector& demand) const {
    return {demand.file_for(user), subfile, tag};
  }

  /// `d(12)|3|14`; a multi-member tag renders as `d(12)|3|14,24`.
  std::string compact() const;
  static Term parse(std::string_view text);

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// XOR of its terms. `overlap` is |U ∩ U'| of the term that generated it
/// (0 for no-overlap and baseline transmissions).
struct Transmission {
  std::vector<Term> terms;
  int overlap = 0;

  /// Sorts terms by (user, subfile, tag).
  void canonicalize();
  /// Terms joined by '+'.
  std::string compact() const;
  static Transmission parse(std::string_view text);
};

using Schedule = std::vector<Transmission>;

/// {W_{d_U,S,U'}, W_{d_U',S,U}}. Requires a one-member tag different from the user.
std::array<Term, 2> flip(const Term& term);

/// Moves i elements of I = U ∩ U' into the subfile set in exchange for i
/// subfile elements, applied to both the user set and the tag.
std::vector<Term> swap_o(const Term& term, int i);

/// Moves i elements of the user set into the subfile set in exchange for i
/// subfile elements; the tag is kept. Requires U ∩ tag members = ∅.
std::vector<Term> swap_no(const Term& term, int i);

using DemandEntry = std::pair<IndexSet, Tag>;  // (S, tag)

/// Index pairs (S, tag) of the mini-subfiles `user` must receive, for t_p in {0, 1}.
std::set<DemandEntry> user_demand_set(const SystemParams& params, UserId user);

enum class Selection { Lexicographic, ReverseLexicographic };

/// Greedy orbit construction for t_p in {0, 1}: serve the users in order,
/// each time taking the chosen remaining demand entry and emitting the XOR of
/// its flip/swap orbit. Throws SchemeInvariantError if an orbit term was
/// already served.
Schedule build_transmissions(const SystemParams& params, const DemandVector& demand,
                             Selection selection = Selection::Lexicographic);

/// One transmission per (t+r)-subset S: XOR over r-subsets U ⊆ S of W_{d_U, S∖U}.
Schedule cmacc_delivery(int lambda, int r, int t);

/// Dedicated-cache baseline with K users: one transmission per (t+1)-subset.
Schedule man_delivery(int users, int t);

/// Each user's missing mini-subfiles for (Λ=4, r=2, t_a=1, t_p=2).
std::vector<Term> lambda4_tp2_missing(const SystemParams& params, UserId user);

/// Two six-term transmissions for (Λ=4, r=2, t_a=1, t_p=2). Bit k of
/// `grouping` (users in lexicographic order) sends user k's larger-subfile
/// mini in the first transmission instead of its smaller one. Every grouping
/// decodes.
inline constexpr unsigned kDefaultGrouping = 0b010100;
Schedule lambda4_tp2_delivery(const SystemParams& params, const DemandVector& demand,
                              unsigned grouping = kDefaultGrouping);

/// Picks the delivery for the parameter point: the greedy orbit construction
/// for t_p in {0, 1}, the two-transmission schedule for (4, 2, 1, 2), and
/// nothing when every user already reads the whole library.
Schedule deliver(const SystemParams& params, const DemandVector& demand);

}  // namespace cmap

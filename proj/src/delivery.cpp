#include "cmap/delivery.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cmap/errors.hpp"

namespace cmap {

std::string Term::compact() const {
  return "d(" + user.compact() + ")|" + subfile.compact() + "|" + tag.compact();
}

Term Term::parse(std::string_view text) {
  const auto bad = [&] { return ParameterError("malformed term '" + std::string(text) + "'"); };
  if (text.substr(0, 2) != "d(") throw bad();
  const auto close = text.find(")|");
  if (close == std::string_view::npos) throw bad();
  const auto rest = text.substr(close + 2);
  const auto bar = rest.find('|');
  if (bar == std::string_view::npos) throw bad();
  return {IndexSet::parse(text.substr(2, close - 2)), IndexSet::parse(rest.substr(0, bar)),
          Tag::parse(rest.substr(bar + 1))};
}

void Transmission::canonicalize() { std::sort(terms.begin(), terms.end()); }

std::string Transmission::compact() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out.push_back('+');
    out += terms[i].compact();
  }
  return out;
}

Transmission Transmission::parse(std::string_view text) {
  Transmission t;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('+', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) t.terms.push_back(Term::parse(text.substr(start, end - start)));
    start = end + 1;
  }
  return t;
}

std::array<Term, 2> flip(const Term& term) {
  if (term.tag.size() != 1) throw ParameterError("flip needs a one-user tag: " + term.compact());
  const UserId other = term.tag.only();
  if (other == term.user) throw ParameterError("flip of a term tagged with its own user: " + term.compact());
  return {term, Term{other, term.subfile, Tag{term.user}}};
}

std::vector<Term> swap_o(const Term& term, int i) {
  const UserId other = term.tag.only();
  const IndexSet overlap = term.user & other;
  const int t = term.subfile.size();
  if (overlap.empty()) throw ParameterError("swap_o needs overlapping user sets: " + term.compact());
  if (i < 1 || i > std::min(overlap.size(), t)) {
    throw ParameterError("swap_o order " + std::to_string(i) + " out of range");
  }
  std::vector<Term> out;
  for (IndexSet s_out : k_subsets(term.subfile, i)) {
    for (IndexSet u_out : k_subsets(overlap, i)) {
      out.push_back({(term.user | s_out) - u_out, (term.subfile | u_out) - s_out,
                     Tag{(other | s_out) - u_out}});
    }
  }
  return out;
}

std::vector<Term> swap_no(const Term& term, int i) {
  for (const auto& m : term.tag.members()) {
    if (m.intersects(term.user)) {
      throw ParameterError("swap_no needs disjoint user sets: " + term.compact());
    }
  }
  const int t = term.subfile.size();
  if (i < 1 || i > std::min(term.user.size(), t)) {
    throw ParameterError("swap_no order " + std::to_string(i) + " out of range");
  }
  std::vector<Term> out;
  for (IndexSet s_out : k_subsets(term.subfile, i)) {
    for (IndexSet u_out : k_subsets(term.user, i)) {
      out.push_back({(term.user | s_out) - u_out, (term.subfile | u_out) - s_out, term.tag});
    }
  }
  return out;
}

namespace {

Regime orbit_regime(const SystemParams& params) {
  const Regime regime = integer_regime(params);
  if (regime.t_private > 1) {
    throw ParameterError("the orbit construction needs t_p in {0, 1}, got " +
                         std::to_string(regime.t_private));
  }
  return regime;
}

// Orbit of one demanded term; `overlap` receives |U ∩ U'|.
std::vector<Term> orbit(const Term& term, int t, int r, int& overlap) {
  std::vector<Term> out{term};
  overlap = term.tag.empty() ? 0 : (term.user & term.tag.only()).size();
  if (overlap > 0) {
    for (int i = 1; i <= std::min(overlap, t); ++i) {
      for (auto& x : swap_o(term, i)) out.push_back(std::move(x));
    }
    std::vector<Term> flipped;
    flipped.reserve(2 * out.size());
    for (const auto& x : out) {
      for (auto& y : flip(x)) flipped.push_back(std::move(y));
    }
    return flipped;
  }
  for (int i = 1; i <= std::min(r, t); ++i) {
    for (auto& x : swap_no(term, i)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::set<DemandEntry> user_demand_set(const SystemParams& params, UserId user) {
  const Regime regime = orbit_regime(params);
  std::set<DemandEntry> out;
  if (regime.full_access()) return out;
  const IndexSet all = IndexSet::interval(1, regime.lambda);
  for (IndexSet s : k_subsets(all - user, regime.t_access)) {
    if (regime.t_private == 0) {
      out.emplace(s, Tag{});
      continue;
    }
    for (UserId other : users_missing(regime.lambda, regime.r, s)) {
      if (other != user) out.emplace(s, Tag{other});
    }
  }
  return out;
}

Schedule build_transmissions(const SystemParams& params, const DemandVector& demand,
                             Selection selection) {
  const Regime regime = orbit_regime(params);
  Schedule schedule;
  if (regime.full_access()) return schedule;

  auto users = all_users(regime.lambda, regime.r);
  if (selection == Selection::ReverseLexicographic) std::reverse(users.begin(), users.end());
  std::map<UserId, std::set<DemandEntry>> pending;
  for (UserId u : users) {
    demand.file_for(u);  // every user needs a demand
    pending[u] = user_demand_set(params, u);
  }

  for (UserId u : users) {
    auto& mine = pending[u];
    while (!mine.empty()) {
      const auto& pick = selection == Selection::Lexicographic ? *mine.begin() : *mine.rbegin();
      const Term seed{u, pick.first, pick.second};
      Transmission tx;
      tx.terms = orbit(seed, regime.t_access, regime.r, tx.overlap);
      for (const auto& term : tx.terms) {
        auto it = pending.find(term.user);
        if (it == pending.end() || it->second.erase({term.subfile, term.tag}) == 0) {
          throw SchemeInvariantError("orbit of " + seed.compact() + " reaches " + term.compact() +
                                     ", which is not pending");
        }
      }
      tx.canonicalize();
      schedule.push_back(std::move(tx));
    }
  }
  return schedule;
}

Schedule cmacc_delivery(int lambda, int r, int t) {
  if (lambda < 1 || r < 1 || r > lambda || t < 0 || t > lambda) {
    throw ParameterError("cmacc_delivery: bad (lambda, r, t)");
  }
  Schedule schedule;
  for (IndexSet s : k_subsets(IndexSet::interval(1, lambda), t + r)) {
    Transmission tx;
    for (UserId u : k_subsets(s, r)) tx.terms.push_back({u, s - u, Tag{}});
    tx.canonicalize();
    schedule.push_back(std::move(tx));
  }
  return schedule;
}

Schedule man_delivery(int users, int t) { return cmacc_delivery(users, 1, t); }

namespace {

Regime require_lambda4_tp2(const SystemParams& params) {
  const Regime regime = integer_regime(params);
  if (regime.lambda != 4 || regime.r != 2 || regime.t_access != 1 || regime.t_private != 2) {
    throw ParameterError("the two-transmission schedule needs (lambda, r, t_a, t_p) = (4, 2, 1, 2)");
  }
  return regime;
}

}  // namespace

std::vector<Term> lambda4_tp2_missing(const SystemParams& params, UserId user) {
  const Regime regime = require_lambda4_tp2(params);
  std::vector<Term> out;
  for (int s : (IndexSet::interval(1, 4) - user).elements()) {
    const IndexSet subfile{s};
    std::vector<UserId> others;
    for (UserId u : users_missing(regime.lambda, regime.r, subfile)) {
      if (u != user) others.push_back(u);
    }
    out.push_back({user, subfile, Tag(std::move(others))});
  }
  return out;
}

Schedule lambda4_tp2_delivery(const SystemParams& params, const DemandVector& demand,
                              unsigned grouping) {
  require_lambda4_tp2(params);
  if (grouping >= 64) throw ParameterError("grouping mask has 6 bits");
  Schedule schedule(2);
  const auto users = all_users(4, 2);
  for (std::size_t k = 0; k < users.size(); ++k) {
    demand.file_for(users[k]);
    auto missing = lambda4_tp2_missing(params, users[k]);
    const bool larger_first = (grouping >> k) & 1U;
    schedule[0].terms.push_back(missing[larger_first ? 1 : 0]);
    schedule[1].terms.push_back(missing[larger_first ? 0 : 1]);
  }
  for (auto& tx : schedule) tx.canonicalize();
  return schedule;
}

Schedule deliver(const SystemParams& params, const DemandVector& demand) {
  const Regime regime = integer_regime(params);
  if (regime.full_access()) return {};
  if (regime.t_private <= 1) return build_transmissions(params, demand);
  if (regime.lambda == 4 && regime.r == 2 && regime.t_access == 1 && regime.t_private == 2) {
    return lambda4_tp2_delivery(params, demand);
  }
  throw ParameterError("no delivery scheme for t_p = " + std::to_string(regime.t_private) +
                       " at this (lambda, r, t_a)");
}

}  // namespace cmap

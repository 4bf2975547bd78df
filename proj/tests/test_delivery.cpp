#include <doctest.h>

#include <algorithm>
#include <map>

#include "cmap/errors.hpp"
#include "cmap/delivery.hpp"

using namespace cmap;

namespace {

SystemParams point(int lambda, int r, int ta, int tp) {
  const auto k = binom(lambda, r);
  SystemParams p;
  p.lambda = lambda;
  p.r = r;
  p.n_files = static_cast<int>(k);
  p.m_access = Rational(ta * k, lambda);
  p.m_private = tp;
  return p;
}

Term T(const char* text) { return Term::parse(text); }

std::set<std::string> as_set(const std::vector<Term>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) out.insert(t.compact());
  return out;
}

std::set<std::string> as_set(const Schedule& s) {
  std::set<std::string> out;
  for (auto tx : s) {
    tx.canonicalize();
    out.insert(tx.compact());
  }
  return out;
}

}  // namespace

TEST_CASE("term notation round-trips") {
  const auto t = T("d(12)|3|14");
  CHECK(t.user == IndexSet{1, 2});
  CHECK(t.subfile == IndexSet{3});
  CHECK(t.tag == Tag{{1, 4}});
  CHECK(t.compact() == "d(12)|3|14");
  CHECK(T("d(12)|3|14,24").tag.size() == 2);
  CHECK(T("d(123)||").tag.empty());
  CHECK_THROWS_AS(T("x(12)|3|14"), ParameterError);
  const auto tx = Transmission::parse("d(12)|3|14+d(14)|3|12");
  CHECK(tx.terms.size() == 2);
  CHECK(tx.compact() == "d(12)|3|14+d(14)|3|12");
}

TEST_CASE("flip") {
  auto f = flip(T("d(12)|3|14"));
  CHECK(f[0].compact() == "d(12)|3|14");
  CHECK(f[1].compact() == "d(14)|3|12");
  f = flip(T("d(23)|1|34"));
  CHECK(f[1].compact() == "d(34)|1|23");
  const auto back = flip(f[1]);
  CHECK(back[1] == f[0]);
  CHECK_THROWS_AS(flip(T("d(12)|3|12")), ParameterError);
  CHECK_THROWS_AS(flip(T("d(12)|3|")), ParameterError);
}

TEST_CASE("swap_o") {
  CHECK(as_set(swap_o(T("d(123)|45|126"), 1)) ==
        std::set<std::string>{"d(234)|15|246", "d(134)|25|146", "d(235)|14|256", "d(135)|24|156"});
  CHECK(as_set(swap_o(T("d(12)|3|14"), 1)) == std::set<std::string>{"d(23)|1|34"});
  for (const auto& t : swap_o(T("d(123)|45|126"), 2)) CHECK_FALSE(t.subfile.intersects(t.user));
  CHECK(swap_o(T("d(123)|45|126"), 2).size() == 1);  // binom(2,2)·binom(2,2)
  CHECK_THROWS_AS(swap_o(T("d(12)|3|45"), 1), ParameterError);
  CHECK_THROWS_AS(swap_o(T("d(12)|3|14"), 2), ParameterError);
}

TEST_CASE("swap_no") {
  CHECK(as_set(swap_no(T("d(123)|45|678"), 2)) ==
        std::set<std::string>{"d(345)|12|678", "d(245)|13|678", "d(145)|23|678"});
  CHECK(as_set(swap_no(T("d(12)|3|45"), 1)) == std::set<std::string>{"d(13)|2|45", "d(23)|1|45"});
  for (const auto& t : swap_no(T("d(123)|45|678"), 1)) {
    CHECK(t.tag == Tag{{6, 7, 8}});
    CHECK_FALSE(t.subfile.intersects(t.user));
  }
  CHECK(swap_no(T("d(123)|45|678"), 1).size() == 6);
  CHECK_THROWS_AS(swap_no(T("d(12)|3|14"), 1), ParameterError);
}

TEST_CASE("user demand sets") {
  const auto p = point(4, 2, 1, 1);
  const std::set<DemandEntry> d12{{IndexSet{3}, Tag{{1, 4}}},
                                  {IndexSet{3}, Tag{{2, 4}}},
                                  {IndexSet{4}, Tag{{1, 3}}},
                                  {IndexSet{4}, Tag{{2, 3}}}};
  CHECK(user_demand_set(p, {1, 2}) == d12);
  const std::set<DemandEntry> d34{{IndexSet{1}, Tag{{2, 3}}},
                                  {IndexSet{1}, Tag{{2, 4}}},
                                  {IndexSet{2}, Tag{{1, 3}}},
                                  {IndexSet{2}, Tag{{1, 4}}}};
  CHECK(user_demand_set(p, {3, 4}) == d34);
  CHECK(user_demand_set(point(5, 2, 1, 1), {1, 2}).size() == 15);
  for (int lambda = 2; lambda <= 7; ++lambda) {
    for (int r = 1; r <= 3 && r <= lambda; ++r) {
      for (int t = 0; t <= lambda - r; ++t) {
        const auto size = user_demand_set(point(lambda, r, t, 1), IndexSet::interval(1, r)).size();
        CHECK(static_cast<std::int64_t>(size) == binom(lambda - r, t) * (binom(lambda - t, r) - 1));
      }
    }
  }
}

TEST_CASE("schedule at (4,2,1)") {
  const auto p = point(4, 2, 1, 1);
  const auto s = build_transmissions(p, worst_case_demand(p));
  CHECK(s.size() == 6);
  const std::set<std::string> expected{
      "d(12)|3|14+d(14)|3|12+d(23)|1|34+d(34)|1|23", "d(12)|3|24+d(13)|2|34+d(24)|3|12+d(34)|2|13",
      "d(12)|4|13+d(13)|4|12+d(24)|1|34+d(34)|1|24", "d(12)|4|23+d(14)|2|34+d(23)|4|12+d(34)|2|14",
      "d(13)|2|14+d(14)|2|13+d(23)|1|24+d(24)|1|23", "d(13)|4|23+d(14)|3|24+d(23)|4|13+d(24)|3|14"};
  CHECK(as_set(s) == expected);
  for (const auto& tx : s) CHECK(tx.overlap == 1);
}

TEST_CASE("schedule at (5,2,1)") {
  const auto p = point(5, 2, 1, 1);
  const auto s = build_transmissions(p, worst_case_demand(p));
  CHECK(s.size() == 40);
  CHECK(std::count_if(s.begin(), s.end(), [](const auto& tx) { return tx.overlap == 1; }) == 30);
  CHECK(std::count_if(s.begin(), s.end(), [](const auto& tx) { return tx.overlap == 0; }) == 10);
}

TEST_CASE("partition, size law and counts by class") {
  for (int lambda = 2; lambda <= 7; ++lambda) {
    for (int r = 1; r <= 3 && r <= lambda; ++r) {
      for (int t = 0; t <= lambda - r; ++t) {
        const auto p = point(lambda, r, t, 1);
        const auto s = build_transmissions(p, worst_case_demand(p));
        std::set<Term> seen;
        std::map<int, std::int64_t> by_class;
        for (const auto& tx : s) {
          const std::int64_t want = tx.overlap == 0 ? binom(t + r, t) : 2 * binom(t + tx.overlap, tx.overlap);
          CHECK(static_cast<std::int64_t>(tx.terms.size()) == want);
          for (const auto& term : tx.terms) CHECK(seen.insert(term).second);
          ++by_class[tx.overlap];
        }
        std::int64_t demanded = 0;
        for (const auto& u : all_users(lambda, r)) demanded += static_cast<std::int64_t>(user_demand_set(p, u).size());
        CHECK(static_cast<std::int64_t>(seen.size()) == demanded);

        const auto base = binom(lambda, t) * binom(lambda - t, r);
        CHECK(by_class[0] * binom(t + r, r) == base * binom(lambda - r - t, r));
        for (int i = 1; i < r; ++i) {
          CHECK(by_class[i] * 2 * binom(t + i, i) == base * binom(r, i) * binom(lambda - r - t, r - i));
        }
      }
    }
  }
}

TEST_CASE("reverse selection gives the same count") {
  for (int lambda = 2; lambda <= 7; ++lambda) {
    for (int r = 1; r <= 3 && r <= lambda; ++r) {
      for (int t = 0; t <= lambda - r; ++t) {
        const auto p = point(lambda, r, t, 1);
        const auto d = worst_case_demand(p);
        CHECK(build_transmissions(p, d).size() ==
              build_transmissions(p, d, Selection::ReverseLexicographic).size());
      }
    }
  }
}

TEST_CASE("no private memory reduces to the multi-access baseline") {
  for (int lambda = 2; lambda <= 7; ++lambda) {
    for (int r = 1; r <= 3 && r <= lambda; ++r) {
      for (int t = 0; t <= lambda; ++t) {
        const auto p = point(lambda, r, t, 0);
        const auto s = build_transmissions(p, worst_case_demand(p));
        CHECK(as_set(s) == as_set(cmacc_delivery(lambda, r, t)));
        CHECK(static_cast<std::int64_t>(s.size()) == binom(lambda, t + r));
      }
    }
  }
}

TEST_CASE("baseline deliveries") {
  CHECK(cmacc_delivery(4, 2, 1).size() == 4);
  CHECK(cmacc_delivery(5, 2, 1).size() == 10);
  CHECK(cmacc_delivery(6, 2, 4).size() == 1);
  const auto man = man_delivery(6, 4);
  CHECK(man.size() == 6);
  CHECK(man_delivery(2, 1).size() == 1);
  CHECK(man_delivery(2, 1)[0].compact() == "d(1)|2|+d(2)|1|");
  CHECK(man_delivery(5, 5).empty());
}

TEST_CASE("Lambda = 4 two-transmission schedule") {
  const auto p = point(4, 2, 1, 2);
  const auto d = worst_case_demand(p);
  const auto s = lambda4_tp2_delivery(p, d);
  REQUIRE(s.size() == 2);
  CHECK(s[0].compact() ==
        "d(12)|3|14,24+d(13)|2|14,34+d(14)|3|12,24+d(23)|1|24,34+d(24)|3|12,14+d(34)|1|23,24");
  CHECK(s[1].compact() ==
        "d(12)|4|13,23+d(13)|4|12,23+d(14)|2|13,34+d(23)|4|12,13+d(24)|1|23,34+d(34)|2|13,14");
  const auto missing = lambda4_tp2_missing(p, {1, 3});
  REQUIRE(missing.size() == 2);
  CHECK(missing[1].compact() == "d(13)|4|12,23");
  CHECK(deliver(p, d).size() == 2);
  CHECK_THROWS_AS(lambda4_tp2_delivery(point(4, 2, 1, 1), d), ParameterError);
  CHECK_THROWS_AS(lambda4_tp2_delivery(p, d, 64), ParameterError);
}

TEST_CASE("dispatcher") {
  const auto full = point(4, 2, 3, 0);
  CHECK(deliver(full, worst_case_demand(full)).empty());
  const auto none = point(5, 2, 1, 2);
  CHECK_THROWS_AS(deliver(none, worst_case_demand(none)), ParameterError);
}

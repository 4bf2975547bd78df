#include "cmap/decode.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cmap/errors.hpp"
#include "cmap/kernels.hpp"

namespace cmap {

UserKnowledge::UserKnowledge(const MiniCatalog& catalog, const PlacementMap& placement, UserId user)
    : catalog_(&catalog), user_(user), known_(catalog.size(), 0) {
  std::set<SubfileId> reachable;
  for (int a : user.elements()) {
    auto it = placement.access.find(a);
    if (it != placement.access.end()) reachable.insert(it->second.begin(), it->second.end());
  }
  for (std::uint32_t id = 0; id < catalog.size(); ++id) {
    // cheap pre-filter before the set lookup
    if (!catalog.readable_from_access(user, id)) continue;
    const auto mini = catalog.at(id);
    if (reachable.count({mini.file, mini.subfile})) learn_id(id);
  }
  auto it = placement.private_caches.find(user);
  if (it != placement.private_caches.end()) {
    for (const auto& mini : it->second) learn_id(catalog.id(mini));
  }
}

bool UserKnowledge::knows(const MiniSubfileId& mini) const { return knows_id(catalog_->id(mini)); }

void UserKnowledge::learn_id(std::uint32_t id) {
  if (!known_[id]) {
    known_[id] = 1;
    ++count_;
  }
}

std::set<MiniSubfileId> peel_decode(UserId user, const Schedule& schedule,
                                    UserKnowledge& knowledge, const DemandVector& demand) {
  if (knowledge.user() != user) throw ParameterError("knowledge belongs to another user");
  const auto compiled = compile_schedule(schedule, demand, knowledge.catalog());
  std::vector<UserKnowledge> one{knowledge};
  const auto outcome = serial::peel_users(compiled, one);
  knowledge = one.front();
  std::set<MiniSubfileId> out;
  for (const auto& step : outcome.front().steps) out.insert(knowledge.catalog().at(step.mini));
  return out;
}

std::string VerificationReport::summary_line() const {
  return std::string(pass ? "PASS" : "FAIL") + " users=" + std::to_string(users.size()) +
         " missing=" + std::to_string(total_missing);
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& u : users) {
    out << "user " << u.user.compact() << ": demanded " << u.demanded << " decoded " << u.decoded;
    if (!u.missing.empty()) {
      out << " missing";
      for (const auto& m : u.missing) {
        out << ' ' << m.file << '|' << m.subfile.compact() << '|' << m.tag.compact();
      }
    }
    out << '\n';
  }
  out << summary_line() << '\n';
  return out.str();
}

namespace {

VerificationReport verify_impl(const SystemParams& params, const DemandVector& demand,
                               const Schedule& schedule, bool parallel) {
  const Regime regime = integer_regime(params);
  const MiniCatalog catalog(regime, params.n_files);
  const PlacementMap placement = make_placement(params);
  const auto compiled = compile_schedule(schedule, demand, catalog);
  const auto users = all_users(regime.lambda, regime.r);
  const auto f = static_cast<std::uint32_t>(catalog.subpacketization());

  std::vector<UserKnowledge> knowledge;
  knowledge.reserve(users.size());
  VerificationReport report;
  std::vector<std::vector<std::uint32_t>> lacking(users.size());
  for (std::size_t k = 0; k < users.size(); ++k) {
    knowledge.emplace_back(catalog, placement, users[k]);
    const auto first = static_cast<std::uint32_t>(demand.file_for(users[k]) - 1) * f;
    for (std::uint32_t id = first; id < first + f; ++id) {
      if (!knowledge.back().knows_id(id)) lacking[k].push_back(id);
    }
  }

  const auto outcomes = parallel ? parallel::peel_users(compiled, knowledge)
                                 : serial::peel_users(compiled, knowledge);

  report.pass = true;
  for (std::size_t k = 0; k < users.size(); ++k) {
    UserReport u;
    u.user = users[k];
    u.demanded = static_cast<std::int64_t>(lacking[k].size());
    for (auto id : lacking[k]) {
      if (knowledge[k].knows_id(id)) {
        ++u.decoded;
      } else {
        u.missing.push_back(catalog.at(id));
      }
    }
    u.steps = outcomes[k].steps;
    report.total_missing += static_cast<std::int64_t>(u.missing.size());
    report.users.push_back(std::move(u));
  }
  report.pass = report.total_missing == 0;
  return report;
}

bool get_bit(const std::vector<std::uint8_t>& bytes, std::int64_t j) {
  return (bytes[static_cast<std::size_t>(j >> 3)] >> (j & 7)) & 1;
}

}  // namespace

VerificationReport verify_all(const SystemParams& params, const DemandVector& demand,
                              const Schedule& schedule) {
  return verify_impl(params, demand, schedule, true);
}

VerificationReport verify_all_serial(const SystemParams& params, const DemandVector& demand,
                                     const Schedule& schedule) {
  return verify_impl(params, demand, schedule, false);
}

RoundtripResult bitlevel_roundtrip(const SystemParams& params, const DemandVector& demand,
                                   const Schedule& schedule, std::uint64_t seed,
                                   const RoundtripOptions& options) {
  const Regime regime = integer_regime(params);
  const std::int64_t f = regime.subpacketization();
  const std::int64_t b_total = params.file_bits;
  if (b_total <= 0 || b_total % f != 0) {
    throw ParameterError("file_bits = " + std::to_string(b_total) +
                         " must be a positive multiple of F = " + std::to_string(f));
  }
  const std::int64_t b = b_total / f;
  const auto words = static_cast<std::size_t>((b + 63) / 64);
  const auto n_files = static_cast<std::size_t>(params.n_files);
  const auto bytes_per_file = static_cast<std::size_t>((b_total + 7) / 8);

  // library
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint8_t>> files(n_files, std::vector<std::uint8_t>(bytes_per_file));
  for (auto& file : files) {
    for (auto& byte : file) byte = static_cast<std::uint8_t>(rng());
    if (b_total % 8) file.back() &= static_cast<std::uint8_t>((1U << (b_total % 8)) - 1);
  }

  const MiniCatalog catalog(regime, params.n_files);
  PayloadBuffer minis(catalog.size(), words);
  for (std::size_t n = 0; n < n_files; ++n) {
    for (std::int64_t pos = 0; pos < f; ++pos) {
      auto dst = minis.item(n * static_cast<std::size_t>(f) + static_cast<std::size_t>(pos));
      for (std::int64_t k = 0; k < b; ++k) {
        if (get_bit(files[n], pos * b + k)) dst[static_cast<std::size_t>(k >> 6)] |= 1ULL << (k & 63);
      }
    }
  }

  // caches hold copies; users read only from the caches they reach
  const PlacementMap placement = make_placement(params);
  std::map<int, std::pair<std::vector<std::uint32_t>, PayloadBuffer>> access_store;
  for (const auto& [a, contents] : placement.access) {
    std::vector<std::uint32_t> ids;
    for (std::uint32_t id = 0; id < catalog.size(); ++id) {
      const auto m = catalog.at(id);
      if (contents.count({m.file, m.subfile})) ids.push_back(id);
    }
    PayloadBuffer buf(ids.size(), words);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto src = std::as_const(minis).item(ids[i]);
      std::copy(src.begin(), src.end(), buf.item(i).begin());
    }
    access_store.emplace(a, std::pair{std::move(ids), std::move(buf)});
  }
  std::map<UserId, std::pair<std::vector<std::uint32_t>, PayloadBuffer>> private_store;
  for (const auto& [u, contents] : placement.private_caches) {
    std::vector<std::uint32_t> ids;
    for (const auto& m : contents) ids.push_back(catalog.id(m));
    PayloadBuffer buf(ids.size(), words);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto src = std::as_const(minis).item(ids[i]);
      std::copy(src.begin(), src.end(), buf.item(i).begin());
    }
    private_store.emplace(u, std::pair{std::move(ids), std::move(buf)});
  }

  RoundtripResult result;
  {
    const Rational access_budget = params.m_access * b_total;
    const Rational private_budget = params.m_private * b_total;
    bool exact = true;
    for (int a = 1; a <= regime.lambda; ++a) {
      auto it = access_store.find(a);
      const std::int64_t bits = it == access_store.end() ? 0 : static_cast<std::int64_t>(it->second.first.size()) * b;
      exact = exact && Rational(bits) == access_budget;
    }
    for (const auto& u : all_users(regime.lambda, regime.r)) {
      auto it = private_store.find(u);
      const std::int64_t bits = it == private_store.end() ? 0 : static_cast<std::int64_t>(it->second.first.size()) * b;
      exact = exact && Rational(bits) == private_budget;
    }
    result.caches_at_capacity = exact;
  }

  // server
  const auto compiled = compile_schedule(schedule, demand, catalog);
  PayloadBuffer sent(compiled.size(), words);
  if (options.parallel) {
    parallel::xor_encode(compiled, minis, sent);
  } else {
    serial::xor_encode(compiled, minis, sent);
  }
  if (options.corrupt_transmission) {
    if (*options.corrupt_transmission >= compiled.size()) {
      throw ParameterError("corrupt_transmission out of range");
    }
    const auto bit = static_cast<std::int64_t>(options.corrupt_bit) % b;
    sent.item(*options.corrupt_transmission)[static_cast<std::size_t>(bit >> 6)] ^= 1ULL << (bit & 63);
  }
  result.transmissions = compiled.size();
  result.bits_per_transmission = b;

  // users
  const auto users = all_users(regime.lambda, regime.r);
  std::vector<UserKnowledge> knowledge;
  std::vector<UserDecodeJob> jobs(users.size());
  for (std::size_t k = 0; k < users.size(); ++k) {
    auto& job = jobs[k];
    job.cached.assign(catalog.size(), {});
    for (int a : users[k].elements()) {
      auto it = access_store.find(a);
      if (it == access_store.end()) continue;
      const auto& [ids, buf] = it->second;
      for (std::size_t i = 0; i < ids.size(); ++i) job.cached[ids[i]] = buf.item(i);
    }
    if (auto it = private_store.find(users[k]); it != private_store.end()) {
      const auto& [ids, buf] = it->second;
      for (std::size_t i = 0; i < ids.size(); ++i) job.cached[ids[i]] = buf.item(i);
    }
    job.wanted_file_first_id = static_cast<std::uint32_t>((demand.file_for(users[k]) - 1) * f);
    knowledge.emplace_back(catalog, placement, users[k]);
  }
  const auto outcomes = options.parallel ? parallel::peel_users(compiled, knowledge)
                                         : serial::peel_users(compiled, knowledge);
  for (std::size_t k = 0; k < users.size(); ++k) jobs[k].steps = outcomes[k].steps;
  const auto rebuilt = options.parallel
                           ? parallel::decode_users(compiled, sent, jobs, static_cast<std::size_t>(f))
                           : serial::decode_users(compiled, sent, jobs, static_cast<std::size_t>(f));

  for (std::size_t k = 0; k < users.size(); ++k) {
    std::vector<std::uint8_t> bytes(bytes_per_file, 0);
    for (std::int64_t pos = 0; pos < f; ++pos) {
      auto src = rebuilt[k].item(static_cast<std::size_t>(pos));
      for (std::int64_t j = 0; j < b; ++j) {
        if ((src[static_cast<std::size_t>(j >> 6)] >> (j & 63)) & 1) {
          const std::int64_t bit = pos * b + j;
          bytes[static_cast<std::size_t>(bit >> 3)] |= static_cast<std::uint8_t>(1U << (bit & 7));
        }
      }
    }
    const auto& want = files[static_cast<std::size_t>(demand.file_for(users[k]) - 1)];
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < bytes_per_file; ++i) diff += bytes[i] != want[i];
    result.differing_bytes[users[k]] = diff;
    result.total_differing_bytes += diff;
  }
  result.pass = result.total_differing_bytes == 0;
  std::ostringstream detail;
  detail << (result.pass ? "PASS" : "FAIL") << " users=" << users.size()
         << " transmissions=" << result.transmissions << " bits_per_transmission=" << b
         << " differing_bytes=" << result.total_differing_bytes;
  result.detail = detail.str();
  return result;
}

}  // namespace cmap

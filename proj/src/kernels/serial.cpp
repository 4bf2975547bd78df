#include "common.hpp"

namespace cmap {

CompiledSchedule compile_schedule(const Schedule& schedule, const DemandVector& demand,
                                  const MiniCatalog& catalog) {
  CompiledSchedule out;
  out.offsets.reserve(schedule.size() + 1);
  for (const auto& tx : schedule) {
    for (const auto& term : tx.terms) out.ids.push_back(catalog.id(term.resolve(demand)));
    out.offsets.push_back(out.ids.size());
  }
  return out;
}

namespace serial {

void xor_encode(const CompiledSchedule& schedule, const PayloadBuffer& minis, PayloadBuffer& out) {
  for (std::size_t t = 0; t < schedule.size(); ++t) detail::encode_one(schedule, minis, out, t);
}

std::vector<PeelOutcome> peel_users(const CompiledSchedule& schedule,
                                    std::vector<UserKnowledge>& users) {
  std::vector<PeelOutcome> out;
  out.reserve(users.size());
  for (auto& u : users) out.push_back(detail::peel_one(schedule, u));
  return out;
}

std::vector<PayloadBuffer> decode_users(const CompiledSchedule& schedule,
                                        const PayloadBuffer& transmissions,
                                        const std::vector<UserDecodeJob>& jobs,
                                        std::size_t subpacketization) {
  std::vector<PayloadBuffer> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) {
    out.push_back(detail::decode_one(schedule, transmissions, job, subpacketization));
  }
  return out;
}

}  // namespace serial
}  // namespace cmap

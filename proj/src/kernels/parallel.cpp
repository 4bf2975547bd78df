#include "common.hpp"

namespace cmap::parallel {

void xor_encode(const CompiledSchedule& schedule, const PayloadBuffer& minis, PayloadBuffer& out) {
  const auto n = static_cast<std::ptrdiff_t>(schedule.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    detail::encode_one(schedule, minis, out, static_cast<std::size_t>(t));
  }
}

std::vector<PeelOutcome> peel_users(const CompiledSchedule& schedule,
                                    std::vector<UserKnowledge>& users) {
  std::vector<PeelOutcome> out(users.size());
  const auto n = static_cast<std::ptrdiff_t>(users.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    out[static_cast<std::size_t>(u)] = detail::peel_one(schedule, users[static_cast<std::size_t>(u)]);
  }
  return out;
}

std::vector<PayloadBuffer> decode_users(const CompiledSchedule& schedule,
                                        const PayloadBuffer& transmissions,
                                        const std::vector<UserDecodeJob>& jobs,
                                        std::size_t subpacketization) {
  std::vector<PayloadBuffer> out(jobs.size());
  detail::ErrorSlot errors;
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    errors.run([&] { out[k] = detail::decode_one(schedule, transmissions, jobs[k], subpacketization); });
  }
  errors.rethrow();
  return out;
}

}  // namespace cmap::parallel

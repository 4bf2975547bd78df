#pragma once

// Per-item bodies shared by the serial and OpenMP kernels.

#include <algorithm>
#include <exception>
#include <string>
#include <unordered_map>
#include <utility>

#include "cmap/decode.hpp"
#include "cmap/errors.hpp"
#include "cmap/kernels.hpp"

namespace cmap::detail {

// Exceptions may not leave an OpenMP region; keep the first and rethrow.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(cmap_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

inline void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

inline void encode_one(const CompiledSchedule& schedule, const PayloadBuffer& minis,
                       PayloadBuffer& out, std::size_t t) {
  auto dst = out.item(t);
  std::fill(dst.begin(), dst.end(), 0);
  for (auto id : schedule.terms(t)) xor_into(dst, minis.item(id));
}

inline PeelOutcome peel_one(const CompiledSchedule& schedule, UserKnowledge& user) {
  PeelOutcome outcome;
  std::vector<char> done(schedule.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t t = 0; t < schedule.size(); ++t) {
      if (done[t]) continue;
      int unknown = 0;
      std::uint32_t last = 0;
      for (auto id : schedule.terms(t)) {
        if (!user.knows_id(id)) {
          ++unknown;
          last = id;
          if (unknown > 1) break;
        }
      }
      if (unknown == 0) {
        done[t] = 1;
      } else if (unknown == 1) {
        user.learn_id(last);
        outcome.steps.push_back({t, last});
        done[t] = 1;
        progress = true;
      }
    }
  }
  return outcome;
}

inline PayloadBuffer decode_one(const CompiledSchedule& schedule, const PayloadBuffer& transmissions,
                                const UserDecodeJob& job, std::size_t subpacketization) {
  const std::size_t words = transmissions.words_per_item();
  PayloadBuffer learned(job.steps.size(), words);
  std::unordered_map<std::uint32_t, std::size_t> slot;
  const auto source = [&](std::uint32_t id) -> std::span<const std::uint64_t> {
    if (!job.cached[id].empty()) return job.cached[id];
    auto it = slot.find(id);
    if (it == slot.end()) {
      throw SchemeInvariantError("decode needs mini " + std::to_string(id) + " before it is known");
    }
    return std::as_const(learned).item(it->second);
  };

  for (std::size_t k = 0; k < job.steps.size(); ++k) {
    const auto& step = job.steps[k];
    auto dst = learned.item(k);
    auto tx = transmissions.item(step.transmission);
    std::copy(tx.begin(), tx.end(), dst.begin());
    for (auto id : schedule.terms(step.transmission)) {
      if (id != step.mini) xor_into(dst, source(id));
    }
    slot.emplace(step.mini, k);
  }

  PayloadBuffer file(subpacketization, words);
  for (std::size_t pos = 0; pos < subpacketization; ++pos) {
    const auto id = static_cast<std::uint32_t>(job.wanted_file_first_id + pos);
    if (job.cached[id].empty() && !slot.count(id)) continue;  // left zero, caught by the byte compare
    auto src = source(id);
    auto dst = file.item(pos);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return file;
}

}  // namespace cmap::detail

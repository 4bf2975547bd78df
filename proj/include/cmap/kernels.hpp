#pragma once

// Data-parallel kernels behind decode and the CLI sweep. Each kernel has a
// plain sequential version in cmap::serial, kept as the reference the OpenMP
// version in cmap::parallel is tested against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cmap/delivery.hpp"
#include "cmap/placement.hpp"

namespace cmap {

class UserKnowledge;
struct PeelStep;

/// Transmissions flattened to mini ids (CSR layout).
struct CompiledSchedule {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> ids;

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> terms(std::size_t t) const {
    return {ids.data() + offsets[t], offsets[t + 1] - offsets[t]};
  }
};

/// Resolves every term against the demand. Throws SchemeInvariantError for a
/// term that names no mini-subfile of the catalog.
CompiledSchedule compile_schedule(const Schedule& schedule, const DemandVector& demand,
                                  const MiniCatalog& catalog);

/// Fixed-width payloads stored back to back.
class PayloadBuffer {
 public:
  PayloadBuffer() = default;
  PayloadBuffer(std::size_t items, std::size_t words_per_item)
      : words_(words_per_item), data_(items * words_per_item, 0) {}

  std::size_t items() const { return words_ == 0 ? 0 : data_.size() / words_; }
  std::size_t words_per_item() const { return words_; }
  std::span<std::uint64_t> item(std::size_t i) { return {data_.data() + i * words_, words_}; }
  std::span<const std::uint64_t> item(std::size_t i) const {
    return {data_.data() + i * words_, words_};
  }

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Result of peeling one user.
struct PeelOutcome {
  std::vector<PeelStep> steps;
};

/// Per-user bit-level decoding input: which cached payloads the user reads.
struct UserDecodeJob {
  std::uint32_t wanted_file_first_id = 0;  // id of position 0 of the requested file
  std::vector<PeelStep> steps;
  /// Cached payload for a mini id, or an empty span.
  std::vector<std::span<const std::uint64_t>> cached;  // indexed by mini id
};

namespace serial {

/// out.item(t) = XOR of minis.item(id) over the ids of transmission t.
void xor_encode(const CompiledSchedule& schedule, const PayloadBuffer& minis, PayloadBuffer& out);

/// Peels every knowledge state to its fixpoint.
std::vector<PeelOutcome> peel_users(const CompiledSchedule& schedule,
                                    std::vector<UserKnowledge>& users);

/// Rebuilds each user's requested file: F payloads in position order.
std::vector<PayloadBuffer> decode_users(const CompiledSchedule& schedule,
                                        const PayloadBuffer& transmissions,
                                        const std::vector<UserDecodeJob>& jobs,
                                        std::size_t subpacketization);

}  // namespace serial

namespace parallel {

void xor_encode(const CompiledSchedule& schedule, const PayloadBuffer& minis, PayloadBuffer& out);

std::vector<PeelOutcome> peel_users(const CompiledSchedule& schedule,
                                    std::vector<UserKnowledge>& users);

std::vector<PayloadBuffer> decode_users(const CompiledSchedule& schedule,
                                        const PayloadBuffer& transmissions,
                                        const std::vector<UserDecodeJob>& jobs,
                                        std::size_t subpacketization);

}  // namespace parallel

}  // namespace cmap

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace phi4 {

// Counter-based RNG (Philox4x32-10). Every consumer owns a named stream
// derived from (master seed, stream name), so parallel fills are
// reproducible and independent of evaluation order.
class RngStream {
 public:
  RngStream(uint64_t seed, std::string_view stream_name);
  RngStream(uint64_t seed, uint64_t stream_id);

  double uniform();        // in (0,1)
  double normal();         // standard normal, Box-Muller
  uint64_t next_u64();

  // Derive a child stream, e.g. per-sample or per-mode substreams.
  RngStream sub(std::string_view name) const;
  RngStream sub(uint64_t id) const;

 private:
  uint64_t key_[2];
  uint64_t counter_ = 0;
  uint32_t block_[4];
  int block_pos_ = 4;   // next unread lane
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;

  void refill();
  uint32_t next_u32();
};

uint64_t fnv1a64(std::string_view s);

}  // namespace phi4

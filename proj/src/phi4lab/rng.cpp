#include "phi4lab/rng.hpp"

#include <cmath>

namespace phi4 {

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

inline void philox_round(uint32_t c[4], const uint32_t k[2]) {
  constexpr uint64_t M0 = 0xD2511F53ull;
  constexpr uint64_t M1 = 0xCD9E8D57ull;
  uint64_t p0 = M0 * c[0];
  uint64_t p1 = M1 * c[2];
  uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
  uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
  uint32_t out[4] = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  c[0] = out[0];
  c[1] = out[1];
  c[2] = out[2];
  c[3] = out[3];
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id) {
  // Mix seed and stream id so that distinct (seed, stream) pairs give
  // unrelated keys (splitmix64 finalizer).
  auto mix = [](uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  key_[0] = mix(seed ^ 0x8000000080003000ull);
  key_[1] = mix(stream_id + mix(seed));
}

RngStream::RngStream(uint64_t seed, std::string_view stream_name)
    : RngStream(seed, fnv1a64(stream_name)) {}

RngStream RngStream::sub(uint64_t id) const {
  RngStream s(key_[0], key_[1] ^ (id * 0x9E3779B97F4A7C15ull + 0x1234567));
  return s;
}

RngStream RngStream::sub(std::string_view name) const { return sub(fnv1a64(name)); }

void RngStream::refill() {
  uint32_t c[4] = {uint32_t(counter_), uint32_t(counter_ >> 32), 0x243F6A88u, 0x85A308D3u};
  uint32_t k[2] = {uint32_t(key_[0]), uint32_t(key_[1])};
  uint32_t kxtra[2] = {uint32_t(key_[0] >> 32), uint32_t(key_[1] >> 32)};
  c[2] ^= kxtra[0];
  c[3] ^= kxtra[1];
  constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int r = 0; r < 10; ++r) {
    philox_round(c, k);
    k[0] += W0;
    k[1] += W1;
  }
  block_[0] = c[0];
  block_[1] = c[1];
  block_[2] = c[2];
  block_[3] = c[3];
  ++counter_;
  block_pos_ = 0;
}

uint32_t RngStream::next_u32() {
  if (block_pos_ >= 4) refill();
  return block_[block_pos_++];
}

uint64_t RngStream::next_u64() {
  uint64_t lo = next_u32();
  uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  // 53 random bits into (0,1); offset by half an ulp so 0 never occurs.
  uint64_t bits = next_u64() >> 11;
  return (double(bits) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

}  // namespace phi4

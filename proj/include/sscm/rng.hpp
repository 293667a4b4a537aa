#pragma once

#include <cstdint>
#include <limits>

namespace sscm {

namespace detail {

// SplitMix64 output function (Steele, Lea & Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based random stream: output i of stream (seed, id) is
// mix64(key + i * gamma), so a stream is fully determined by its key and
// position. Streams with distinct ids are statistically independent,
// which makes parallel replications reproducible regardless of thread
// scheduling: replication r always uses stream (seed, r).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(detail::mix64(seed + 0x9e3779b97f4a7c15ULL) ^
             detail::mix64(stream_id + 0x7f4a7c15f39cc060ULL)),
        counter_(0) {}

  // Child stream keyed off the current position; advances this stream by
  // one draw so successive forks differ.
  RngStream fork(std::uint64_t tag) {
    RngStream child(key_ ^ detail::mix64(tag + 0x2545f4914f6cdd1dULL),
                    counter_);
    ++counter_;
    return child;
  }

  result_type operator()() {
    return detail::mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform on (0,1): 53-bit mantissa, never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace sscm

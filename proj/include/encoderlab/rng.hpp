#pragma once

#include <cmath>
#include <cstdint>

namespace encoderlab {

// SplitMix64 finalizer. Full-period bijective mixer with good avalanche.
inline uint64_t mix64(uint64_t v) {
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

// Counter-based generator: draw i of a stream is a pure function of
// (stream key, i), so parallel streams never share state and a stream can
// be replayed from any point. Equivalent to splitmix64 seeded with the key.
class CounterRng {
  public:
    CounterRng() = default;
    explicit CounterRng(uint64_t key) : key_(key) {}

    // Decorrelates (master_seed, stream_index) pairs into stream keys.
    static CounterRng for_stream(uint64_t master_seed, uint64_t stream_index) {
        return CounterRng(mix64(master_seed ^ mix64(stream_index + 0x632be59bd9b4e019ULL)));
    }

    uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ ^ counter_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    // Uniform in [0, k). Multiply-shift map; bias is below 2^-53 for the
    // index ranges used here.
    uint64_t uniform_index(uint64_t k) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * k) >> 64);
    }

    // Fair ±1 coin.
    int coin_sign() { return (next_u64() >> 63) ? -1 : +1; }

  private:
    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace encoderlab

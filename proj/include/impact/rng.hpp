#pragma once
// Seedable randomness used everywhere randomness is allowed. One engine
// (std::mt19937_64), explicit mappings to doubles, Box-Muller gaussians, and a
// splitmix64 mixer for deriving per-record seeds from a master seed, so every
// artifact is reproducible from the seeds recorded in the run manifest.
// Distributions are hand-mapped rather than taken from <random> because the
// standard does not pin distribution output, only engine output.

#include <cstdint>
#include <random>
#include <vector>

namespace impact::rng {

// k-th output of a splitmix64 stream seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    // uniform in [0,1): (next_u64() >> 11) * 2^-53
    double uniform01();
    // uniform in [lo,hi)
    double uniform(double lo, double hi);
    // uniform integer in [0,n), rejection sampled (no modulo bias)
    std::uint64_t below(std::uint64_t n);
    // standard normal via Box-Muller; the paired variate is cached
    double gaussian();
    double gaussian(double mean, double stddev);
    // in-place Fisher-Yates
    void shuffle(std::vector<std::size_t>& idx);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace impact::rng

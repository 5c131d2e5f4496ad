#pragma once
// Signal primitives behind the feature extractors: analytic-signal envelope,
// onset index, rectified threshold counting, Hann periodogram, and a 3-level
// wavelet packet split with the 4-tap Daubechies orthogonal pair.

#include <array>
#include <cstddef>
#include <vector>

namespace impact::dsp {

struct Spectrum {
    std::vector<double> freqs; // Hz, ascending from 0
    std::vector<double> psd;   // power density
    double df = 0.0;           // Hz
};

struct WptNodes {
    int level = 3;
    // frequency order: node 0 lowest band, node 7 highest
    std::array<std::vector<double>, 8> nodes;
};

// magnitude of the analytic signal (frequency-domain Hilbert transform)
std::vector<double> envelope(const std::vector<double>& x);

// smallest index with |x[i]| >= frac * max|x|
std::size_t detect_onset(const std::vector<double>& x, double frac);

// positive-going crossings of |x| over threshold inside (start, end]
std::size_t count_crossings(const std::vector<double>& x, double threshold,
                            std::size_t start, std::size_t end);

// one-sided Hann periodogram of the full record; sum(psd)*df equals the
// window-power-compensated mean square of the windowed signal
Spectrum psd(const std::vector<double>& x, double sample_rate);

// periodic-extension wavelet packet transform, level 3, frequency-ordered
// nodes; inputs not divisible by 8 are zero-padded to the next multiple
WptNodes wpt3(const std::vector<double>& x);

} // namespace impact::dsp

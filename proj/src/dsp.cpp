#include "impact/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace impact::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plan creation is not thread-safe; execution is
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

} // namespace

std::vector<double> envelope(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 4) fail("envelope needs at least 4 samples");

    fftw_complex* buf;
    fftw_plan fwd, bwd;
    {
        std::lock_guard lock(plan_mutex());
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d((int)n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d((int)n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = x[i];
        buf[i][1] = 0.0;
    }
    fftw_execute(fwd);
    // analytic signal: keep DC (and Nyquist for even n), double positive
    // frequencies, zero negative ones
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
        buf[k][0] *= 2.0;
        buf[k][1] *= 2.0;
    }
    for (std::size_t k = half + 1; k < n; ++k) {
        buf[k][0] = 0.0;
        buf[k][1] = 0.0;
    }
    fftw_execute(bwd);
    std::vector<double> env(n);
    const double inv_n = 1.0 / (double)n;
    for (std::size_t i = 0; i < n; ++i)
        env[i] = std::hypot(buf[i][0] * inv_n, buf[i][1] * inv_n);
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    return env;
}

std::size_t detect_onset(const std::vector<double>& x, double frac) {
    if (!(frac > 0.0 && frac < 1.0)) fail("onset fraction must lie in (0,1)");
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::fabs(v));
    if (peak == 0.0) fail("onset of an all-zero signal is undefined");
    const double thr = frac * peak;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::fabs(x[i]) >= thr) return i;
    return x.size() - 1; // unreachable: the peak sample itself qualifies
}

std::size_t count_crossings(const std::vector<double>& x, double threshold,
                            std::size_t start, std::size_t end) {
    if (!(threshold > 0.0)) fail("crossing threshold must be > 0");
    if (start > end || end >= x.size()) fail("invalid crossing range");
    std::size_t count = 0;
    for (std::size_t i = start + 1; i <= end; ++i)
        if (std::fabs(x[i - 1]) < threshold && std::fabs(x[i]) >= threshold) ++count;
    return count;
}

Spectrum psd(const std::vector<double>& x, double sample_rate) {
    const std::size_t n = x.size();
    if (n < 8) fail("psd needs at least 8 samples");
    if (!(sample_rate > 0.0)) fail("sample_rate must be > 0");

    std::vector<double> wx(n);
    double win_power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * (double)i / (double)n));
        wx[i] = w * x[i];
        win_power += w * w;
    }

    const std::size_t bins = n / 2 + 1;
    double* in;
    fftw_complex* out;
    fftw_plan plan;
    {
        std::lock_guard lock(plan_mutex());
        in = fftw_alloc_real(n);
        out = fftw_alloc_complex(bins);
        plan = fftw_plan_dft_r2c_1d((int)n, in, out, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) in[i] = wx[i];
    fftw_execute(plan);

    Spectrum s;
    s.df = sample_rate / (double)n;
    s.freqs.resize(bins);
    s.psd.resize(bins);
    const double scale = 1.0 / (sample_rate * win_power);
    for (std::size_t k = 0; k < bins; ++k) {
        s.freqs[k] = (double)k * s.df;
        double p = (out[k][0] * out[k][0] + out[k][1] * out[k][1]) * scale;
        const bool interior = k != 0 && !(n % 2 == 0 && k == bins - 1);
        s.psd[k] = interior ? 2.0 * p : p;
    }
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    return s;
}

namespace {

// 4-tap Daubechies orthogonal pair
const double kSqrt3 = std::sqrt(3.0);
const double kNorm = 4.0 * std::sqrt(2.0);
const double kLo[4] = {(1.0 + kSqrt3) / kNorm, (3.0 + kSqrt3) / kNorm,
                       (3.0 - kSqrt3) / kNorm, (1.0 - kSqrt3) / kNorm};
const double kHi[4] = {kLo[3], -kLo[2], kLo[1], -kLo[0]};

void split(const std::vector<double>& x, std::vector<double>& lo,
           std::vector<double>& hi) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    lo.resize(half);
    hi.resize(half);
    for (std::size_t i = 0; i < half; ++i) {
        double a = 0.0, d = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = x[(2 * i + k) % n];
            a += kLo[k] * v;
            d += kHi[k] * v;
        }
        lo[i] = a;
        hi[i] = d;
    }
}

} // namespace

WptNodes wpt3(const std::vector<double>& x) {
    if (x.size() < 32) fail("wpt3 needs at least 32 samples");
    std::vector<double> padded = x;
    if (padded.size() % 8 != 0) padded.resize((padded.size() / 8 + 1) * 8, 0.0);

    std::vector<std::vector<double>> level = {padded};
    for (int l = 0; l < 3; ++l) {
        std::vector<std::vector<double>> next(level.size() * 2);
        for (std::size_t i = 0; i < level.size(); ++i)
            split(level[i], next[2 * i], next[2 * i + 1]);
        level = std::move(next);
    }

    // natural order -> frequency order: each highpass branch mirrors the band,
    // so the frequency-ordered node f is the natural node gray(f)
    WptNodes out;
    for (std::size_t f = 0; f < 8; ++f) {
        const std::size_t natural = f ^ (f >> 1);
        out.nodes[f] = std::move(level[natural]);
    }
    return out;
}

} // namespace impact::dsp

#pragma once
// The 18 candidate waveform descriptors, channel aggregation policies, and the
// feature matrix with min-max normalization. Time features are computed from
// the onset sample to the end of the record; spectral and wavelet features use
// the full record.

#include "impact/dataio.hpp"
#include "impact/dsp.hpp"

#include <array>
#include <string>
#include <vector>

namespace impact::feat {

enum class FeatureId {
    PA, TE, RT, CTP, RA, RMS, EPR, NDA,       // time domain
    CF, PF, WPF, PCR, RON, ROFF,              // frequency domain
    AM, DM, AME, DME,                         // wavelet domain
};
inline constexpr std::size_t kFeatureCount = 18;

enum class Domain { time, frequency, wavelet };

const std::array<std::string, kFeatureCount>& feature_names();
FeatureId feature_from_name(const std::string& name);
Domain feature_domain(FeatureId id);
const char* domain_code(Domain d); // "T", "F", "W"
const char* feature_unit(FeatureId id);

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    double operator[](FeatureId id) const { return values[(std::size_t)id]; }
    double& operator[](FeatureId id) { return values[(std::size_t)id]; }
};

enum class ChannelPolicy { max_pa, channel_mean };

struct ExtractConfig {
    double onset_frac = 0.05;
    ChannelPolicy policy = ChannelPolicy::max_pa;
};

const char* to_string(ChannelPolicy p);
ChannelPolicy channel_policy_from_string(const std::string& s);

// PA, TE, RT, CTP, RA, RMS, EPR, NDA
std::array<double, 8> extract_time(const std::vector<double>& x, double sample_rate,
                                   double onset_frac);
// CF, PF, WPF, PCR, RON, ROFF
std::array<double, 6> extract_freq(const dsp::Spectrum& s);
// AM, DM, AME, DME
std::array<double, 4> extract_tf(const dsp::WptNodes& w);

FeatureVector extract_channel(const std::vector<double>& x, double sample_rate,
                              double onset_frac);
FeatureVector extract_record(const io::ImpactRecord& r, const ExtractConfig& cfg);

struct FeatureMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> feature_ids;
    std::vector<std::vector<double>> values; // row major
    bool normalized = false;
    // per feature (min, max) captured when normalizing
    std::vector<std::array<double, 2>> norm_params;

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return feature_ids.size(); }
    std::size_t col_index(const std::string& feature) const;
    std::vector<double> column(std::size_t c) const;
};

FeatureMatrix extract_dataset(const io::Dataset& ds, const ExtractConfig& cfg);

// per column v -> (v - min)/(max - min); constant columns map to 0
FeatureMatrix minmax_normalize(const FeatureMatrix& m);
// normalize with previously captured params (robustness comparisons reuse the
// clean matrix's params, so values may leave [0,1])
FeatureMatrix apply_normalization(const FeatureMatrix& m,
                                  const std::vector<std::array<double, 2>>& params);

// keep only the named columns, in the given order
FeatureMatrix select_columns(const FeatureMatrix& m,
                             const std::vector<std::string>& names);

void write_feature_matrix(const FeatureMatrix& m, const std::string& csv_path,
                          const std::string& comment = "");
// companion metadata (units, domains, extraction config, norm params)
void write_feature_meta(const FeatureMatrix& m, const ExtractConfig& cfg,
                        const std::string& json_path, const std::string& config_hash);
FeatureMatrix load_feature_matrix(const std::string& csv_path);

} // namespace impact::feat

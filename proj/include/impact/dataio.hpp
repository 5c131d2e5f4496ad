#pragma once
// Dataset model and disk formats. A dataset is a manifest CSV plus one
// waveform CSV per record; numbers are written as shortest round-trip decimal
// text, so write -> load is exact and artifacts diff cleanly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace impact::io {

enum class State { pristine, damaged };
enum class Provenance { measured, synthetic, augmented };

const char* to_string(State s);
const char* to_string(Provenance p);
State state_from_string(const std::string& s);
Provenance provenance_from_string(const std::string& s);

struct ImpactRecord {
    std::string id;
    std::vector<std::vector<double>> waveforms; // channel major
    double sample_rate = 0.0;                   // Hz
    double energy = 0.0;                        // J
    double impactor_mass = 0.0;                 // kg
    double impactor_diameter = 0.0;             // mm
    std::string location_id;
    std::array<double, 2> location_xy{0.0, 0.0}; // mm
    State state = State::pristine;
    Provenance provenance = Provenance::synthetic;
    std::string source_id;        // augmented records: id of the clean source
    std::uint64_t noise_seed = 0; // seed of the per-record noise draw
};

struct Dataset {
    std::vector<ImpactRecord> records;
    std::string manifest_path;
    int schema_version = 1;
};

struct SplitSpec {
    double train_frac = 0.8;
    double val_frac = 0.1;
    double test_frac = 0.1;
    std::uint64_t seed = 0;
};

struct Splits {
    Dataset train, val, test;
};

// shortest decimal text that parses back to the same double
std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);
std::uint64_t parse_u64(const std::string& s, const std::string& context);

// throws std::runtime_error naming the violated invariant and record id
void validate(const Dataset& ds);

Dataset load_dataset(const std::string& manifest_path);
// writes manifest.csv plus wave_<id>.csv files into dir; returns manifest path
std::string write_dataset(const Dataset& ds, const std::string& dir);
Splits split_dataset(const Dataset& ds, const SplitSpec& spec);
// originals followed by noisy copies; per channel the added noise is gaussian
// with stddev = level * peak |amplitude| of that channel
Dataset augment_with_noise(const Dataset& ds, double level, std::uint64_t seed);

} // namespace impact::io

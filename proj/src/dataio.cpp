#include "impact/dataio.hpp"

#include "impact/kernels.hpp"
#include "impact/rng.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fs = std::filesystem;

namespace impact::io {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
        out.back().pop_back();
    return out;
}

const char* kManifestHeader =
    "id,waveform_file,sample_rate_hz,energy_j,mass_kg,diameter_mm,location_id,"
    "loc_x_mm,loc_y_mm,state,provenance,source_id,noise_seed";

} // namespace

const char* to_string(State s) {
    return s == State::pristine ? "pristine" : "damaged";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::measured: return "measured";
        case Provenance::synthetic: return "synthetic";
        default: return "augmented";
    }
}

State state_from_string(const std::string& s) {
    if (s == "pristine") return State::pristine;
    if (s == "damaged") return State::damaged;
    fail("unknown state '" + s + "'");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "measured") return Provenance::measured;
    if (s == "synthetic") return Provenance::synthetic;
    if (s == "augmented") return Provenance::augmented;
    fail("unknown provenance '" + s + "'");
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(context + ": non-numeric value '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(context + ": non-integer value '" + s + "'");
    return v;
}

void validate(const Dataset& ds) {
    std::set<std::string> ids;
    std::size_t channels = 0;
    double fs = 0.0;
    for (const auto& r : ds.records) {
        const std::string where = "record '" + r.id + "'";
        if (r.id.empty() || r.id.find('/') != std::string::npos)
            fail("record id '" + r.id + "' is empty or not filename-safe");
        if (!ids.insert(r.id).second) fail("duplicate record id '" + r.id + "'");
        if (r.waveforms.empty()) fail(where + ": no channels");
        std::size_t len = r.waveforms.front().size();
        if (len < 2) fail(where + ": channels shorter than 2 samples");
        for (const auto& ch : r.waveforms)
            if (ch.size() != len) fail(where + ": channel length mismatch");
        if (!(r.sample_rate > 0)) fail(where + ": sample_rate must be > 0");
        if (r.energy < 0) fail(where + ": energy must be >= 0");
        if (!(r.impactor_mass > 0)) fail(where + ": mass must be > 0");
        if (!(r.impactor_diameter > 0)) fail(where + ": diameter must be > 0");
        if (r.provenance == Provenance::augmented && r.source_id.empty())
            fail(where + ": augmented record lacks source_id");
        if (channels == 0) {
            channels = r.waveforms.size();
            fs = r.sample_rate;
        } else {
            if (r.waveforms.size() != channels)
                fail(where + ": channel count differs from rest of dataset");
            if (r.sample_rate != fs)
                fail(where + ": sample_rate differs from rest of dataset");
        }
    }
}

Dataset load_dataset(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) fail("cannot open manifest '" + manifest_path + "'");
    const fs::path base = fs::path(manifest_path).parent_path();

    std::string line;
    if (!std::getline(in, line)) fail("manifest '" + manifest_path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kManifestHeader)
        fail("manifest '" + manifest_path + "' has unexpected header");

    Dataset ds;
    ds.manifest_path = manifest_path;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto f = split_line(line);
        if (f.size() != 13)
            fail("manifest '" + manifest_path + "' line " + std::to_string(line_no) +
                 ": expected 13 fields, got " + std::to_string(f.size()));
        ImpactRecord r;
        r.id = f[0];
        const std::string ctx = "record '" + r.id + "'";
        r.sample_rate = parse_double(f[2], ctx);
        r.energy = parse_double(f[3], ctx);
        r.impactor_mass = parse_double(f[4], ctx);
        r.impactor_diameter = parse_double(f[5], ctx);
        r.location_id = f[6];
        r.location_xy = {parse_double(f[7], ctx), parse_double(f[8], ctx)};
        r.state = state_from_string(f[9]);
        r.provenance = provenance_from_string(f[10]);
        r.source_id = f[11];
        r.noise_seed = parse_u64(f[12], ctx);

        const fs::path wave_path = base / f[1];
        std::ifstream wf(wave_path);
        if (!wf) fail(ctx + ": cannot open waveform file '" + wave_path.string() + "'");
        std::string wline;
        if (!std::getline(wf, wline))
            fail(ctx + ": waveform file '" + wave_path.string() + "' is empty");
        auto header = split_line(wline);
        if (header.size() < 2 || header[0] != "t_s")
            fail(ctx + ": waveform file '" + wave_path.string() + "' has bad header");
        std::size_t channels = header.size() - 1;
        r.waveforms.assign(channels, {});
        std::size_t wline_no = 1;
        while (std::getline(wf, wline)) {
            ++wline_no;
            if (wline.empty() || (wline.size() == 1 && wline[0] == '\r')) continue;
            auto cols = split_line(wline);
            if (cols.size() != channels + 1)
                fail(ctx + ": '" + wave_path.string() + "' line " +
                     std::to_string(wline_no) + ": column count mismatch");
            for (std::size_t c = 0; c < channels; ++c)
                r.waveforms[c].push_back(parse_double(
                    cols[c + 1], ctx + " ('" + wave_path.string() + "' line " +
                                     std::to_string(wline_no) + ")"));
        }
        ds.records.push_back(std::move(r));
    }
    validate(ds);
    return ds;
}

std::string write_dataset(const Dataset& ds, const std::string& dir) {
    validate(ds);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail("cannot create directory '" + dir + "': " + ec.message());

    const fs::path manifest_path = fs::path(dir) / "manifest.csv";
    std::ofstream mf(manifest_path);
    if (!mf) fail("cannot write '" + manifest_path.string() + "'");
    mf << kManifestHeader << "\n";
    for (const auto& r : ds.records) {
        const std::string wave_name = "wave_" + r.id + ".csv";
        mf << r.id << ',' << wave_name << ',' << format_double(r.sample_rate) << ','
           << format_double(r.energy) << ',' << format_double(r.impactor_mass) << ','
           << format_double(r.impactor_diameter) << ',' << r.location_id << ','
           << format_double(r.location_xy[0]) << ',' << format_double(r.location_xy[1])
           << ',' << to_string(r.state) << ',' << to_string(r.provenance) << ','
           << r.source_id << ',' << r.noise_seed << "\n";

        const fs::path wave_path = fs::path(dir) / wave_name;
        std::ofstream wf(wave_path);
        if (!wf) fail("cannot write '" + wave_path.string() + "'");
        wf << "t_s";
        for (std::size_t c = 0; c < r.waveforms.size(); ++c) wf << ",ch" << c + 1;
        wf << "\n";
        const std::size_t len = r.waveforms.front().size();
        const double dt = 1.0 / r.sample_rate;
        for (std::size_t i = 0; i < len; ++i) {
            wf << format_double((double)i * dt);
            for (const auto& ch : r.waveforms) wf << ',' << format_double(ch[i]);
            wf << "\n";
        }
        if (!wf) fail("write failed for '" + wave_path.string() + "'");
    }
    if (!mf) fail("write failed for '" + manifest_path.string() + "'");
    return manifest_path.string();
}

Splits split_dataset(const Dataset& ds, const SplitSpec& spec) {
    auto in_unit = [](double f) { return f > 0.0 && f < 1.0; };
    if (!in_unit(spec.train_frac) || !in_unit(spec.val_frac) || !in_unit(spec.test_frac))
        fail("split fractions must lie in (0,1)");
    if (std::fabs(spec.train_frac + spec.val_frac + spec.test_frac - 1.0) > 1e-12)
        fail("split fractions must sum to 1");
    const std::size_t k = ds.records.size();
    if (k < 3) fail("need at least 3 records to split");

    const std::size_t n_val = (std::size_t)std::llround(spec.val_frac * (double)k);
    const std::size_t n_test = (std::size_t)std::llround(spec.test_frac * (double)k);
    if (n_val == 0 || n_test == 0 || n_val + n_test >= k)
        fail("dataset of " + std::to_string(k) + " records is too small for the requested split");
    const std::size_t n_train = k - n_val - n_test;

    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    rng::Rng r(spec.seed);
    r.shuffle(idx);

    Splits out;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& rec = ds.records[idx[i]];
        if (i < n_train)
            out.train.records.push_back(rec);
        else if (i < n_train + n_val)
            out.val.records.push_back(rec);
        else
            out.test.records.push_back(rec);
    }
    return out;
}

Dataset augment_with_noise(const Dataset& ds, double level, std::uint64_t seed) {
    if (!(level > 0.0 && level < 1.0)) fail("noise level must lie in (0,1)");
    validate(ds);
    Dataset out;
    out.schema_version = ds.schema_version;
    out.records = ds.records;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        ImpactRecord noisy = ds.records[i];
        noisy.id += "-aug";
        noisy.provenance = Provenance::augmented;
        noisy.source_id = ds.records[i].id;
        noisy.noise_seed = rng::derive_seed(seed, i);
        rng::Rng r(noisy.noise_seed);
        for (auto& ch : noisy.waveforms) {
            const double sigma = level * kernels::abs_max(ch.data(), ch.size());
            if (sigma == 0.0) continue;
            for (auto& v : ch) v += r.gaussian(0.0, sigma);
        }
        out.records.push_back(std::move(noisy));
    }
    validate(out);
    return out;
}

} // namespace impact::io

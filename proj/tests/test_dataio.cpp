#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "impact/dataio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

using namespace impact;
namespace fs = std::filesystem;

namespace {

io::ImpactRecord make_record(const std::string& id, double energy, int nch = 2,
                             std::size_t len = 64) {
    io::ImpactRecord r;
    r.id = id;
    r.sample_rate = 1000.0;
    r.energy = energy;
    r.impactor_mass = 0.776;
    r.impactor_diameter = 16.0;
    r.location_id = "IC1";
    r.location_xy = {477.0, 600.0};
    for (int c = 0; c < nch; ++c) {
        std::vector<double> ch(len);
        for (std::size_t i = 0; i < len; ++i)
            ch[i] = std::sin(0.1 * (double)i * (c + 1)) * energy / 3.0 + 1e-7 * (double)i;
        r.waveforms.push_back(std::move(ch));
    }
    return r;
}

io::Dataset make_dataset(int n) {
    io::Dataset ds;
    for (int i = 0; i < n; ++i)
        ds.records.push_back(make_record("rec-" + std::to_string(i), 2.0 + i));
    return ds;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

fs::path temp_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("impact_dataio_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

bool records_equal(const io::ImpactRecord& a, const io::ImpactRecord& b) {
    return a.id == b.id && a.waveforms == b.waveforms && a.sample_rate == b.sample_rate &&
           a.energy == b.energy && a.impactor_mass == b.impactor_mass &&
           a.impactor_diameter == b.impactor_diameter && a.location_id == b.location_id &&
           a.location_xy == b.location_xy && a.state == b.state &&
           a.provenance == b.provenance && a.source_id == b.source_id &&
           a.noise_seed == b.noise_seed;
}

} // namespace

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 1.0 / 3.0, 3.55e-3, 1e-300, 123456.789}) {
        CHECK(io::parse_double(io::format_double(v), "test") == v);
    }
}

TEST_CASE("write then load is value-identical, write again is byte-identical") {
    auto dir1 = temp_dir("rt1");
    auto dir2 = temp_dir("rt2");
    auto ds = make_dataset(8);
    ds.records[3].state = io::State::damaged;
    ds.records[4].provenance = io::Provenance::measured;
    auto manifest = io::write_dataset(ds, dir1.string());
    auto loaded = io::load_dataset(manifest);
    REQUIRE(loaded.records.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(records_equal(ds.records[i], loaded.records[i]));

    io::write_dataset(loaded, dir2.string());
    for (const auto& entry : fs::directory_iterator(dir1)) {
        auto other = dir2 / entry.path().filename();
        CHECK(read_file(entry.path()) == read_file(other));
    }
}

TEST_CASE("record order follows the manifest") {
    auto dir = temp_dir("order");
    io::Dataset ds;
    ds.records.push_back(make_record("zz", 5.0));
    ds.records.push_back(make_record("aa", 7.0));
    auto manifest = io::write_dataset(ds, dir.string());
    auto loaded = io::load_dataset(manifest);
    REQUIRE(loaded.records.size() == 2);
    CHECK(loaded.records[0].id == "zz");
    CHECK(loaded.records[1].id == "aa");
}

TEST_CASE("empty dataset writes a manifest with no rows") {
    auto dir = temp_dir("empty");
    io::Dataset ds;
    auto manifest = io::write_dataset(ds, dir.string());
    auto loaded = io::load_dataset(manifest);
    CHECK(loaded.records.empty());
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
}

TEST_CASE("missing waveform file is reported with its path") {
    auto dir = temp_dir("missing");
    auto ds = make_dataset(2);
    auto manifest = io::write_dataset(ds, dir.string());
    fs::remove(dir / "wave_rec-1.csv");
    try {
        io::load_dataset(manifest);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("wave_rec-1.csv") != std::string::npos);
        CHECK(std::string(e.what()).find("rec-1") != std::string::npos);
    }
}

TEST_CASE("corrupt sample is reported with file and record") {
    auto dir = temp_dir("corrupt");
    auto ds = make_dataset(1);
    auto manifest = io::write_dataset(ds, dir.string());
    std::ofstream out(dir / "wave_rec-0.csv", std::ios::app);
    out << "0.5,not_a_number,0.1\n";
    out.close();
    CHECK_THROWS_WITH_AS(io::load_dataset(manifest),
                         doctest::Contains("non-numeric"), std::runtime_error);
}

TEST_CASE("duplicate ids are rejected") {
    auto ds = make_dataset(2);
    ds.records[1].id = ds.records[0].id;
    CHECK_THROWS_WITH_AS(io::validate(ds), doctest::Contains("duplicate"),
                         std::runtime_error);
}

TEST_CASE("channel count mismatch across records is rejected") {
    auto ds = make_dataset(1);
    ds.records.push_back(make_record("odd", 3.0, 3));
    CHECK_THROWS_WITH_AS(io::validate(ds), doctest::Contains("channel count"),
                         std::runtime_error);
}

TEST_CASE("split sizes follow round(frac*k) with remainder to train") {
    auto ds = make_dataset(10);
    io::SplitSpec spec{0.8, 0.1, 0.1, 7};
    auto s = io::split_dataset(ds, spec);
    CHECK(s.train.records.size() == 8);
    CHECK(s.val.records.size() == 1);
    CHECK(s.test.records.size() == 1);

    auto big = make_dataset(132);
    auto s2 = io::split_dataset(big, spec);
    CHECK(s2.train.records.size() == 106);
    CHECK(s2.val.records.size() == 13);
    CHECK(s2.test.records.size() == 13);
}

TEST_CASE("splits are deterministic, disjoint and exhaustive") {
    auto ds = make_dataset(23);
    io::SplitSpec spec{0.7, 0.15, 0.15, 99};
    auto a = io::split_dataset(ds, spec);
    auto b = io::split_dataset(ds, spec);
    auto ids = [](const io::Dataset& d) {
        std::vector<std::string> v;
        for (const auto& r : d.records) v.push_back(r.id);
        return v;
    };
    CHECK(ids(a.train) == ids(b.train));
    CHECK(ids(a.val) == ids(b.val));
    CHECK(ids(a.test) == ids(b.test));

    std::set<std::string> all;
    for (const auto* part : {&a.train, &a.val, &a.test})
        for (const auto& r : part->records) CHECK(all.insert(r.id).second);
    CHECK(all.size() == 23);

    io::SplitSpec other{0.7, 0.15, 0.15, 100};
    auto c = io::split_dataset(ds, other);
    CHECK(ids(a.train) != ids(c.train));
}

TEST_CASE("too-small datasets refuse to split") {
    auto ds = make_dataset(3);
    io::SplitSpec spec{0.8, 0.1, 0.1, 1};
    CHECK_THROWS_WITH_AS(io::split_dataset(ds, spec), doctest::Contains("too small"),
                         std::runtime_error);
}

TEST_CASE("bad fractions are rejected") {
    auto ds = make_dataset(10);
    CHECK_THROWS_AS(io::split_dataset(ds, {0.5, 0.25, 0.3, 1}), std::runtime_error);
    CHECK_THROWS_AS(io::split_dataset(ds, {1.0, 0.0, 0.0, 1}), std::runtime_error);
}

TEST_CASE("augmentation doubles the dataset and keeps originals first") {
    auto ds = make_dataset(3);
    auto before = ds.records;
    auto out = io::augment_with_noise(ds, 0.05, 42);
    REQUIRE(out.records.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(records_equal(out.records[i], before[i]));
        const auto& noisy = out.records[i + 3];
        CHECK(noisy.id == before[i].id + "-aug");
        CHECK(noisy.provenance == io::Provenance::augmented);
        CHECK(noisy.source_id == before[i].id);
        CHECK(noisy.energy == before[i].energy);
        CHECK(noisy.waveforms != before[i].waveforms);
    }
    REQUIRE(ds.records.size() == before.size());
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(records_equal(ds.records[i], before[i]));

    auto out2 = io::augment_with_noise(ds, 0.05, 42);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(records_equal(out.records[i], out2.records[i]));
    auto out3 = io::augment_with_noise(ds, 0.05, 43);
    CHECK(out3.records[3].waveforms != out.records[3].waveforms);
}

TEST_CASE("all-zero channels stay identical under augmentation") {
    io::Dataset ds;
    auto r = make_record("zero", 1.0, 1);
    for (auto& v : r.waveforms[0]) v = 0.0;
    ds.records.push_back(r);
    auto out = io::augment_with_noise(ds, 0.05, 1);
    CHECK(out.records[1].waveforms[0] == r.waveforms[0]);
}

TEST_CASE("noise variance matches level * peak over a long channel") {
    io::Dataset ds;
    io::ImpactRecord r;
    r.id = "long";
    r.sample_rate = 1000.0;
    r.energy = 1.0;
    r.impactor_mass = 1.0;
    r.impactor_diameter = 25.0;
    r.location_id = "IC1";
    const std::size_t n = 200000;
    std::vector<double> ch(n);
    for (std::size_t i = 0; i < n; ++i) ch[i] = 2.0 * std::sin(0.01 * (double)i);
    r.waveforms.push_back(ch);
    ds.records.push_back(r);

    auto out = io::augment_with_noise(ds, 0.05, 7);
    const auto& noisy = out.records[1].waveforms[0];
    double s = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = noisy[i] - ch[i];
        s += d;
        s2 += d * d;
    }
    double mean = s / (double)n;
    double var = s2 / (double)n - mean * mean;
    double expected = 0.05 * 2.0;
    CHECK(var == doctest::Approx(expected * expected).epsilon(0.05));
}

#include "impact/features.hpp"

#include "impact/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace impact::feat {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

} // namespace

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "PA", "TE", "RT", "CTP", "RA", "RMS", "EPR", "NDA",
        "CF", "PF", "WPF", "PCR", "RON", "ROFF",
        "AM", "DM", "AME", "DME"};
    return names;
}

FeatureId feature_from_name(const std::string& name) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return (FeatureId)i;
    fail("unknown feature id '" + name + "'");
}

Domain feature_domain(FeatureId id) {
    const auto i = (std::size_t)id;
    if (i < 8) return Domain::time;
    if (i < 14) return Domain::frequency;
    return Domain::wavelet;
}

const char* domain_code(Domain d) {
    switch (d) {
        case Domain::time: return "T";
        case Domain::frequency: return "F";
        default: return "W";
    }
}

const char* feature_unit(FeatureId id) {
    switch (id) {
        case FeatureId::PA: return "V";
        case FeatureId::TE: return "V*s";
        case FeatureId::RT: return "s";
        case FeatureId::CTP: return "count";
        case FeatureId::RA: return "V/s";
        case FeatureId::RMS: return "V";
        case FeatureId::EPR: return "s";
        case FeatureId::NDA: return "dimensionless";
        case FeatureId::CF:
        case FeatureId::PF:
        case FeatureId::WPF: return "Hz";
        case FeatureId::PCR: return "dimensionless";
        case FeatureId::RON:
        case FeatureId::ROFF: return "Hz";
        case FeatureId::AM:
        case FeatureId::DM: return "V";
        default: return "V^2"; // AME, DME
    }
}

const char* to_string(ChannelPolicy p) {
    return p == ChannelPolicy::max_pa ? "max_pa" : "channel_mean";
}

ChannelPolicy channel_policy_from_string(const std::string& s) {
    if (s == "max_pa") return ChannelPolicy::max_pa;
    if (s == "channel_mean") return ChannelPolicy::channel_mean;
    fail("unknown channel policy '" + s + "'");
}

std::array<double, 8> extract_time(const std::vector<double>& x, double sample_rate,
                                   double onset_frac) {
    if (!(sample_rate > 0)) fail("sample_rate must be > 0");
    const std::size_t n = x.size();
    const double dt = 1.0 / sample_rate;

    std::size_t peak_idx = 0;
    double pa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(x[i]);
        if (a > pa) {
            pa = a;
            peak_idx = i;
        }
    }
    const std::size_t onset = dsp::detect_onset(x, onset_frac);

    const auto env = dsp::envelope(x);
    const std::size_t w = n - onset; // analysis window: onset to record end
    double te = kernels::sum(env.data() + onset, w) * dt;
    double rms = std::sqrt(kernels::sum_sq(x.data() + onset, w) / (double)w);
    double mean_abs = kernels::abs_sum(x.data() + onset, w) / (double)w;

    double rt = ((double)peak_idx - (double)onset) * dt;
    rt = std::max(rt, dt);
    const double threshold = onset_frac * pa;
    std::size_t ctp = dsp::count_crossings(x, threshold, onset, peak_idx);
    ctp = std::max<std::size_t>(ctp, 1); // the peak sample itself reaches the threshold

    return {pa, te, rt, (double)ctp, pa / rt, rms, te / pa, pa / mean_abs};
}

std::array<double, 6> extract_freq(const dsp::Spectrum& s) {
    const double total = kernels::sum(s.psd.data(), s.psd.size());
    if (!(total > 0.0)) fail("spectrum carries no power");

    double cf = 0.0;
    for (std::size_t k = 0; k < s.psd.size(); ++k) cf += s.freqs[k] * s.psd[k];
    cf /= total;

    std::size_t arg = 0;
    for (std::size_t k = 1; k < s.psd.size(); ++k)
        if (s.psd[k] > s.psd[arg]) arg = k; // lowest frequency wins ties
    const double pf = s.freqs[arg];

    double ron = s.freqs.back(), roff = s.freqs.back();
    double cum = 0.0;
    bool got_on = false, got_off = false;
    for (std::size_t k = 0; k < s.psd.size(); ++k) {
        cum += s.psd[k];
        if (!got_on && cum >= 0.1 * total) {
            ron = s.freqs[k];
            got_on = true;
        }
        if (!got_off && cum >= 0.9 * total) {
            roff = s.freqs[k];
            got_off = true;
            break;
        }
    }

    const double wpf = std::sqrt(pf * cf);
    const double pcr = cf > 0.0 ? pf / cf : 0.0;
    return {cf, pf, wpf, pcr, ron, roff};
}

std::array<double, 4> extract_tf(const dsp::WptNodes& w) {
    const auto& lo = w.nodes[0];
    const auto& hi = w.nodes[7];
    return {kernels::abs_max(lo.data(), lo.size()), kernels::abs_max(hi.data(), hi.size()),
            kernels::sum_sq(lo.data(), lo.size()), kernels::sum_sq(hi.data(), hi.size())};
}

FeatureVector extract_channel(const std::vector<double>& x, double sample_rate,
                              double onset_frac) {
    FeatureVector v;
    const auto t = extract_time(x, sample_rate, onset_frac);
    const auto f = extract_freq(dsp::psd(x, sample_rate));
    const auto w = extract_tf(dsp::wpt3(x));
    for (std::size_t i = 0; i < 8; ++i) v.values[i] = t[i];
    for (std::size_t i = 0; i < 6; ++i) v.values[8 + i] = f[i];
    for (std::size_t i = 0; i < 4; ++i) v.values[14 + i] = w[i];
    return v;
}

FeatureVector extract_record(const io::ImpactRecord& r, const ExtractConfig& cfg) {
    if (r.waveforms.empty()) fail("record '" + r.id + "' has no channels");
    if (cfg.policy == ChannelPolicy::max_pa) {
        std::size_t best = 0;
        double best_pa = -1.0;
        for (std::size_t c = 0; c < r.waveforms.size(); ++c) {
            const auto& ch = r.waveforms[c];
            const double pa = kernels::abs_max(ch.data(), ch.size());
            if (pa > best_pa) {
                best_pa = pa;
                best = c;
            }
        }
        return extract_channel(r.waveforms[best], r.sample_rate, cfg.onset_frac);
    }
    FeatureVector acc;
    for (const auto& ch : r.waveforms) {
        const auto v = extract_channel(ch, r.sample_rate, cfg.onset_frac);
        for (std::size_t i = 0; i < kFeatureCount; ++i) acc.values[i] += v.values[i];
    }
    for (auto& v : acc.values) v /= (double)r.waveforms.size();
    return acc;
}

std::size_t FeatureMatrix::col_index(const std::string& feature) const {
    for (std::size_t c = 0; c < feature_ids.size(); ++c)
        if (feature_ids[c] == feature) return c;
    fail("feature '" + feature + "' is not in the matrix");
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = values[r][c];
    return out;
}

FeatureMatrix extract_dataset(const io::Dataset& ds, const ExtractConfig& cfg) {
    FeatureMatrix m;
    m.feature_ids.assign(feature_names().begin(), feature_names().end());
    for (const auto& r : ds.records) {
        m.row_ids.push_back(r.id);
        const auto v = extract_record(r, cfg);
        m.values.emplace_back(v.values.begin(), v.values.end());
    }
    return m;
}

FeatureMatrix minmax_normalize(const FeatureMatrix& m) {
    if (m.rows() < 2) fail("normalization needs at least 2 rows");
    FeatureMatrix out = m;
    out.normalized = true;
    out.norm_params.resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double lo = m.values[0][c], hi = m.values[0][c];
        for (std::size_t r = 1; r < m.rows(); ++r) {
            lo = std::min(lo, m.values[r][c]);
            hi = std::max(hi, m.values[r][c]);
        }
        out.norm_params[c] = {lo, hi};
        const double span = hi - lo;
        for (std::size_t r = 0; r < m.rows(); ++r)
            out.values[r][c] = span > 0.0 ? (m.values[r][c] - lo) / span : 0.0;
    }
    return out;
}

FeatureMatrix apply_normalization(const FeatureMatrix& m,
                                  const std::vector<std::array<double, 2>>& params) {
    if (params.size() != m.cols()) fail("normalization params do not match columns");
    FeatureMatrix out = m;
    out.normalized = true;
    out.norm_params = params;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const double lo = params[c][0];
        const double span = params[c][1] - lo;
        for (std::size_t r = 0; r < m.rows(); ++r)
            out.values[r][c] = span > 0.0 ? (m.values[r][c] - lo) / span : 0.0;
    }
    return out;
}

FeatureMatrix select_columns(const FeatureMatrix& m,
                             const std::vector<std::string>& names) {
    FeatureMatrix out;
    out.row_ids = m.row_ids;
    out.normalized = m.normalized;
    std::vector<std::size_t> idx;
    for (const auto& name : names) idx.push_back(m.col_index(name));
    out.feature_ids = names;
    if (!m.norm_params.empty())
        for (auto c : idx) out.norm_params.push_back(m.norm_params[c]);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<double> row;
        for (auto c : idx) row.push_back(m.values[r][c]);
        out.values.push_back(std::move(row));
    }
    return out;
}

void write_feature_matrix(const FeatureMatrix& m, const std::string& csv_path,
                          const std::string& comment) {
    std::ofstream out(csv_path);
    if (!out) fail("cannot write '" + csv_path + "'");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "id";
    for (const auto& f : m.feature_ids) out << ',' << f;
    out << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << m.row_ids[r];
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << ',' << io::format_double(m.values[r][c]);
        out << "\n";
    }
    if (!out) fail("write failed for '" + csv_path + "'");
}

void write_feature_meta(const FeatureMatrix& m, const ExtractConfig& cfg,
                        const std::string& json_path, const std::string& config_hash) {
    nlohmann::ordered_json j;
    j["config_hash"] = config_hash;
    j["onset_frac"] = cfg.onset_frac;
    j["channel_policy"] = to_string(cfg.policy);
    j["analysis_window"] = "onset to record end (time features); full record (spectral, wavelet)";
    j["normalized"] = m.normalized;
    nlohmann::ordered_json feats = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        nlohmann::ordered_json f;
        f["id"] = m.feature_ids[c];
        const auto id = feature_from_name(m.feature_ids[c]);
        f["domain"] = domain_code(feature_domain(id));
        f["unit"] = feature_unit(id);
        if (m.normalized && !m.norm_params.empty()) {
            f["min"] = m.norm_params[c][0];
            f["max"] = m.norm_params[c][1];
        }
        feats.push_back(f);
    }
    j["features"] = feats;
    std::ofstream out(json_path);
    if (!out) fail("cannot write '" + json_path + "'");
    out << j.dump(2) << "\n";
}

FeatureMatrix load_feature_matrix(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) fail("cannot open feature matrix '" + csv_path + "'");
    FeatureMatrix m;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto pos = line.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (!have_header) {
            if (cells.size() < 2 || cells[0] != "id")
                fail("feature matrix '" + csv_path + "' has a bad header");
            m.feature_ids.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != m.cols() + 1)
            fail("feature matrix '" + csv_path + "' line " + std::to_string(line_no) +
                 ": column count mismatch");
        m.row_ids.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c)
            row.push_back(io::parse_double(cells[c], "'" + csv_path + "' line " +
                                                         std::to_string(line_no)));
        m.values.push_back(std::move(row));
    }
    if (!have_header) fail("feature matrix '" + csv_path + "' is empty");
    return m;
}

} // namespace impact::feat

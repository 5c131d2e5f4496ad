#include "impact/synthgen.hpp"

#include "impact/kernels.hpp"
#include "impact/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace impact::synth {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

void validate_scenario(const ImpactScenario& s) {
    if (s.energy < 0) fail("impact energy must be >= 0");
    if (!(s.mass > 0)) fail("impactor mass must be > 0");
    if (!(s.diameter > 0)) fail("impactor diameter must be > 0");
    if (!(s.duration > 0)) fail("duration must be > 0");
    if (!(s.sample_rate > 0)) fail("sample_rate must be > 0");
}

} // namespace

const std::vector<std::pair<std::string, std::array<double, 2>>>& impact_locations() {
    static const std::vector<std::pair<std::string, std::array<double, 2>>> locs = {
        {"IC1", {477.0, 600.0}}, {"IC2", {328.0, 629.0}}, {"IC3", {402.0, 555.0}},
        {"IC4", {479.0, 480.0}}, {"IC5", {349.0, 348.0}}, {"IC6", {574.0, 282.0}},
    };
    return locs;
}

void validate_panel(const PanelConfig& p) {
    if (!(p.a_mm > 0 && p.b_mm > 0 && p.thickness_mm > 0))
        fail("plate dimensions must be > 0");
    if (!(p.bending_stiffness > 0)) fail("bending stiffness must be > 0");
    if (!(p.areal_density > 0)) fail("areal density must be > 0");
    if (!(p.damping_ratio > 0 && p.damping_ratio < 1))
        fail("damping ratio must lie in (0,1)");
    if (p.n_modes_x < 1 || p.n_modes_y < 1) fail("mode counts must be >= 1");
    if (p.sensor_xy.empty()) fail("panel needs at least one sensor");
    for (const auto& s : p.sensor_xy)
        if (!(s[0] > 0 && s[0] < p.a_mm && s[1] > 0 && s[1] < p.b_mm))
            fail("sensor coordinates must lie strictly inside the plate");
    if (!(p.contact_k_ref > 0 && p.contact_d_ref > 0))
        fail("contact reference stiffness and diameter must be > 0");
    if (p.sensor_noise < 0) fail("sensor noise level must be >= 0");
}

double max_modal_frequency(const PanelConfig& p) {
    const double a = p.a_mm / 1000.0, b = p.b_mm / 1000.0;
    const double px = p.n_modes_x, qy = p.n_modes_y;
    const double w = kPi * kPi * (px * px / (a * a) + qy * qy / (b * b)) *
                     std::sqrt(p.bending_stiffness / p.areal_density);
    return w / (2.0 * kPi);
}

Contact contact_force(const ImpactScenario& s, const PanelConfig& p) {
    validate_scenario(s);
    if (!(p.contact_k_ref > 0 && p.contact_d_ref > 0))
        fail("contact reference stiffness and diameter must be > 0");
    const double v0 = std::sqrt(2.0 * s.energy / s.mass);
    const double k_c = p.contact_k_ref * (s.diameter / p.contact_d_ref);
    const double t_c = kPi * std::sqrt(s.mass / k_c);
    const double f_max = v0 * std::sqrt(k_c * s.mass);
    return {f_max, t_c};
}

io::ImpactRecord generate_impact(const ImpactScenario& s, const PanelConfig& p,
                                 std::uint64_t seed) {
    validate_panel(p);
    validate_scenario(s);
    const double f_top = max_modal_frequency(p);
    if (s.sample_rate < 4.0 * f_top)
        fail("sample_rate " + io::format_double(s.sample_rate) +
             " Hz is below 4x the highest retained modal frequency (" +
             io::format_double(f_top) + " Hz)");

    const auto [f_max, t_c] = contact_force(s, p);
    const std::size_t n = (std::size_t)std::llround(s.duration * s.sample_rate);
    if (n < 2) fail("duration*sample_rate must give at least 2 samples");
    const double dt = 1.0 / s.sample_rate;

    std::vector<double> force(std::min(n, (std::size_t)std::ceil(t_c / dt)));
    for (std::size_t j = 0; j < force.size(); ++j)
        force[j] = f_max * std::sin(kPi * (double)j * dt / t_c);

    const double a = p.a_mm / 1000.0, b = p.b_mm / 1000.0;
    const double stiff_term = std::sqrt(p.bending_stiffness / p.areal_density);
    const double modal_mass = p.areal_density * a * b / 4.0;
    const double zeta = p.damping_ratio;
    const double xi = s.location_xy[0] / p.a_mm, yi = s.location_xy[1] / p.b_mm;

    const std::size_t n_ch = p.sensor_xy.size();
    std::vector<std::vector<double>> channels(n_ch, std::vector<double>(n, 0.0));
    std::vector<double> h(n), qr(n);

    for (int pm = 1; pm <= p.n_modes_x; ++pm) {
        for (int qm = 1; qm <= p.n_modes_y; ++qm) {
            const double w = kPi * kPi *
                             ((double)pm * pm / (a * a) + (double)qm * qm / (b * b)) *
                             stiff_term;
            const double wd = w * std::sqrt(1.0 - zeta * zeta);
            const double amp = 1.0 / (modal_mass * wd);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = (double)i * dt;
                h[i] = amp * std::exp(-zeta * w * t) * std::sin(wd * t);
            }
            // modal displacement: discrete convolution of force and impulse response
            std::fill(qr.begin(), qr.end(), 0.0);
            for (std::size_t j = 0; j < force.size(); ++j)
                kernels::axpy(dt * force[j], h.data(), qr.data() + j, n - j);

            const double phi_imp = std::sin((double)pm * kPi * xi) *
                                   std::sin((double)qm * kPi * yi);
            if (phi_imp == 0.0) continue;
            for (std::size_t c = 0; c < n_ch; ++c) {
                const double phi_s = std::sin((double)pm * kPi * p.sensor_xy[c][0] / p.a_mm) *
                                     std::sin((double)qm * kPi * p.sensor_xy[c][1] / p.b_mm);
                kernels::axpy(phi_imp * phi_s, qr.data(), channels[c].data(), n);
            }
        }
    }

    if (p.sensor_noise > 0.0) {
        rng::Rng noise(seed);
        for (auto& ch : channels) {
            const double sigma = p.sensor_noise * kernels::abs_max(ch.data(), ch.size());
            if (sigma == 0.0) continue;
            for (auto& v : ch) v += noise.gaussian(0.0, sigma);
        }
    }

    io::ImpactRecord r;
    r.waveforms = std::move(channels);
    r.sample_rate = s.sample_rate;
    r.energy = s.energy;
    r.impactor_mass = s.mass;
    r.impactor_diameter = s.diameter;
    r.location_xy = s.location_xy;
    r.state = io::State::pristine;
    r.provenance = io::Provenance::synthetic;
    r.noise_seed = seed;
    return r;
}

io::Dataset generate_confirmation_dataset(const PanelConfig& panel, std::uint64_t seed,
                                          double duration, double sample_rate) {
    struct Row {
        double energy, diameter, mass;
        const char* loc;
    };
    static const Row rows[8] = {
        {2.0, 16.0, 0.5, "IC4"}, {20.0, 50.0, 0.5, "IC4"}, {2.0, 50.0, 2.0, "IC4"},
        {20.0, 16.0, 2.0, "IC4"}, {2.0, 50.0, 0.5, "IC2"}, {20.0, 16.0, 0.5, "IC2"},
        {2.0, 16.0, 2.0, "IC2"}, {20.0, 50.0, 2.0, "IC2"},
    };
    auto find_loc = [](const std::string& id) {
        for (const auto& [name, xy] : impact_locations())
            if (name == id) return xy;
        throw std::runtime_error("unknown impact location '" + id + "'");
    };

    io::Dataset ds;
    for (int i = 0; i < 8; ++i) {
        ImpactScenario s;
        s.energy = rows[i].energy;
        s.diameter = rows[i].diameter;
        s.mass = rows[i].mass;
        s.location_xy = find_loc(rows[i].loc);
        s.duration = duration;
        s.sample_rate = sample_rate;
        auto r = generate_impact(s, panel, rng::derive_seed(seed, (std::uint64_t)i));
        r.id = "conf-0" + std::to_string(i + 1);
        r.location_id = rows[i].loc;
        ds.records.push_back(std::move(r));
    }
    io::validate(ds);
    return ds;
}

io::Dataset generate_training_dataset(const PanelConfig& panel, std::size_t n,
                                      double energy_min, double energy_max,
                                      std::uint64_t seed, double duration,
                                      double sample_rate) {
    if (n < 10) fail("training datasets need n >= 10 records");
    if (!(energy_min > 0 && energy_max > energy_min))
        fail("need 0 < energy_min < energy_max");
    static const double masses[3] = {0.776, 1.154, 2.356};
    static const double diameters[3] = {16.0, 25.0, 50.0};
    const auto& locs = impact_locations();

    int width = 1;
    for (std::size_t v = n; v >= 10; v /= 10) ++width;
    width = std::max(width, 3);

    rng::Rng draw(seed);
    const double log_ratio = std::log(energy_max / energy_min);
    io::Dataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        ImpactScenario s;
        const double u = draw.uniform01();
        s.energy = energy_min * std::exp(u * u * log_ratio);
        s.mass = masses[draw.below(3)];
        s.diameter = diameters[draw.below(3)];
        const auto& [loc_id, loc_xy] = locs[(std::size_t)draw.below(locs.size())];
        s.location_xy = loc_xy;
        s.duration = duration;
        s.sample_rate = sample_rate;
        auto r = generate_impact(s, panel, rng::derive_seed(seed, 1000000 + i));
        std::string num = std::to_string(i + 1);
        r.id = "trn-" + std::string((std::size_t)width - num.size(), '0') + num;
        r.location_id = loc_id;
        ds.records.push_back(std::move(r));
    }
    io::validate(ds);
    return ds;
}

} // namespace impact::synth

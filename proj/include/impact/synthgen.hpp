#pragma once
// Parametric impact simulator: a simply-supported plate driven by a half-sine
// contact force, modal superposition sampled at the sensor grid. Stands in for
// measured data so the whole pipeline runs from a config file and a seed.

#include "impact/dataio.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace impact::synth {

struct PanelConfig {
    double a_mm = 1000.0;
    double b_mm = 1000.0;
    double thickness_mm = 3.55;
    // quasi-isotropic laminate defaults: E 50 GPa, nu 0.3, rho 1600 kg/m^3
    double bending_stiffness = 50e9 * 3.55e-3 * 3.55e-3 * 3.55e-3 /
                               (12.0 * (1.0 - 0.3 * 0.3)); // N*m
    double areal_density = 1600.0 * 3.55e-3;               // kg/m^2
    double damping_ratio = 0.02;
    int n_modes_x = 5;
    int n_modes_y = 5;
    std::vector<std::array<double, 2>> sensor_xy = {{188.0, 786.0}, {478.0, 780.0},
                                                    {779.0, 781.0}, {779.0, 481.0},
                                                    {188.0, 172.0}, {768.0, 174.0}};
    // linearized contact stiffness: k_c = k_ref * diameter / d_ref
    double contact_k_ref = 8.0e4; // N/m at the reference diameter
    double contact_d_ref = 25.0;  // mm
    // additive sensor noise, stddev = sensor_noise * per-channel peak
    double sensor_noise = 0.005;
};

struct ImpactScenario {
    double energy = 2.0;        // J
    double mass = 0.5;          // kg
    double diameter = 16.0;     // mm
    std::array<double, 2> location_xy{479.0, 480.0}; // mm
    double duration = 0.020;    // s
    double sample_rate = 200000.0; // Hz
};

struct Contact {
    double f_max; // N
    double t_c;   // s
};

// named impact locations of the six-point grid
const std::vector<std::pair<std::string, std::array<double, 2>>>& impact_locations();

void validate_panel(const PanelConfig& panel);

// highest retained modal frequency in Hz
double max_modal_frequency(const PanelConfig& panel);

// v0 = sqrt(2E/m); k_c = k_ref*(d/d_ref); t_c = pi*sqrt(m/k_c);
// F_max = v0*sqrt(k_c*m); f(t) = F_max*sin(pi t/t_c) on [0,t_c]
Contact contact_force(const ImpactScenario& scenario, const PanelConfig& panel);

io::ImpactRecord generate_impact(const ImpactScenario& scenario,
                                 const PanelConfig& panel, std::uint64_t seed);

// the 8-run two-level confirmation matrix (energy, diameter, mass, location)
io::Dataset generate_confirmation_dataset(const PanelConfig& panel, std::uint64_t seed,
                                          double duration = 0.020,
                                          double sample_rate = 200000.0);

// n records; energies drawn right-skewed as E_min*(E_max/E_min)^(u^2), u~U[0,1);
// masses {0.776, 1.154, 2.356} kg, diameters {16, 25, 50} mm, locations IC1-IC6
io::Dataset generate_training_dataset(const PanelConfig& panel, std::size_t n,
                                      double energy_min, double energy_max,
                                      std::uint64_t seed, double duration = 0.020,
                                      double sample_rate = 200000.0);

} // namespace impact::synth

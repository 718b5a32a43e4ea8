#pragma once

#include <cstddef>
#include <vector>

namespace vtwave {

// Source velocity signal injected at the excitation cells, one sample per
// simulation step.
struct ExcitationSignal {
    std::vector<double> samples; // m/s
    double sample_rate = 0.0;    // Hz
    double band_low_hz = 0.0;
    double band_high_hz = 0.0;
};

// Band-limited velocity pulse: a unit impulse shaped by a linear-phase
// windowed-sinc band-pass (Blackman window). The kernel is re-centred to an
// exact zero mean, so the signal carries no DC, and scaled so its peak equals
// `amplitude`. `transition_hz` sets the filter's transition width (and thus
// the kernel length ~ 5.5 * rate / transition); the signal must be long
// enough to hold the whole kernel. Deterministic.
ExcitationSignal make_band_passed_pulse(double sample_rate, std::size_t length,
                                        double band_low_hz, double band_high_hz,
                                        double amplitude = 1.0,
                                        double transition_hz = 150.0);

} // namespace vtwave

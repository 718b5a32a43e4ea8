#include "vtwave/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vtwave/errors.hpp"

namespace vtwave {

namespace {

// Normalized sinc.
double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

} // namespace

ExcitationSignal make_band_passed_pulse(double sample_rate, std::size_t length,
                                        double band_low_hz, double band_high_hz,
                                        double amplitude, double transition_hz) {
    if (!(sample_rate > 0.0)) throw ValidationError("sample rate must be positive");
    if (!(band_low_hz > 0.0) || !(band_high_hz > band_low_hz))
        throw ValidationError("pass band must satisfy 0 < low < high");
    if (band_high_hz >= sample_rate / 2.0)
        throw ValidationError("upper band edge must lie below the Nyquist frequency");
    if (!(transition_hz > 0.0)) throw ValidationError("transition width must be positive");

    // Blackman-windowed sinc band-pass. The main-lobe rule for the Blackman
    // window asks for about 5.5 sample periods per unit of normalized
    // transition width; round the tap count up to odd for a symmetric,
    // linear-phase kernel centered on an integer sample.
    std::size_t taps = static_cast<std::size_t>(std::ceil(5.5 * sample_rate / transition_hz));
    if (taps % 2 == 0) ++taps;
    if (taps < 3) taps = 3;
    if (length < taps)
        throw ValidationError("signal length " + std::to_string(length) +
                              " cannot hold the " + std::to_string(taps) + "-tap kernel");

    const double f1 = band_low_hz / sample_rate;  // normalized edges
    const double f2 = band_high_hz / sample_rate;
    const auto m = static_cast<std::ptrdiff_t>(taps / 2); // center index
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> kernel(taps);
    for (std::size_t i = 0; i < taps; ++i) {
        const double n = static_cast<double>(static_cast<std::ptrdiff_t>(i) - m);
        const double ideal =
            2.0 * f2 * sinc(2.0 * f2 * n) - 2.0 * f1 * sinc(2.0 * f1 * n);
        const double w = 0.42 - 0.5 * std::cos(two_pi * i / (taps - 1)) +
                         0.08 * std::cos(2.0 * two_pi * i / (taps - 1));
        kernel[i] = ideal * w;
    }

    // Exact null at zero frequency: remove the mean so a constant input sums
    // to nothing, then scale the extremum to the requested amplitude.
    double mean = 0.0;
    for (double v : kernel) mean += v;
    mean /= static_cast<double>(taps);
    for (double& v : kernel) v -= mean;

    double peak = 0.0;
    for (double v : kernel) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw ValidationError("degenerate band leaves an all-zero kernel");
    for (double& v : kernel) v *= amplitude / peak;

    ExcitationSignal sig;
    sig.sample_rate = sample_rate;
    sig.band_low_hz = band_low_hz;
    sig.band_high_hz = band_high_hz;
    sig.samples.assign(length, 0.0);
    std::copy(kernel.begin(), kernel.end(), sig.samples.begin());
    return sig;
}

} // namespace vtwave

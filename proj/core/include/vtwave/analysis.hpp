#pragma once

#include <vector>

#include "vtwave/excitation.hpp"
#include "vtwave/solver.hpp"

namespace vtwave {

enum class Normalization {
    RawSpectrum,          // magnitude of the trace spectrum
    ExcitationNormalized, // trace spectrum divided by the excitation spectrum
};

// Magnitude spectrum on the DFT bin grid of the full trace (bin width =
// sample_rate / length; a 50 ms trace gives the 20 Hz grid).
struct TransferFunction {
    std::vector<double> freqs;        // Hz, ascending; first bin at bin_width
    std::vector<double> magnitude_db; // dB re 1
    double bin_width = 0.0;           // Hz
    Normalization normalization = Normalization::RawSpectrum;
};

struct SpectralPeak {
    double freq = 0.0;
    double magnitude_db = 0.0;
};

struct FormantSet {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double mag1 = 0.0, mag2 = 0.0, mag3 = 0.0;
};

// Exact DFT magnitudes of `samples` at the requested frequencies (direct
// evaluation; sizes here are small enough that no fast transform is needed).
std::vector<double> spectral_magnitude(const std::vector<double>& samples,
                                       double sample_rate,
                                       const std::vector<double>& freqs);

// Spectrum of the trace on its own DFT bin grid, optionally normalized by
// the excitation spectrum on the same grid. Bins are computed up to
// max_freq_hz (<=0 means up to Nyquist). Throws AnalysisError on an all-zero
// trace.
TransferFunction transfer_function(const PressureTrace& trace,
                                   const ExcitationSignal* excitation = nullptr,
                                   Normalization norm = Normalization::RawSpectrum,
                                   double max_freq_hz = -1.0);

// Local maxima that rise at least `min_prominence_db` above both neighbouring
// local minima, restricted to [band_low, band_high], ascending.
std::vector<SpectralPeak> find_spectral_peaks(const TransferFunction& tf,
                                              double band_low_hz, double band_high_hz,
                                              double min_prominence_db = 3.0);

// First `count` (<= 3) peaks as formants; throws AnalysisError listing the
// peaks it did find when there are fewer than `count`.
FormantSet extract_formants(const TransferFunction& tf, int count = 3,
                            double band_low_hz = 100.0, double band_high_hz = 5000.0);

// Signed relative deviation in percent: 100 * (measured - reference) / reference.
double positional_error(double measured_hz, double reference_hz);

} // namespace vtwave

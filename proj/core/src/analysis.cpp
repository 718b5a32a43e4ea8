#include "vtwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "vtwave/errors.hpp"

namespace vtwave {

std::vector<double> spectral_magnitude(const std::vector<double>& samples,
                                       double sample_rate,
                                       const std::vector<double>& freqs) {
    if (samples.empty()) throw AnalysisError("cannot analyze an empty signal");
    if (!(sample_rate > 0.0)) throw AnalysisError("sample rate must be positive");

    // Direct evaluation of the transform at the requested frequencies via
    // Goertzel-style recurrences; the frequency lists here are short enough
    // (a few hundred bins) that this beats setting up a length-padded FFT
    // and keeps the bin frequencies exact.
    std::vector<double> mag(freqs.size());
    const auto n = samples.size();
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double w = 2.0 * std::numbers::pi * freqs[k] / sample_rate;
        const double coeff = 2.0 * std::cos(w);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s0 = samples[i] + coeff * s1 - s2;
            s2 = s1;
            s1 = s0;
        }
        const std::complex<double> y =
            std::complex<double>(s1 - s2 * std::cos(w), s2 * std::sin(w));
        mag[k] = std::abs(y);
    }
    return mag;
}

TransferFunction transfer_function(const PressureTrace& trace,
                                   const ExcitationSignal* excitation,
                                   Normalization norm, double max_freq_hz) {
    if (trace.samples.empty()) throw AnalysisError("cannot analyze an empty trace");
    if (norm == Normalization::ExcitationNormalized) {
        if (excitation == nullptr)
            throw AnalysisError("excitation-normalized spectrum needs the excitation signal");
        if (std::abs(excitation->sample_rate - trace.sample_rate) >
            1e-9 * trace.sample_rate)
            throw AnalysisError("trace and excitation sample rates differ");
    }

    const double rate = trace.sample_rate;
    const auto n = trace.samples.size();
    const double bin = rate / static_cast<double>(n);
    double fmax = max_freq_hz > 0.0 ? max_freq_hz : rate / 2.0;
    fmax = std::min(fmax, rate / 2.0);

    TransferFunction tf;
    tf.bin_width = bin;
    tf.normalization = norm;
    for (std::size_t k = 1; k * bin <= fmax; ++k) tf.freqs.push_back(k * bin);
    if (tf.freqs.empty())
        throw AnalysisError("maximum frequency below the first spectral bin");

    std::vector<double> num = spectral_magnitude(trace.samples, rate, tf.freqs);
    std::vector<double> den;
    if (norm == Normalization::ExcitationNormalized) {
        std::vector<double> ex = excitation->samples;
        ex.resize(n, 0.0); // common bin grid
        den = spectral_magnitude(ex, excitation->sample_rate, tf.freqs);
    }

    tf.magnitude_db.resize(tf.freqs.size());
    constexpr double kFloor = 1e-30;
    for (std::size_t k = 0; k < tf.freqs.size(); ++k) {
        double v = num[k];
        if (norm == Normalization::ExcitationNormalized) v /= std::max(den[k], kFloor);
        tf.magnitude_db[k] = 20.0 * std::log10(std::max(v, kFloor));
    }
    return tf;
}

std::vector<SpectralPeak> find_spectral_peaks(const TransferFunction& tf,
                                              double low_hz, double high_hz,
                                              double min_prominence_db) {
    if (tf.freqs.size() != tf.magnitude_db.size() || tf.freqs.empty())
        throw AnalysisError("malformed transfer function");

    const auto& f = tf.freqs;
    const auto& m = tf.magnitude_db;
    const std::size_t n = f.size();

    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (f[k] < low_hz || f[k] > high_hz) continue;
        if (!(m[k] > m[k - 1] && m[k] >= m[k + 1])) continue;

        // Prominence against the highest of the two flanking minima: walk
        // down each side to the nearest local minimum (or the range edge).
        std::size_t l = k;
        while (l > 0 && m[l - 1] <= m[l]) --l;
        std::size_t r = k;
        while (r + 1 < n && m[r + 1] <= m[r]) ++r;
        const double saddle = std::max(m[l], m[r]);
        if (m[k] - saddle < min_prominence_db) continue;

        peaks.push_back({f[k], m[k]});
        k = r; // skip the downslope; avoids re-detecting plateau shoulders
    }
    return peaks;
}

FormantSet extract_formants(const TransferFunction& tf, int count,
                            double low_hz, double high_hz) {
    if (count < 1 || count > 3)
        throw AnalysisError("formant count must be between 1 and 3");
    auto peaks = find_spectral_peaks(tf, low_hz, high_hz);
    if (static_cast<int>(peaks.size()) < count)
        throw AnalysisError("found only " + std::to_string(peaks.size()) +
                            " spectral peaks in [" + std::to_string(low_hz) + ", " +
                            std::to_string(high_hz) + "] Hz; need " + std::to_string(count));
    FormantSet fs;
    double* f[3] = {&fs.f1, &fs.f2, &fs.f3};
    double* m[3] = {&fs.mag1, &fs.mag2, &fs.mag3};
    for (int k = 0; k < count; ++k) {
        *f[k] = peaks[static_cast<std::size_t>(k)].freq;
        *m[k] = peaks[static_cast<std::size_t>(k)].magnitude_db;
    }
    return fs;
}

double positional_error(double measured_hz, double reference_hz) {
    if (!(reference_hz > 0.0)) throw AnalysisError("reference frequency must be positive");
    return 100.0 * (measured_hz - reference_hz) / reference_hz;
}

} // namespace vtwave

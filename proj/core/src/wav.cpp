#include "vtwave/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <vector>

#include "vtwave/errors.hpp"

namespace vtwave {

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xffu),
                          static_cast<unsigned char>((v >> 8) & 0xffu),
                          static_cast<unsigned char>((v >> 16) & 0xffu),
                          static_cast<unsigned char>((v >> 24) & 0xffu)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u16(std::ofstream& out, std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xffu),
                          static_cast<unsigned char>((v >> 8) & 0xffu)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

} // namespace

void export_audio(const PressureTrace& trace, double target_rate,
                  const std::filesystem::path& file) {
    if (trace.samples.empty()) throw ValidationError("cannot export an empty trace");
    if (!(trace.sample_rate > 0.0)) throw ValidationError("trace has no sample rate");
    if (!(target_rate > 0.0) || target_rate > trace.sample_rate)
        throw ValidationError("target rate must be positive and not above the trace rate");

    // Anti-alias below the target Nyquist with a Blackman-windowed sinc,
    // evaluated directly at the (fractional) resampling positions.
    const double cutoff = 0.45 * target_rate; // Hz, inside the new Nyquist
    const double fc = cutoff / trace.sample_rate;
    const int half = std::max(8, static_cast<int>(std::ceil(2.75 / fc)));
    const double ratio = trace.sample_rate / target_rate;
    const auto out_len =
        static_cast<std::size_t>(std::floor(static_cast<double>(trace.samples.size() - 1) / ratio)) + 1;

    std::vector<double> resampled(out_len, 0.0);
    const auto n_in = static_cast<std::ptrdiff_t>(trace.samples.size());
    for (std::size_t m = 0; m < out_len; ++m) {
        const double pos = static_cast<double>(m) * ratio;
        const auto center = static_cast<std::ptrdiff_t>(std::llround(pos));
        double acc = 0.0;
        for (std::ptrdiff_t k = center - half; k <= center + half; ++k) {
            if (k < 0 || k >= n_in) continue;
            const double x = static_cast<double>(k) - pos;
            const double px = std::numbers::pi * x;
            const double s = x == 0.0 ? 1.0 : std::sin(2.0 * fc * px) / px;
            const double u = (x + half) / (2.0 * half); // window position in [0,1]
            if (u < 0.0 || u > 1.0) continue;
            const double w = 0.42 - 0.5 * std::cos(2.0 * std::numbers::pi * u) +
                             0.08 * std::cos(4.0 * std::numbers::pi * u);
            acc += trace.samples[static_cast<std::size_t>(k)] * s * w;
        }
        resampled[m] = acc;
    }

    double peak = 0.0;
    for (double v : resampled) peak = std::max(peak, std::abs(v));
    // Below this the trace is numerical residue; write true silence instead
    // of normalizing noise up to full scale.
    const double silence_floor = std::pow(10.0, -120.0 / 20.0);
    double gain = 0.0;
    if (peak > silence_floor) gain = std::pow(10.0, -1.0 / 20.0) / peak; // -1 dBFS

    std::ofstream out(file, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + file.string() + "' for writing");

    const auto rate = static_cast<std::uint32_t>(std::lround(target_rate));
    const auto data_bytes = static_cast<std::uint32_t>(resampled.size() * 2);
    out.write("RIFF", 4);
    put_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, rate);
    put_u32(out, rate * 2); // byte rate
    put_u16(out, 2);        // block align
    put_u16(out, 16);       // bits per sample
    out.write("data", 4);
    put_u32(out, data_bytes);
    for (double v : resampled) {
        const double x = std::clamp(v * gain, -1.0, 1.0);
        const auto q = static_cast<std::int16_t>(std::lround(x * 32767.0));
        put_u16(out, static_cast<std::uint16_t>(q));
    }
    if (!out) throw ParseError("error while writing '" + file.string() + "'");
}

} // namespace vtwave

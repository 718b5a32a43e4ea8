#pragma once

#include <filesystem>

#include "vtwave/solver.hpp"

namespace vtwave {

// Low-pass the trace below the target Nyquist, resample, peak-normalize to
// -1 dBFS and write 16-bit mono PCM. Traces whose peak sits below -120 dBFS
// re 1 Pa are written as silence rather than normalized noise.
void export_audio(const PressureTrace& trace, double target_rate,
                  const std::filesystem::path& file);

} // namespace vtwave

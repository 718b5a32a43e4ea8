#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "vtwave/analysis.hpp"
#include "vtwave/solver.hpp"

namespace vtwave {

// Two-column text, "time_seconds pressure_pascals" per row.
void write_trace(const PressureTrace& trace, std::ostream& out);
void write_trace(const PressureTrace& trace, const std::filesystem::path& file);
PressureTrace read_trace(std::istream& in);
PressureTrace read_trace(const std::filesystem::path& file);

// Two-column text, "frequency_hz magnitude_db" per row.
void write_spectrum(const TransferFunction& tf, std::ostream& out);
void write_spectrum(const TransferFunction& tf, const std::filesystem::path& file);

// Field snapshot: 16-byte header (magic 'VTWS', width, height, step index as
// little-endian uint32) followed by width*height float32 pressures, row-major.
void write_snapshot(const YeeGrid& grid, int step, const std::filesystem::path& file);

// Reference formant table: rows "vowel f1 f2 f3", '#' comments allowed.
std::map<std::string, FormantSet> read_reference_formants(const std::filesystem::path& file);

} // namespace vtwave

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace vtwave {

// One axial slice of the tract: how long the slice is and its cross-sectional
// area. Everything is SI internally (metres, square metres).
struct AreaSection {
    double length_m = 0.0;
    double area_m2 = 0.0;
};

// Piecewise-constant area function a(x), glottis to lips.
struct AreaFunction {
    std::vector<AreaSection> sections;
    std::string name;

    double total_length() const;
    // Area at axial position s in [0, total_length); s is clamped to the
    // valid range so half-cell overhangs at either end stay well-defined.
    double area_at(double s) const;
};

enum class AreaFileFormat {
    CommaSeparated, // rows "length,area" with a mandatory "# units: cm|m" header
};

// Equivalent circular diameter of a cross-section.
double area_to_diameter(double area_m2);

AreaFunction load_area_function(std::istream& in,
                                AreaFileFormat format = AreaFileFormat::CommaSeparated,
                                const std::string& name = "");

AreaFunction load_area_function(const std::filesystem::path& file,
                                AreaFileFormat format = AreaFileFormat::CommaSeparated);

} // namespace vtwave

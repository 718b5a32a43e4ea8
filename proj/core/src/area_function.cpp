#include "vtwave/area_function.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vtwave/errors.hpp"

namespace vtwave {

double AreaFunction::total_length() const {
    double sum = 0.0;
    for (const auto& s : sections) sum += s.length_m;
    return sum;
}

double AreaFunction::area_at(double s) const {
    if (sections.empty()) return 0.0;
    if (s <= 0.0) return sections.front().area_m2;
    double acc = 0.0;
    for (const auto& sec : sections) {
        acc += sec.length_m;
        if (s < acc) return sec.area_m2;
    }
    return sections.back().area_m2;
}

double area_to_diameter(double area_m2) {
    if (area_m2 < 0.0) throw ValidationError("cross-sectional area must be non-negative");
    return 2.0 * std::sqrt(area_m2 / std::numbers::pi);
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

AreaFunction load_area_function(std::istream& in, AreaFileFormat format,
                                const std::string& name) {
    if (format != AreaFileFormat::CommaSeparated)
        throw ParseError("unsupported area-function format");

    AreaFunction af;
    af.name = name;

    std::string line;
    int lineno = 0;
    bool units_cm = false;
    bool units_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            // The first declaration wins; later comments are free-form.
            if (!units_seen) {
                std::string lowered;
                for (char ch : t) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                if (lowered.find("units:") != std::string::npos) {
                    units_seen = true;
                    if (lowered.find("cm") != std::string::npos) units_cm = true;
                    else if (lowered.find('m') != std::string::npos) units_cm = false;
                    else throw ParseError("line " + std::to_string(lineno) +
                                          ": units header must name cm or m");
                }
            }
            continue;
        }

        if (!units_seen)
            throw ParseError("line " + std::to_string(lineno) +
                             ": data before the mandatory \"# units: cm|m\" header");

        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream row(t);
        double length = 0.0, area = 0.0;
        if (!(row >> length >> area))
            throw ParseError("line " + std::to_string(lineno) + ": expected \"length,area\"");
        std::string extra;
        if (row >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing data after two columns");

        if (units_cm) {
            length *= 1e-2;
            area *= 1e-4;
        }
        if (!(length > 0.0))
            throw ValidationError("line " + std::to_string(lineno) + ": section length must be positive");
        if (area < 0.0)
            throw ValidationError("line " + std::to_string(lineno) + ": section area must be non-negative");
        af.sections.push_back({length, area});
    }

    if (af.sections.empty()) throw ParseError("area function contains no sections");
    return af;
}

AreaFunction load_area_function(const std::filesystem::path& file, AreaFileFormat format) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open area-function file: " + file.string());
    try {
        return load_area_function(in, format, file.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(file.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(file.string() + ": " + e.what());
    }
}

} // namespace vtwave

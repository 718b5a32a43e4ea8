#include "vtwave/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vtwave/errors.hpp"

namespace vtwave {

namespace {

std::ofstream open_out(const std::filesystem::path& file, std::ios::openmode mode) {
    std::ofstream out(file, mode);
    if (!out) throw ParseError("cannot open '" + file.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open '" + file.string() + "' for reading");
    return in;
}

} // namespace

void write_trace(const PressureTrace& trace, std::ostream& out) {
    if (!(trace.sample_rate > 0.0)) throw ValidationError("trace has no sample rate");
    out << std::setprecision(12);
    const double dt = 1.0 / trace.sample_rate;
    for (std::size_t n = 0; n < trace.samples.size(); ++n)
        out << static_cast<double>(n) * dt << ' ' << trace.samples[n] << '\n';
    if (!out) throw ParseError("error while writing trace");
}

void write_trace(const PressureTrace& trace, const std::filesystem::path& file) {
    auto out = open_out(file, std::ios::out);
    write_trace(trace, out);
}

PressureTrace read_trace(std::istream& in) {
    PressureTrace trace;
    std::string line;
    double t0 = 0.0, t1 = 0.0;
    int rows = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double t, p;
        if (!(ls >> t)) continue; // blank or comment-only line
        if (!(ls >> p))
            throw ParseError("line " + std::to_string(lineno) + ": expected two columns");
        if (rows == 0) t0 = t;
        t1 = t;
        ++rows;
        trace.samples.push_back(p);
    }
    if (rows < 2) throw ParseError("trace needs at least two samples");
    const double span = t1 - t0;
    if (!(span > 0.0)) throw ParseError("trace time column must increase");
    trace.sample_rate = static_cast<double>(rows - 1) / span;
    return trace;
}

PressureTrace read_trace(const std::filesystem::path& file) {
    auto in = open_in(file);
    try {
        return read_trace(in);
    } catch (const ParseError& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

void write_spectrum(const TransferFunction& tf, std::ostream& out) {
    out << std::setprecision(12);
    for (std::size_t k = 0; k < tf.freqs.size(); ++k)
        out << tf.freqs[k] << ' ' << tf.magnitude_db[k] << '\n';
    if (!out) throw ParseError("error while writing spectrum");
}

void write_spectrum(const TransferFunction& tf, const std::filesystem::path& file) {
    auto out = open_out(file, std::ios::out);
    write_spectrum(tf, out);
}

void write_snapshot(const YeeGrid& grid, int step, const std::filesystem::path& file) {
    auto out = open_out(file, std::ios::out | std::ios::binary);
    const GridGeometry& g = grid.geometry();
    auto put_u32 = [&](std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v & 0xffu),
                              static_cast<unsigned char>((v >> 8) & 0xffu),
                              static_cast<unsigned char>((v >> 16) & 0xffu),
                              static_cast<unsigned char>((v >> 24) & 0xffu)};
        out.write(reinterpret_cast<const char*>(b), 4);
    };
    put_u32(0x53575456u); // 'VTWS' little-endian
    put_u32(static_cast<std::uint32_t>(g.width));
    put_u32(static_cast<std::uint32_t>(g.height));
    put_u32(static_cast<std::uint32_t>(step));
    std::vector<float> row(grid.p.size());
    for (std::size_t n = 0; n < grid.p.size(); ++n) row[n] = static_cast<float>(grid.p[n]);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!out) throw ParseError("error while writing snapshot '" + file.string() + "'");
}

std::map<std::string, FormantSet> read_reference_formants(const std::filesystem::path& file) {
    auto in = open_in(file);
    std::map<std::string, FormantSet> table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string vowel;
        if (!(ls >> vowel)) continue;
        FormantSet fs;
        if (!(ls >> fs.f1 >> fs.f2 >> fs.f3))
            throw ParseError(file.string() + ":" + std::to_string(lineno) +
                             ": expected 'vowel f1 f2 f3'");
        if (!(fs.f1 > 0.0 && fs.f2 > fs.f1 && fs.f3 > fs.f2))
            throw ValidationError(file.string() + ":" + std::to_string(lineno) +
                                  ": formants must be positive and ascending");
        table[vowel] = fs;
    }
    if (table.empty()) throw ParseError(file.string() + ": no reference rows");
    return table;
}

} // namespace vtwave

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vtwave/area_function.hpp"

namespace vtwave {

enum class CellKind : std::uint8_t {
    Air = 0,
    Wall,           // lossy boundary (tract contour, domain frame)
    Excitation,     // air cells at the glottal end where the source velocity is injected
    OpenEnd,        // air cells with pressure pinned to zero (Dirichlet mouth)
    Baffle,         // head disc outline, treated as a lossy wall
    AbsorbingLayer, // air cells inside the absorbing boundary layers
};

enum class Termination {
    OpenEnd,   // pressure-release mouth, closed rectangular domain
    Radiation, // mouth opens into a baffled free field bounded by absorbing layers
};

// Options for the radiation domain around the tract.
struct RadiationOptions {
    double baffle_diameter_m = 0.20;
    int pml_layers = 6;
    int clearance_cells = 8; // free-field gap between content and the absorbing layers
};

struct DomainSize {
    int width = 0;
    int height = 0;
};

// Cartesian cell grid: `width` columns (x, axial) by `height` rows (y).
// Pressure lives at cell centres, velocity components at the cell faces, so
// the x-velocity carries one extra column and the y-velocity one extra row.
// Instances are built by rasterize_tube / add_radiation_domain / sample_depths
// and treated as immutable afterwards.
struct GridGeometry {
    int width = 0;
    int height = 0;
    double ds = 0.0;
    Termination mode = Termination::OpenEnd;

    std::vector<CellKind> kind; // width*height, row-major
    std::vector<double> beta;   // 1 for air-like cells, 0 inside walls

    // Tube depth (third dimension) sampled at pressure cells and at the two
    // families of velocity faces. Filled in by sample_depths; defaults to 1.
    std::vector<double> depth_bar; // width*height
    std::vector<double> depth_x;   // (width+1)*height
    std::vector<double> depth_y;   // width*(height+1)

    // Tract placement metadata.
    int tube_first_col = 0;  // first air column of the tract (glottal end)
    int tube_last_col = 0;   // last tract column (mouth end)
    int axis_row = 0;        // row containing the tract axis
    int pml_layers = 0;      // 0 outside radiation mode
    double mouth_exit_depth = 1.0;

    std::size_t cells() const { return static_cast<std::size_t>(width) * height; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
    CellKind at(int i, int j) const { return kind[idx(i, j)]; }
    bool is_airlike(int i, int j) const {
        CellKind k = at(i, j);
        return k == CellKind::Air || k == CellKind::Excitation ||
               k == CellKind::OpenEnd || k == CellKind::AbsorbingLayer;
    }
};

// Number of air cells across a circular cross-section of diameter d.
int rasterized_height(double diameter, double ds);

// Rasterize the tract onto a cell grid: axis horizontal, contour centred
// vertically, one boundary column at the glottal end. In OpenEnd mode the
// mouth-end column is marked OpenEnd; in Radiation mode it stays plain air
// so add_radiation_domain can open it into the free field.
GridGeometry rasterize_tube(const AreaFunction& af, double ds, Termination mode);

// Embed the tract in a free-field domain with a circular head baffle joining
// the mouth exit cross-section, absorbing layers on all four edges, and a
// rigid outer frame.
GridGeometry add_radiation_domain(const GridGeometry& tube, const AreaFunction& af,
                                  const RadiationOptions& opts = {});

// Fill the three depth arrays from the area function: pressure cells get the
// local equivalent diameter at their axial position, faces get the average of
// the two neighbouring cell depths (or the single neighbour at domain edges).
// Cells outside the tract columns (free field, absorbing layers) keep the
// mouth-exit depth so the exit plane sees no depth step. Idempotent.
GridGeometry sample_depths(const AreaFunction& af, GridGeometry geo);

// Domain dimensions that rasterize_tube / add_radiation_domain will produce,
// without building the cell arrays.
DomainSize compute_domain_size(const AreaFunction& af, double ds, Termination mode,
                               const RadiationOptions& opts = {});

// One printable character per cell, one text row per grid row (top row
// first). Debugging aid.
void dump_kinds(const GridGeometry& geo, std::ostream& out);

} // namespace vtwave

#include "vtwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vtwave/errors.hpp"

namespace vtwave {

namespace {

// Extra columns / rows around the rasterized tract in the closed (open-end)
// domain: one boundary column at the glottal end, and two rows above plus two
// below the widest cross-section (contour wall + frame). These constants are
// part of the published domain-size contract, so changing them breaks the
// reference grids.
constexpr int kGlottalColumns = 1;
constexpr int kVerticalPad = 4;

struct TubeShape {
    int columns = 0;      // tract columns including the mouth column
    int max_height = 0;   // widest rasterized cross-section, air cells
    std::vector<double> diameter; // per tract column
    std::vector<int> height;      // per tract column
};

TubeShape tube_shape(const AreaFunction& af, double ds) {
    if (af.sections.empty()) throw GeometryError("area function has no sections");
    if (!(ds > 0.0)) throw ValidationError("grid spacing must be positive");

    const double L = af.total_length();
    TubeShape shape;
    shape.columns = static_cast<int>(std::lround(L / ds));
    if (shape.columns < 2)
        throw GeometryError("tract shorter than two cells at this resolution");

    shape.diameter.resize(shape.columns);
    shape.height.resize(shape.columns);
    for (int k = 0; k < shape.columns; ++k) {
        // Sample the area at the cell-centre axial position.
        const double s = (k + 0.5) * ds;
        const double area = af.area_at(std::min(s, L * (1.0 - 1e-12)));
        if (!(area > 0.0))
            throw GeometryError("section at " + std::to_string(s) +
                                " m rasterizes to zero air cells (zero area)");
        const double d = area_to_diameter(area);
        int h = rasterized_height(d, ds);
        if (h < 1)
            throw GeometryError("section at " + std::to_string(s) +
                                " m rasterizes to zero air cells; grid too coarse");
        shape.diameter[k] = d;
        shape.height[k] = h;
        shape.max_height = std::max(shape.max_height, h);
    }
    return shape;
}

} // namespace

int rasterized_height(double diameter, double ds) {
    if (diameter <= 0.0) return 0;
    return std::max(1, static_cast<int>(std::lround(diameter / ds)));
}

GridGeometry rasterize_tube(const AreaFunction& af, double ds, Termination mode) {
    const TubeShape shape = tube_shape(af, ds);

    GridGeometry geo;
    geo.ds = ds;
    geo.mode = mode;
    geo.width = kGlottalColumns + shape.columns;
    geo.height = shape.max_height + kVerticalPad;
    geo.kind.assign(geo.cells(), CellKind::Wall);
    geo.beta.assign(geo.cells(), 0.0);
    geo.depth_bar.assign(geo.cells(), 1.0);
    geo.depth_x.assign(static_cast<std::size_t>(geo.width + 1) * geo.height, 1.0);
    geo.depth_y.assign(static_cast<std::size_t>(geo.width) * (geo.height + 1), 1.0);

    geo.tube_first_col = kGlottalColumns;
    geo.tube_last_col = geo.width - 1;
    geo.axis_row = (geo.height - 1) / 2;

    for (int k = 0; k < shape.columns; ++k) {
        const int i = kGlottalColumns + k;
        const int h = shape.height[k];
        const int j0 = (geo.height - h) / 2;
        const bool mouth_col = (i == geo.tube_last_col);
        CellKind kind = CellKind::Air;
        if (i == geo.tube_first_col) kind = CellKind::Excitation;
        else if (mouth_col && mode == Termination::OpenEnd) kind = CellKind::OpenEnd;
        for (int j = j0; j < j0 + h; ++j) {
            geo.kind[geo.idx(i, j)] = kind;
            geo.beta[geo.idx(i, j)] = 1.0;
        }
    }
    geo.mouth_exit_depth = shape.diameter.back();
    return geo;
}

GridGeometry add_radiation_domain(const GridGeometry& tube, const AreaFunction& af,
                                  const RadiationOptions& opts) {
    if (tube.mode != Termination::Radiation)
        throw ModeError("radiation domain requires a tube rasterized in Radiation mode");
    if (opts.pml_layers < 1) throw ValidationError("at least one absorbing layer is required");
    if (!(opts.baffle_diameter_m > 0.0)) throw ValidationError("baffle diameter must be positive");

    const double ds = tube.ds;
    const double R = opts.baffle_diameter_m / 2.0;

    // Mouth exit plane and aperture, in tube-grid coordinates (cell centres
    // at (i + 0.5) * ds).
    const double mouth_plane_x = (tube.tube_last_col + 1) * ds;
    int mouth_h = 0, mouth_j0 = 0;
    for (int j = 0; j < tube.height; ++j) {
        if (tube.is_airlike(tube.tube_last_col, j)) {
            if (mouth_h == 0) mouth_j0 = j;
            ++mouth_h;
        }
    }
    if (mouth_h == 0) throw GeometryError("mouth column contains no air cells");
    const double r_mouth = mouth_h * ds / 2.0;
    if (r_mouth >= R)
        throw GeometryError("baffle diameter smaller than the mouth aperture");

    const double cy = (tube.axis_row + 0.5) * ds;
    const double cx = mouth_plane_x - std::sqrt(R * R - r_mouth * r_mouth);

    // Tract contour walls: wall cells with an air-like 8-neighbour. Only
    // these survive the embedding; the rest of the filled tube rectangle
    // melts into head interior / free field.
    auto tube_air = [&](int ti, int tj) {
        return ti >= 0 && ti < tube.width && tj >= 0 && tj < tube.height &&
               tube.is_airlike(ti, tj);
    };
    std::vector<std::uint8_t> contour(tube.cells(), 0);
    for (int tj = 0; tj < tube.height; ++tj)
        for (int ti = 0; ti < tube.width; ++ti) {
            if (tube.is_airlike(ti, tj)) continue;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di)
                    if ((di || dj) && tube_air(ti + di, tj + dj))
                        contour[tube.idx(ti, tj)] = 1;
        }

    // The tract must sit inside the head disc: air cells comfortably inside
    // (so the rim never lands on tract air), contour walls at worst touching
    // the rim. Near the mouth the disc passes exactly through the aperture
    // corners, which is the intended attachment, and the margins above allow
    // it.
    for (int tj = 0; tj < tube.height; ++tj)
        for (int ti = 0; ti < tube.width; ++ti) {
            const bool air = tube.is_airlike(ti, tj);
            if (!air && !contour[tube.idx(ti, tj)]) continue;
            const double x = (ti + 0.5) * ds, y = (tj + 0.5) * ds;
            const double d = std::hypot(x - cx, y - cy);
            const double x_past_mouth = x - (mouth_plane_x - 0.75 * ds);
            if (air && x_past_mouth < 0.0 && d > R - 0.5 * ds)
                throw GeometryError("baffle cannot contain the tract air region");
            if (!air && d > R + 0.5 * ds)
                throw GeometryError("baffle cannot contain the tract contour");
        }

    // Content extent in tube-grid cell indices: baffle disc, tract box and a
    // little slack past the mouth for the external probe.
    const int probe_pad = static_cast<int>(std::lround(0.003 / ds)) + 4;
    const int cx_lo = std::min(static_cast<int>(std::floor((cx - R) / ds)) - 1, 0);
    const int cx_hi = std::max({static_cast<int>(std::ceil((cx + R) / ds)) + 1,
                                tube.width - 1, tube.tube_last_col + probe_pad});
    const int cy_lo = std::min(static_cast<int>(std::floor((cy - R) / ds)) - 1, 0);
    const int cy_hi = std::max(static_cast<int>(std::ceil((cy + R) / ds)) + 1, tube.height - 1);

    const int shell = opts.clearance_cells + opts.pml_layers + 1; // air gap + layers + frame
    const int off_x = shell - cx_lo;
    const int off_y = shell - cy_lo;

    GridGeometry geo;
    geo.ds = ds;
    geo.mode = Termination::Radiation;
    geo.width = (cx_hi - cx_lo + 1) + 2 * shell;
    geo.height = (cy_hi - cy_lo + 1) + 2 * shell;
    geo.pml_layers = opts.pml_layers;
    geo.kind.assign(geo.cells(), CellKind::Air);
    geo.beta.assign(geo.cells(), 1.0);
    geo.depth_bar.assign(geo.cells(), 1.0);
    geo.depth_x.assign(static_cast<std::size_t>(geo.width + 1) * geo.height, 1.0);
    geo.depth_y.assign(static_cast<std::size_t>(geo.width) * (geo.height + 1), 1.0);

    geo.tube_first_col = tube.tube_first_col + off_x;
    geo.tube_last_col = tube.tube_last_col + off_x;
    geo.axis_row = tube.axis_row + off_y;
    geo.mouth_exit_depth = tube.mouth_exit_depth;

    // Embed the tract: air cells as-is, wall cells only where they line the
    // contour.
    for (int tj = 0; tj < tube.height; ++tj) {
        for (int ti = 0; ti < tube.width; ++ti) {
            const CellKind k = tube.at(ti, tj);
            const int i = ti + off_x, j = tj + off_y;
            if (k == CellKind::Air || k == CellKind::Excitation) {
                geo.kind[geo.idx(i, j)] = k;
            } else if (contour[tube.idx(ti, tj)]) {
                geo.kind[geo.idx(i, j)] = CellKind::Wall;
                geo.beta[geo.idx(i, j)] = 0.0;
            }
        }
    }

    // Head baffle: boundary cells of the disc, skipping anything the tract
    // already claimed, with the mouth aperture carved open.
    const double bcx = cx + off_x * ds;
    const double bcy = cy + off_y * ds;
    const double mouth_x_domain = mouth_plane_x + off_x * ds;
    auto inside = [&](int i, int j) {
        const double x = (i + 0.5) * ds, y = (j + 0.5) * ds;
        return std::hypot(x - bcx, y - bcy) <= R;
    };
    for (int j = 0; j < geo.height; ++j) {
        for (int i = 0; i < geo.width; ++i) {
            if (!inside(i, j)) continue;
            const bool rim = !inside(i - 1, j) || !inside(i + 1, j) ||
                             !inside(i, j - 1) || !inside(i, j + 1);
            if (!rim) continue;
            if (geo.kind[geo.idx(i, j)] != CellKind::Air) continue; // tract cell, keep
            // The aperture strip includes the mouth column itself: the rim
            // curls onto it near the attachment corners and must not seal
            // the exit.
            const double x = (i + 0.5) * ds;
            const int tj = j - off_y;
            const bool in_aperture = x > mouth_x_domain - 1.25 * ds &&
                                     tj >= mouth_j0 && tj < mouth_j0 + mouth_h;
            if (in_aperture) continue;
            geo.kind[geo.idx(i, j)] = CellKind::Baffle;
            geo.beta[geo.idx(i, j)] = 0.0;
        }
    }

    // Absorbing layers inside the rigid frame, never overwriting solids.
    for (int j = 0; j < geo.height; ++j) {
        for (int i = 0; i < geo.width; ++i) {
            const int edge = std::min({i, j, geo.width - 1 - i, geo.height - 1 - j});
            auto& k = geo.kind[geo.idx(i, j)];
            if (edge == 0) {
                if (k == CellKind::Air) {
                    k = CellKind::Wall;
                    geo.beta[geo.idx(i, j)] = 0.0;
                }
            } else if (edge <= opts.pml_layers && k == CellKind::Air) {
                k = CellKind::AbsorbingLayer;
            }
        }
    }

    return geo;
}

GridGeometry sample_depths(const AreaFunction& af, GridGeometry geo) {
    const double ds = geo.ds;
    const double L = af.total_length();
    const double d_exit = geo.mouth_exit_depth > 0.0 ? geo.mouth_exit_depth
                                                     : area_to_diameter(af.area_at(L));

    // Column depth: local equivalent diameter inside the tract's axial span,
    // frozen at the mouth-exit value everywhere else (free field, layers).
    for (int i = 0; i < geo.width; ++i) {
        double d;
        if (i < geo.tube_first_col) {
            d = area_to_diameter(af.area_at(0.0));
        } else if (i <= geo.tube_last_col) {
            const double s = (i - geo.tube_first_col + 0.5) * ds;
            d = area_to_diameter(af.area_at(std::min(s, L * (1.0 - 1e-12))));
        } else {
            d = d_exit;
        }
        for (int j = 0; j < geo.height; ++j) geo.depth_bar[geo.idx(i, j)] = d;
    }

    // Face depths: mean of the two adjacent cell depths, single-sided at the
    // domain edges.
    for (int j = 0; j < geo.height; ++j) {
        for (int i = 0; i <= geo.width; ++i) {
            const double dl = geo.depth_bar[geo.idx(std::max(i - 1, 0), j)];
            const double dr = geo.depth_bar[geo.idx(std::min(i, geo.width - 1), j)];
            geo.depth_x[static_cast<std::size_t>(j) * (geo.width + 1) + i] = 0.5 * (dl + dr);
        }
    }
    for (int j = 0; j <= geo.height; ++j) {
        for (int i = 0; i < geo.width; ++i) {
            const double db = geo.depth_bar[geo.idx(i, std::max(j - 1, 0))];
            const double dt = geo.depth_bar[geo.idx(i, std::min(j, geo.height - 1))];
            geo.depth_y[static_cast<std::size_t>(j) * geo.width + i] = 0.5 * (db + dt);
        }
    }
    return geo;
}

DomainSize compute_domain_size(const AreaFunction& af, double ds, Termination mode,
                               const RadiationOptions& opts) {
    if (mode == Termination::OpenEnd) {
        const TubeShape shape = tube_shape(af, ds);
        return {kGlottalColumns + shape.columns, shape.max_height + kVerticalPad};
    }
    const GridGeometry tube = rasterize_tube(af, ds, Termination::Radiation);
    const GridGeometry full = add_radiation_domain(tube, af, opts);
    return {full.width, full.height};
}

void dump_kinds(const GridGeometry& geo, std::ostream& out) {
    static constexpr char glyph[] = {'.', '#', 'E', 'O', 'B', '~'};
    for (int j = geo.height - 1; j >= 0; --j) {
        for (int i = 0; i < geo.width; ++i)
            out << glyph[static_cast<int>(geo.at(i, j))];
        out << '\n';
    }
}

} // namespace vtwave

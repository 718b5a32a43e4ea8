#include "vtwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "vtwave/errors.hpp"

namespace vtwave {

namespace {

// Absorbing-layer strength: with a quadratic profile, sigma_max = k*c/L gives
// a plane-wave round-trip attenuation of exp(-2*k/3); k ~ 10 puts the design
// floor near -60 dB in amplitude before discretization effects.
constexpr double kPmlStrength = 10.4;

void validate_constants(const PhysicalConstants& pc) {
    if (!(pc.rho > 0.0)) throw ValidationError("density must be positive");
    if (!(pc.c > 0.0)) throw ValidationError("speed of sound must be positive");
    if (!(pc.mu > 0.0 && pc.mu < 1.0))
        throw ValidationError("boundary coefficient mu must lie in (0, 1)");
}

} // namespace

double cfl_timestep(double ds, double c) {
    if (!(ds > 0.0)) throw ValidationError("grid spacing must be positive");
    if (!(c > 0.0)) throw ValidationError("speed of sound must be positive");
    return ds / (std::numbers::sqrt2 * c);
}

double wall_impedance(const PhysicalConstants& pc) {
    validate_constants(pc);
    // Reflection-coefficient form: absorption alpha = 1 - ((1-mu)/(1+mu))^2,
    // Z = rho*c*(1+sqrt(1-alpha))/(1-sqrt(1-alpha)). The surd collapses to
    // (1-mu)/(1+mu), so Z is exactly rho*c/mu.
    const double root = (1.0 - pc.mu) / (1.0 + pc.mu);
    return pc.rho * pc.c * (1.0 + root) / (1.0 - root);
}

Vec2 wall_velocity(double pressure, double impedance, Vec2 normal) {
    if (!(impedance > 0.0)) throw ValidationError("impedance must be positive");
    const double vn = pressure / impedance;
    return {vn * normal.x, vn * normal.y};
}

YeeGrid::YeeGrid(GridGeometry geo_in, const SimulationConfig& cfg)
    : geo_(std::move(geo_in)), cfg_(cfg) {
    const GridGeometry& geo = geo_;
    validate_constants(cfg.constants);
    const double limit = cfl_timestep(geo.ds, cfg.constants.c);
    dt_ = cfg.dt > 0.0 ? cfg.dt : limit;
    if (dt_ > limit * (1.0 + 1e-9))
        throw StabilityError("time step " + std::to_string(dt_) +
                             " s exceeds the stability limit " + std::to_string(limit) + " s");

    const std::size_t n = geo.cells();
    p.assign(n, 0.0);
    px.assign(n, 0.0);
    py.assign(n, 0.0);
    vx.assign(static_cast<std::size_t>(geo.width + 1) * geo.height, 0.0);
    vy.assign(static_cast<std::size_t>(geo.width) * (geo.height + 1), 0.0);

    if (cfg.solver == SolverKind::TwoD) {
        // Classic scheme: unit depth everywhere, same kernels.
        depth_bar_.assign(geo.depth_bar.size(), 1.0);
        depth_x_.assign(geo.depth_x.size(), 1.0);
        depth_y_.assign(geo.depth_y.size(), 1.0);
    } else {
        depth_bar_ = geo.depth_bar;
        depth_x_ = geo.depth_x;
        depth_y_ = geo.depth_y;
    }

    const PhysicalConstants& pc = cfg.constants;
    pcoef_.assign(n, 0.0);
    absorbing_.assign(n, 0);
    for (int j = 0; j < geo.height; ++j) {
        for (int i = 0; i < geo.width; ++i) {
            const std::size_t cidx = geo.idx(i, j);
            switch (geo.at(i, j)) {
            case CellKind::Air:
            case CellKind::Excitation:
                pcoef_[cidx] = pc.rho * pc.c * pc.c * dt_ / (geo.ds * depth_bar_[cidx]);
                break;
            case CellKind::AbsorbingLayer:
                pcoef_[cidx] = pc.rho * pc.c * pc.c * dt_ / (geo.ds * depth_bar_[cidx]);
                absorbing_[cidx] = 1;
                break;
            default:
                break; // walls and the pinned open end never integrate pressure
            }
        }
    }

    classify_faces();
    build_damping_profiles();

    for (int j = 0; j < geo.height; ++j) {
        if (!cfg.excitation_full_column && j != geo.axis_row) continue;
        for (int i = 0; i < geo.width; ++i)
            if (geo.at(i, j) == CellKind::Excitation)
                injection_.push_back({static_cast<std::size_t>(j) * (geo.width + 1) + i + 1,
                                      static_cast<std::size_t>(j + 1) * geo.width + i});
    }
}

void YeeGrid::classify_faces() {
    const GridGeometry& g = geo_;
    const double Z = wall_impedance(cfg_.constants);
    const double inv_z = 1.0 / Z;

    auto airlike = [&](int i, int j) -> int {
        if (i < 0 || i >= g.width || j < 0 || j >= g.height) return -1; // outside
        return g.is_airlike(i, j) ? 1 : 0;
    };

    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i <= g.width; ++i) {
            const std::size_t f = static_cast<std::size_t>(j) * (g.width + 1) + i;
            const int left = airlike(i - 1, j);
            const int right = airlike(i, j);
            if (left == 1 && right == 1) {
                continue; // free face, handled by the sweep
            } else if (left == 1 || right == 1) {
                // Velocity prescribed from the air-side pressure, oriented
                // into the obstruction; rigid (zero) when the obstruction is
                // the domain edge.
                const bool air_left = left == 1;
                const int oi = air_left ? i : i - 1; // the obstructing side
                const bool lossy = oi >= 0 && oi < g.width &&
                                   (g.at(oi, j) == CellKind::Wall ||
                                    g.at(oi, j) == CellKind::Baffle);
                const std::size_t air_cell = g.idx(air_left ? i - 1 : i, j);
                const double scale = lossy ? (air_left ? inv_z : -inv_z) : 0.0;
                wall_x_.push_back({f, air_cell, scale});
            }
        }
    }

    for (int j = 0; j <= g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const std::size_t f = static_cast<std::size_t>(j) * g.width + i;
            const int below = airlike(i, j - 1);
            const int above = airlike(i, j);
            if (below == 1 && above == 1) {
                continue;
            } else if (below == 1 || above == 1) {
                const bool air_below = below == 1;
                const int oj = air_below ? j : j - 1;
                const bool lossy = oj >= 0 && oj < g.height &&
                                   (g.at(i, oj) == CellKind::Wall ||
                                    g.at(i, oj) == CellKind::Baffle);
                const std::size_t air_cell = g.idx(i, air_below ? j - 1 : j);
                const double scale = lossy ? (air_below ? inv_z : -inv_z) : 0.0;
                wall_y_.push_back({f, air_cell, scale});
            }
        }
    }
}

void YeeGrid::build_damping_profiles() {
    const GridGeometry& g = geo_;
    sigx_cell_.assign(g.width, 0.0);
    sigy_cell_.assign(g.height, 0.0);
    sigx_face_.assign(g.width + 1, 0.0);
    sigy_face_.assign(g.height + 1, 0.0);
    dax_.assign(g.width + 1, 1.0);
    dbx_.assign(g.width + 1, 1.0);
    day_.assign(g.height + 1, 1.0);
    dby_.assign(g.height + 1, 1.0);
    if (g.pml_layers <= 0) return;

    const int L = g.pml_layers;
    const double smax = kPmlStrength * cfg_.constants.c / (L * g.ds);
    // Quadratic grading, zero at the interior boundary, maximal against the
    // frame. Positions are measured in cells; the frame occupies index 0.
    auto profile = [&](double pos, double lo_extent, double hi_extent) {
        const double depth_lo = (L + 1) - pos;     // distance into the low-side layers
        const double depth_hi = pos - (hi_extent - (L + 1)); // ... high side
        const double d = std::max({depth_lo, depth_hi, 0.0});
        const double u = std::min(d / L, 1.0);
        return smax * u * u;
    };
    for (int i = 0; i < g.width; ++i) sigx_cell_[i] = profile(i + 0.5, 0, g.width);
    for (int i = 0; i <= g.width; ++i) sigx_face_[i] = profile(i, 0, g.width);
    for (int j = 0; j < g.height; ++j) sigy_cell_[j] = profile(j + 0.5, 0, g.height);
    for (int j = 0; j <= g.height; ++j) sigy_face_[j] = profile(j, 0, g.height);

    for (int i = 0; i <= g.width; ++i) {
        const double s = sigx_face_[i] * 0.5 * dt_;
        dax_[i] = (1.0 - s) / (1.0 + s);
        dbx_[i] = 1.0 / (1.0 + s);
    }
    for (int j = 0; j <= g.height; ++j) {
        const double s = sigy_face_[j] * 0.5 * dt_;
        day_[j] = (1.0 - s) / (1.0 + s);
        dby_[j] = 1.0 / (1.0 + s);
    }
}

void YeeGrid::inject(double ve) {
    if (ve == 0.0) return;
    for (const auto& pt : injection_) {
        vx[pt.face_x] += ve;
        vy[pt.face_y] += ve;
    }
}

bool YeeGrid::finite() const {
    for (double v : p)
        if (!std::isfinite(v)) return false;
    return true;
}

void step_pressure(YeeGrid& grid, const SimulationConfig&) {
    const GridGeometry& g = grid.geometry();
    const int W = g.width, H = g.height;
    const double* dxf = grid.depth_x_.data();
    const double* dyf = grid.depth_y_.data();

    for (int j = 0; j < H; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * W;
        const std::size_t vxrow = static_cast<std::size_t>(j) * (W + 1);
        const std::size_t vyrow0 = row;            // vy shares the cell stride
        const std::size_t vyrow1 = row + W;
        for (int i = 0; i < W; ++i) {
            const std::size_t n = row + i;
            const double pc = grid.pcoef_[n];
            if (pc == 0.0 || grid.absorbing_[n]) continue;
            const double divx = dxf[vxrow + i + 1] * grid.vx[vxrow + i + 1] -
                                dxf[vxrow + i] * grid.vx[vxrow + i];
            const double divy = dyf[vyrow1 + i] * grid.vy[vyrow1 + i] -
                                dyf[vyrow0 + i] * grid.vy[vyrow0 + i];
            grid.px[n] -= pc * divx;
            grid.py[n] -= pc * divy;
            grid.p[n] = grid.px[n] + grid.py[n];
        }
    }
}

void step_pml(YeeGrid& grid, const SimulationConfig&) {
    const GridGeometry& g = grid.geometry();
    if (g.mode != Termination::Radiation)
        throw ModeError("absorbing-layer update has no meaning in open-end mode");
    const int W = g.width, H = g.height;
    const double* dxf = grid.depth_x_.data();
    const double* dyf = grid.depth_y_.data();
    const double half_dt = 0.5 * grid.dt_;

    for (int j = 0; j < H; ++j) {
        const double sy = grid.sigy_cell_[j] * half_dt;
        const double ay = (1.0 - sy) / (1.0 + sy), by = 1.0 / (1.0 + sy);
        const std::size_t row = static_cast<std::size_t>(j) * W;
        const std::size_t vxrow = static_cast<std::size_t>(j) * (W + 1);
        for (int i = 0; i < W; ++i) {
            const std::size_t n = row + i;
            if (!grid.absorbing_[n]) continue;
            const double pc = grid.pcoef_[n];
            const double sx = grid.sigx_cell_[i] * half_dt;
            const double ax = (1.0 - sx) / (1.0 + sx), bx = 1.0 / (1.0 + sx);
            const double divx = dxf[vxrow + i + 1] * grid.vx[vxrow + i + 1] -
                                dxf[vxrow + i] * grid.vx[vxrow + i];
            const double divy = dyf[row + W + i] * grid.vy[row + W + i] -
                                dyf[row + i] * grid.vy[row + i];
            grid.px[n] = grid.px[n] * ax - pc * bx * divx;
            grid.py[n] = grid.py[n] * ay - pc * by * divy;
            grid.p[n] = grid.px[n] + grid.py[n];
        }
    }
}

void step_velocity(YeeGrid& grid, const SimulationConfig& cfg) {
    const GridGeometry& g = grid.geometry();
    const int W = g.width, H = g.height;
    const double gcoef = grid.dt_ / (cfg.constants.rho * g.ds);

    // Free-face sweep. Gradients next to solids read the (zero) wall
    // pressure; those faces are overwritten by the boundary fix-up below, so
    // the garbage never propagates. Outside the absorbing layers the damping
    // factors are exactly one.
    const double* dax = grid.dax_.data();
    const double* dbx = grid.dbx_.data();
    for (int j = 0; j < H; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * W;
        const std::size_t vxrow = static_cast<std::size_t>(j) * (W + 1);
        for (int i = 1; i < W; ++i) {
            const double grad = grid.p[row + i] - grid.p[row + i - 1];
            grid.vx[vxrow + i] = grid.vx[vxrow + i] * dax[i] - gcoef * dbx[i] * grad;
        }
    }
    for (int j = 1; j < H; ++j) {
        const std::size_t rlo = static_cast<std::size_t>(j - 1) * W;
        const std::size_t rhi = static_cast<std::size_t>(j) * W;
        const double a = grid.day_[j], b = gcoef * grid.dby_[j];
        for (int i = 0; i < W; ++i) {
            const double grad = grid.p[rhi + i] - grid.p[rlo + i];
            grid.vy[rhi + i] = grid.vy[rhi + i] * a - b * grad;
        }
    }

    // Boundary faces: prescribed wall velocity p/Z into the solid (exact
    // assignment, not an update), zero against the domain edge.
    for (const auto& f : grid.wall_x_) grid.vx[f.face] = f.scale * grid.p[f.air_cell];
    for (const auto& f : grid.wall_y_) grid.vy[f.face] = f.scale * grid.p[f.air_cell];
}

double field_energy(const YeeGrid& grid) {
    const GridGeometry& g = grid.geometry();
    const PhysicalConstants& pc = grid.config().constants;
    const double cell_area = g.ds * g.ds;
    double e = 0.0;
    for (std::size_t n = 0; n < grid.p.size(); ++n) {
        if (!g.is_airlike(static_cast<int>(n % g.width), static_cast<int>(n / g.width)))
            continue;
        const double pr = grid.p[n];
        e += grid.depth_bar()[n] * pr * pr / (2.0 * pc.rho * pc.c * pc.c);
    }
    for (std::size_t f = 0; f < grid.vx.size(); ++f) {
        const double v = grid.vx[f];
        e += grid.depth_x()[f] * 0.5 * pc.rho * v * v;
    }
    for (std::size_t f = 0; f < grid.vy.size(); ++f) {
        const double v = grid.vy[f];
        e += grid.depth_y()[f] * 0.5 * pc.rho * v * v;
    }
    return e * cell_area;
}

PressureTrace run_simulation(const AreaFunction& af, const SimulationConfig& cfg,
                             const ExcitationSignal& excitation,
                             const SnapshotObserver& observer) {
    validate_constants(cfg.constants);
    if (!(cfg.duration > 0.0)) throw ValidationError("duration must be positive");

    GridGeometry geo = rasterize_tube(af, cfg.ds, cfg.mode);
    if (cfg.mode == Termination::Radiation)
        geo = add_radiation_domain(geo, af, cfg.radiation);
    geo = sample_depths(af, geo);

    YeeGrid grid(geo, cfg);

    double offset = cfg.probe_offset_m;
    if (offset == 0.0)
        offset = cfg.mode == Termination::OpenEnd ? -0.003 : 0.003;
    const int probe_col = geo.tube_last_col + static_cast<int>(std::lround(offset / cfg.ds));
    const int probe_row = geo.axis_row;
    if (probe_col < 0 || probe_col >= geo.width || !geo.is_airlike(probe_col, probe_row) ||
        geo.at(probe_col, probe_row) == CellKind::AbsorbingLayer)
        throw GeometryError("probe position does not fall on a regular air cell");
    grid.probe_col = probe_col;
    grid.probe_row = probe_row;

    const double dt = grid.dt();
    const auto steps = static_cast<std::size_t>(std::floor(cfg.duration / dt));

    PressureTrace trace;
    trace.sample_rate = 1.0 / dt;
    trace.probe_col = probe_col;
    trace.probe_row = probe_row;
    trace.samples.reserve(steps);

    const bool radiation = cfg.mode == Termination::Radiation;
    for (std::size_t n = 0; n < steps; ++n) {
        step_pressure(grid, cfg);
        if (radiation) step_pml(grid, cfg);
        if (n < excitation.samples.size()) grid.inject(excitation.samples[n]);
        step_velocity(grid, cfg);
        trace.samples.push_back(grid.pressure_at(probe_col, probe_row));
        if ((n & 63u) == 63u && !grid.finite())
            throw StabilityError("non-finite field value detected at step " + std::to_string(n));
        if (observer) observer(grid, static_cast<int>(n));
    }
    if (!grid.finite())
        throw StabilityError("non-finite field value detected at step " + std::to_string(steps));
    return trace;
}

} // namespace vtwave

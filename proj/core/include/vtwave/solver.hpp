#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "vtwave/excitation.hpp"
#include "vtwave/geometry.hpp"

namespace vtwave {

struct PhysicalConstants {
    double rho = 1.14; // air density, kg/m^3
    double c = 350.0;  // speed of sound, m/s
    double mu = 0.005; // boundary admittance coefficient, in (0, 1)
};

enum class SolverKind {
    TwoD,          // classic 2D scheme: all depths forced to one
    TwoPointFiveD, // depth-weighted scheme
};

struct SimulationConfig {
    PhysicalConstants constants;
    double ds = 0.74e-3;       // grid spacing, m
    double dt = 0.0;           // time step, s; 0 means "use the stability limit"
    double duration = 0.050;   // simulated time, s
    Termination mode = Termination::OpenEnd;
    SolverKind solver = SolverKind::TwoPointFiveD;
    RadiationOptions radiation;
    // Probe position along the axis relative to the mouth exit plane;
    // negative values sit inside the tract. 0 picks the mode default
    // (-3 mm inside for OpenEnd, +3 mm outside for Radiation).
    double probe_offset_m = 0.0;
    bool excitation_full_column = true; // false: single cell on the axis
};

struct PressureTrace {
    std::vector<double> samples; // Pa, one per step
    double sample_rate = 0.0;    // Hz, = 1/dt
    int probe_col = 0;
    int probe_row = 0;
};

// Largest stable time step for the scheme.
double cfl_timestep(double ds, double c);

// Normal acoustic impedance of the lossy boundary; reduces to rho*c/mu.
double wall_impedance(const PhysicalConstants& pc);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Boundary particle velocity prescribed at a wall face: p/Z along the
// oriented normal (pointing into the wall).
Vec2 wall_velocity(double pressure, double impedance, Vec2 normal);

// Field state for one simulation. The pressure is kept split into axial and
// vertical accumulators (px + py) so the absorbing layers can damp each
// direction independently; outside the layers the split update is exactly
// the plain one.
class YeeGrid {
public:
    YeeGrid(GridGeometry geo, const SimulationConfig& cfg);

    const GridGeometry& geometry() const { return geo_; }
    const SimulationConfig& config() const { return cfg_; }
    double dt() const { return dt_; }

    std::vector<double> p;  // width*height
    std::vector<double> px; // split accumulators, same shape as p
    std::vector<double> py;
    std::vector<double> vx; // (width+1)*height
    std::vector<double> vy; // width*(height+1)

    // Add the source sample to the outflow faces of every excitation cell.
    void inject(double ve);
    bool finite() const;
    double pressure_at(int i, int j) const { return p[geo_.idx(i, j)]; }

    // Depth arrays actually used by the kernels (all ones in TwoD mode).
    const std::vector<double>& depth_bar() const { return depth_bar_; }
    const std::vector<double>& depth_x() const { return depth_x_; }
    const std::vector<double>& depth_y() const { return depth_y_; }

    int probe_col = 0;
    int probe_row = 0;

private:
    friend void step_pressure(YeeGrid&, const SimulationConfig&);
    friend void step_velocity(YeeGrid&, const SimulationConfig&);
    friend void step_pml(YeeGrid&, const SimulationConfig&);

    GridGeometry geo_;
    SimulationConfig cfg_;
    double dt_ = 0.0;

    std::vector<double> depth_bar_, depth_x_, depth_y_;

    // Per-cell pressure update coefficient rho*c^2*dt / (ds * depth_bar),
    // zero on cells whose pressure is not integrated (walls, open end).
    std::vector<double> pcoef_;
    std::vector<std::uint8_t> absorbing_; // cells updated by step_pml, not step_pressure

    // Damping profiles for the absorbing layers (zero elsewhere).
    std::vector<double> sigx_cell_, sigy_cell_; // by column / by row
    std::vector<double> sigx_face_, sigy_face_;
    // Velocity damping factors per face line, derived from the profiles:
    // v' = v*a - coef*b*grad. Exactly (1, 1) where the damping is zero.
    std::vector<double> dax_, dbx_; // indexed by face column, size width+1
    std::vector<double> day_, dby_; // indexed by face row, size height+1

    // Lossy/rigid boundary faces: velocity prescribed from the adjacent air
    // cell's pressure each step.
    struct BoundaryFace {
        std::size_t face;     // index into vx or vy
        std::size_t air_cell; // index into p
        double scale;         // +-1/Z, or 0 for a rigid face
    };
    std::vector<BoundaryFace> wall_x_, wall_y_;

    struct InjectionPoint {
        std::size_t face_x; // right face of the cell
        std::size_t face_y; // top face of the cell
    };
    std::vector<InjectionPoint> injection_;

    void classify_faces();
    void build_damping_profiles();
};

// Advance the pressure field on regular (non-absorbing) air cells by one
// step; open-end cells are pinned to zero.
void step_pressure(YeeGrid& grid, const SimulationConfig& cfg);

// Advance both velocity components by one step: free faces integrate the
// pressure gradient (with directional damping inside the absorbing layers),
// boundary faces are overwritten with the prescribed wall velocity.
void step_velocity(YeeGrid& grid, const SimulationConfig& cfg);

// Advance the split pressure accumulators on absorbing-layer cells.
// Only meaningful in Radiation mode; throws ModeError otherwise.
void step_pml(YeeGrid& grid, const SimulationConfig& cfg);

// Discrete field energy (pressure + kinetic, depth-weighted). Diagnostic.
double field_energy(const YeeGrid& grid);

using SnapshotObserver = std::function<void(const YeeGrid&, int step)>;

// Build the geometry for `af` under `cfg`, run the full time loop, and
// return the pressure trace at the probe. Refuses time steps above the
// stability limit; aborts with StabilityError if the field goes non-finite.
PressureTrace run_simulation(const AreaFunction& af, const SimulationConfig& cfg,
                             const ExcitationSignal& excitation,
                             const SnapshotObserver& observer = nullptr);

} // namespace vtwave

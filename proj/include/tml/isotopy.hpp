#pragma once

#include "tml/groups.hpp"
#include "tml/maslov.hpp"

namespace tml {

/// Monodromy readout of a simulated self-isotopy plus the numerical
/// evidence that the integer answer is trustworthy.
struct IsotopyDiagnostics {
    double max_winding_residual = 0;
    double frame_closure_error = 0;
    double ode_step = 0;
    double flow_endpoint_error = 0;   // vs the closed-form time-1 map, case 1
    double max_hamiltonian_drift = 0; // case 1
    double on_torus_error = 0;        // worst distance of image samples from the torus
    int ns = 0, nt = 0;
};

struct IsotopyReport {
    Mat2Z monodromy;
    H1Class gamma1_image, gamma2_image; // the matrix columns
    IsotopyDiagnostics diag;
};

/// The rotation Hamiltonian H = (pi/2)(x2 y1 - x1 y2) and its field
/// X = (pi/2)(x1 d_x2 - x2 d_x1 + y1 d_y2 - y2 d_y1).
double rotation_hamiltonian(const Vec4& p);
Vec4 rotation_field(const Vec4& p);

/// Time-s map of the rotation field in closed form: the unitary
/// rotation by pi s / 2 in the (z1, z2) pair.
Vec4 rotation_closed_form(double s, const Vec4& p);

struct FlowOptions {
    double step = 1.0 / 1024;
    bool with_cutoff = false; // multiply H by a radial bump, 1 inside r0
    double cutoff_r0 = 0;     // required when with_cutoff
    double cutoff_r1 = 0;
};

/// RK4 integration of the rotation field from time 0 to s.
Vec4 hamiltonian_flow(const Vec4& p0, double s, const FlowOptions& opt = {});

/// Same integration, also reporting the max |H - H(0)| drift seen along
/// the trajectory.
Vec4 hamiltonian_flow_tracked(const Vec4& p0, double s, const FlowOptions& opt,
                              double* max_drift);

/// Monodromy of the time-1 rotation flow on T_{b,b}; equals f1 = (0 1; 1 0).
IsotopyReport simulate_case1(double b, int n_samples, const FlowOptions& opt = {});

/// The one-parameter family of plane rotations used for the reflection
/// monodromies: rotation by pi s in the x1 y2 plane, y1 x2 fixed.
Vec4 psi_s(double s, const Vec4& p);

/// Transport of the symplectic normal frame of a coordinate-circle core
/// curve across the psi_s family, kept for the framing-defect check.
struct TubeTransport {
    bool variant = false;  // false: z2-plane core (radius b); true: z1-plane core
    double radius = 0;     // b, or a for the variant
    double eps = 0;
    int ns = 0, nt = 0;
    LoopR4 core_start, core_end;       // C_0 and C_1 with their own orientations
    NormalFrame frame_start, frame_end; // per-t frames at s = 0 and s = 1
};

TubeTransport run_tube_transport(double radius, double eps, int ns, int nt,
                                 bool variant = false);

/// Monodromy of the normal-disc-bundle tube along psi_s around the
/// z2-plane circle; equals f0 = (1 2; 0 -1) on T_{eps,b}.
IsotopyReport simulate_case2(double b, double eps, int ns, int nt);

/// Same pipeline around the z1-plane circle; equals f2 = (-1 0; 2 1).
IsotopyReport simulate_case2_variant(double a, double eps, int ns, int nt);

IsotopyReport report_from_transport(const TubeTransport& t);

/// Index of the transported 0-framing over the end curve minus the index
/// of a fresh 0-framing of the end curve; a multiple of 4.
i64 framing_defect(const TubeTransport& t);

/// Radii path (a(s), b(s)); transports the basis curves by pointwise
/// rescaling. The monodromy is the identity.
IsotopyReport clifford_path_transport(const std::vector<std::pair<double, double>>& path,
                                      int n_samples);

/// Sampled torus self-map (theta, t) -> (f, g), angles on uniform grids,
/// row-major with theta the outer index.
struct TorusMapGrid {
    int n_theta = 0, n_t = 0;
    std::vector<double> f, g;
    double fval(int i, int j) const { return f[static_cast<size_t>(i) * n_t + j]; }
    double gval(int i, int j) const { return g[static_cast<size_t>(i) * n_t + j]; }
};

/// Columns are the winding vectors of the images of the theta- and
/// t-cycles.
Mat2Z induced_h1_map(const TorusMapGrid& map);

} // namespace tml

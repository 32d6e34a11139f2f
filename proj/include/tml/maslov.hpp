#pragma once

#include "tml/geometry.hpp"

namespace tml {

/// Non-vanishing unit section of the symplectic normal bundle of a loop.
struct Framing {
    std::vector<Vec4> sigma;
    int size() const { return static_cast<int>(sigma.size()); }
};

struct MaslovIndex {
    i64 value = 0; // even for loops of Lagrangian planes arising from framings
    double residual = 0;
    double max_phase_step = 0;
    int samples = 0;
};

/// Maslov index of a loop of Lagrangian planes: orthonormalize each
/// (u, v) pair, read the columns as C^2 vectors (the matrix is then
/// unitary), and take the winding number of det^2. Throws if a plane
/// fails the unitarity test at 1e-8 or the phase is undersampled.
/// phase_trace, when given, receives the per-sample det^2 phase.
MaslovIndex maslov_index_loop(const FrameLoop& planes,
                              std::vector<double>* phase_trace = nullptr);

/// Tangent planes of T_{a,b} along its (n1, n2) curve.
FrameLoop torus_tangent_frames(const CliffordTorus& t, i64 n1, i64 n2, int n_samples);

/// Maslov class evaluated on n1*gamma1 + n2*gamma2; equals 2(n1+n2).
/// Requires n_samples >= 64*(|n1|+|n2|).
MaslovIndex maslov_class_eval(const CliffordTorus& t, i64 n1, i64 n2, int n_samples);

/// Index of the plane loop (C'/|C'|, sigma).
MaslovIndex framing_index(const LoopR4& c, const Framing& sigma);

/// Framing with index exactly 2m, built by twisting the transported
/// normal frame: sigma(t) = cos((m-k)t) e1 + sin((m-k)t) e2 where
/// 2k is the measured index of e1.
Framing make_m_framing(const LoopR4& c, i64 m);

/// Framing carried by a normal-frame section expressed in that frame.
Framing frame_section(const NormalFrame& f, const std::vector<double>& angle);

} // namespace tml

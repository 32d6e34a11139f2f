#pragma once

#include "tml/isotopy.hpp"
#include "tml/linking.hpp"

#include <string>

namespace tml {

/// Curve CSV: header "t,x1,y1,x2,y2", one row per sample on a uniform
/// t grid over [0, 2pi), closure implied. Ingested curves are checked
/// for grid uniformity and grid-level embeddedness.
LoopR4 load_curve_csv(const std::string& path);
void save_curve_csv(const std::string& path, const LoopR4& curve);

/// Surface CSV: header "t1,t2,x1,y1,x2,y2", row-major with t1 outer,
/// both grids uniform over [0, 2pi), closure implied in both.
TorusSurface load_surface_csv(const std::string& path);

/// Torus self-map CSV: header "theta,t,f,g", row-major with theta outer.
TorusMapGrid load_map_csv(const std::string& path);

} // namespace tml

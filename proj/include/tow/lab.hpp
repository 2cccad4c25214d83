#pragma once

#include <string>

#include "tow/dpp.hpp"
#include "tow/grid.hpp"
#include "tow/params.hpp"

namespace tow {

// Shape spec strings, as accepted by the CLI:
//   "interval:a,b"
//   "box:lo1,..,lon;hi1,..,hin"
//   "ball:n,c1,..,cn,R"
//   "annulus:n,c1,..,cn,rin,rout"
Shape parse_shape(const std::string& spec);

// Boundary data families:
//   "constant:c"
//   "affine:c0,a1,..,an"        c0 + a . x
//   "affinepos:c0,a1,..,an"     same, clamped below at c0/2 (positive data)
//   "fundsol:p,z1,..,zn"        fundamental-solution trace centered at z
//   "gauss:A,s,c1,..,cn"        A exp(-|x-c|^2 / s^2)
GridField make_boundary_field(const GridDomain& dom, const std::string& spec, int n);

// Runs one experiment described by a JSON config with a "command" tag in
// {solve, play, cylinder, verify, sweep}; returns the JSON report. The
// report embeds the fully resolved config (defaults filled in). Throws
// std::invalid_argument on config errors and std::runtime_error on numerical
// failure; a failed verdict is reported in the JSON ("pass": false), not
// thrown.
std::string run_experiment_json(const std::string& config_json);

}  // namespace tow

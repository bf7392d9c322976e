#pragma once

#include <string>
#include <vector>

#include "mimo/harness.hpp"

namespace mimo::plot {

// Three panels (range, Doppler and 2D ISLR against N_tx), one polyline per
// waveform, with a log2 N_tx axis. Returns a standalone SVG document.
std::string islr_curves_svg(const std::vector<harness::CurvePoint>& points);

}  // namespace mimo::plot

#pragma once

#include <string>
#include <vector>

#include "heavyhex/evaluation.hpp"

namespace heavyhex {

/// Log-log chart of logical error rate vs p_step, one polyline per distance,
/// plus the dashed identity reference rate = q_effective.  Points with zero
/// rate are skipped.  Returns the SVG document as a string.
std::string sweep_svg(const std::vector<std::vector<CurvePoint>>& curves,
                      const std::string& title);

void write_sweep_svg(const std::string& path,
                     const std::vector<std::vector<CurvePoint>>& curves,
                     const std::string& title);

}  // namespace heavyhex

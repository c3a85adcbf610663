#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace igo {

/// Minimal polyline plot: one curve, auto-scaled axes box, no dependencies.
/// CSV files are the authoritative output; these renderings are for a quick
/// visual check only.
void write_polyline_svg(std::ostream& os, const std::vector<std::pair<double, double>>& points,
                        const std::string& x_label, const std::string& y_label);

} // namespace igo

#pragma once

#include <string>
#include <vector>

#include "viscolab/grid.hpp"

namespace viscolab {

/// 17 significant digits: doubles round-trip bit-exactly through this.
std::string format_g17(double v);

/// Generic CSV with a header row; every numeric cell uses format_g17.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Node table for a grid function: x[,y],value over all nodes in id order.
void write_field_csv(const std::string& path, const GridFunction& g);

/// Reads a field written by write_field_csv back onto the same grid.
/// Coordinates are checked against the grid; values round-trip bit-exactly.
GridFunction read_field_csv(const std::string& path, GridPtr grid);

}  // namespace viscolab

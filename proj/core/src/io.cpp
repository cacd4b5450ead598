#include "viscolab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace viscolab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << format_g17(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

void write_field_csv(const std::string& path, const GridFunction& g) {
  const Grid& grid = g.grid();
  std::vector<std::string> header =
      grid.dim() == 1 ? std::vector<std::string>{"x", "value"}
                      : std::vector<std::string>{"x", "y", "value"};
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.n_nodes());
  for (int id = 0; id < grid.n_nodes(); ++id) {
    Point p = grid.pos(id);
    if (grid.dim() == 1)
      rows.push_back({p[0], g[id]});
    else
      rows.push_back({p[0], p[1], g[id]});
  }
  write_csv(path, header, rows);
}

GridFunction read_field_csv(const std::string& path, GridPtr grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_field_csv: empty file " + path);

  GridFunction g(grid);
  int id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (id >= grid->n_nodes())
      throw std::runtime_error("read_field_csv: more rows than grid nodes");
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    size_t expect = grid->dim() == 1 ? 2 : 3;
    if (vals.size() != expect)
      throw std::runtime_error("read_field_csv: bad row in " + path);
    Point p = grid->pos(id);
    double tol = 1e-12 * (1.0 + std::abs(p[0]) + std::abs(p[1]));
    if (std::abs(vals[0] - p[0]) > tol ||
        (grid->dim() == 2 && std::abs(vals[1] - p[1]) > tol))
      throw std::runtime_error("read_field_csv: node coordinates mismatch");
    g[id] = vals.back();
    ++id;
  }
  if (id != grid->n_nodes())
    throw std::runtime_error("read_field_csv: fewer rows than grid nodes");
  return g;
}

}  // namespace viscolab

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pctopo/core.hpp"
#include "pctopo/verification.hpp"

namespace pctopo {

// Shortest decimal that reads back to the same double; "inf" / "-inf".
std::string format_double(double v);

// Strict parse of one number ("inf" accepted only when allow_inf).
double parse_double(std::string_view token, bool allow_inf = false);

// Point CSV: one row per point, comma-separated decimals, constant column
// count. Blank lines and lines starting with '#' are ignored; with
// skip_header the first remaining line is dropped. Non-finite values are
// rejected.
PointCloud parse_cloud_csv(std::string_view text, bool skip_header = false);
PointCloud read_cloud_csv(const std::string& path, bool skip_header = false);
void write_cloud_csv(const std::string& path, const PointCloud& cloud);
std::string format_cloud_csv(const PointCloud& cloud);

// Grid CSV: the embedded coordinates of the cells, preceded by
//   # mu=<step>, origin=<z1;z2;...>, halved=<true|false>
struct GridFileHint {
  std::optional<double> step;
  std::vector<double> origin;  // empty: zero vector
  bool halved = false;
};

// The header wins over the hint when both are present; without either the
// call fails. Every row must lie exactly on the lattice.
Grid read_grid_csv(const std::string& path, const GridFileHint& hint = {});
Grid parse_grid_csv(std::string_view text, const GridFileHint& hint = {});
void write_grid_csv(const std::string& path, const Grid& grid);
std::string format_grid_csv(const Grid& grid);

// Diagram CSV: "birth,death[,source_index]" with the token inf for an
// infinite death. birth <= death is required.
PersistenceDiagram read_diagram_csv(const std::string& path);
PersistenceDiagram parse_diagram_csv(std::string_view text);
void write_diagram_csv(const std::string& path, const PersistenceDiagram& diagram);
std::string format_diagram_csv(const PersistenceDiagram& diagram);

// theorem,seed,n,N,parameter,bound,value,pass
void write_suite_csv(std::ostream& out, const std::vector<SuiteCase>& cases);

}  // namespace pctopo

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lrdag/graph.hpp"

namespace lrdag {

/// Thrown on malformed input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Edge-list format:
//   d=<int>
//   tail,head[,weight]     one row per edge, 0-based
// Blank lines and lines starting with '#' are skipped. Weights must appear on
// every row or on none.

struct EdgeListFile {
  Dag graph;
  std::optional<std::vector<double>> weights;  ///< aligned with graph.edges()

  /// The weighted graph; throws FormatError when the file carried no weights.
  WeightedDag weighted() const;
};

EdgeListFile parse_edge_list(std::istream& in);
EdgeListFile read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Dag& g);
void write_edge_list(std::ostream& out, const WeightedDag& g);

/// Dense CSV: one row per line, comma-separated reals, no header.
Eigen::MatrixXd parse_matrix_csv(std::istream& in);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// 17 significant digits, so values round-trip exactly.
std::string format_real(double x);

}  // namespace lrdag

#include "lrdag/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lrdag {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, int line_no) {
  T value{};
  if constexpr (std::is_same_v<T, double>) {
    // from_chars for double is incomplete on older toolchains; strtod is fine here.
    std::string buffer(field);
    char* end = nullptr;
    value = std::strtod(buffer.c_str(), &end);
    if (buffer.empty() || end != buffer.c_str() + buffer.size())
      throw FormatError("line " + std::to_string(line_no) + ": bad number '" + buffer + "'");
  } else {
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
      throw FormatError("line " + std::to_string(line_no) + ": bad integer '" +
                        std::string(field) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

WeightedDag EdgeListFile::weighted() const {
  if (!weights) throw FormatError("edge list has no weights");
  return WeightedDag(graph, *weights);
}

EdgeListFile parse_edge_list(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::optional<int> d;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::optional<bool> weighted;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!d) {
      if (!line.starts_with("d="))
        throw FormatError("line " + std::to_string(line_no) + ": expected header 'd=<int>'");
      d = parse_number<int>(trim(line.substr(2)), line_no);
      if (*d < 0) throw FormatError("negative vertex count");
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != 2 && fields.size() != 3)
      throw FormatError("line " + std::to_string(line_no) + ": expected tail,head[,weight]");
    const bool has_weight = fields.size() == 3;
    if (weighted && *weighted != has_weight)
      throw FormatError("line " + std::to_string(line_no) + ": weights must be on all rows or none");
    weighted = has_weight;
    edges.push_back({parse_number<int>(fields[0], line_no), parse_number<int>(fields[1], line_no)});
    if (has_weight) weights.push_back(parse_number<double>(fields[2], line_no));
  }
  if (!d) throw FormatError("missing header 'd=<int>'");

  // Keep weights attached to their edges through the sort in Dag's constructor.
  std::vector<std::size_t> idx(edges.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> sorted_edges;
  std::vector<double> sorted_weights;
  for (std::size_t k : idx) {
    sorted_edges.push_back(edges[k]);
    if (weighted.value_or(false)) sorted_weights.push_back(weights[k]);
  }

  EdgeListFile out;
  try {
    out.graph = Dag(*d, std::move(sorted_edges));
    if (weighted.value_or(false)) {
      WeightedDag check(out.graph, sorted_weights);
      out.weights = std::move(sorted_weights);
    }
  } catch (const GraphError& e) {
    throw FormatError(e.what());
  }
  return out;
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Dag& g) {
  out << "d=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.tail << ',' << e.head << '\n';
}

void write_edge_list(std::ostream& out, const WeightedDag& g) {
  out << "d=" << g.num_vertices() << '\n';
  const auto edges = g.graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k)
    out << edges[k].tail << ',' << edges[k].head << ',' << format_real(g.weights()[k]) << '\n';
}

Eigen::MatrixXd parse_matrix_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (rows == 0) cols = fields.size();
    if (fields.size() != cols)
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                        " columns");
    for (auto f : fields) values.push_back(parse_number<double>(f, line_no));
    ++rows;
  }
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = values[i * cols + j];
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace lrdag

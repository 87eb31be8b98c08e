#include "binlsa/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "binlsa/errors.hpp"

namespace binlsa {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw InputError("trailing junk in numeric cell: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw InputError("not a number: '" + s + "'");
  } catch (const std::out_of_range&) {
    throw InputError("number out of range: '" + s + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  // %.17g always round-trips; retry shorter widths first so whole numbers
  // stay short ("4", not "4.0000000000000000").
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << content;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string termdoc_to_csv(const TermDocMatrix& m) {
  std::string out = "group";
  for (const auto& label : m.doc_labels) out += "," + label;
  out += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += m.term_labels[i];
    for (std::size_t j = 0; j < m.cols(); ++j)
      out += "," + format_double(m.values(i, j));
    out += "\n";
  }
  return out;
}

TermDocMatrix termdoc_from_csv(const std::string& csv) {
  const auto lines = split_lines(csv);
  if (lines.size() < 2) throw InputError("matrix CSV needs a header and rows");

  TermDocMatrix m;
  const auto header = split_csv_line(lines[0]);
  for (std::size_t j = 1; j < header.size(); ++j) m.doc_labels.push_back(header[j]);

  const std::size_t cols = m.doc_labels.size();
  m.values = Matrix(lines.size() - 1, cols);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() != cols + 1)
      throw InputError("matrix CSV row " + std::to_string(i) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(cols + 1));
    m.term_labels.push_back(cells[0]);
    for (std::size_t j = 0; j < cols; ++j)
      m.values(i - 1, j) = parse_double(cells[j + 1]);
  }
  return m;
}

std::string blocks_to_csv(const std::vector<BasicBlock>& blocks) {
  std::string out = "block_id,start_address,end_address,instructions,terminator\n";
  char buf[96];
  for (const auto& b : blocks) {
    std::snprintf(buf, sizeof(buf), "%zu,0x%llx,0x%llx,%zu,%s\n", b.block_id,
                  static_cast<unsigned long long>(b.start_address),
                  static_cast<unsigned long long>(b.end_address),
                  b.instructions.size(), terminator_name(b.terminator));
    out += buf;
  }
  return out;
}

std::string adjacency_to_csv(const ControlFlowGraph& g) {
  std::string out;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (j) out += ",";
    out += std::to_string(g.node_ids[j]);
  }
  out += "\n";
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      if (j) out += ",";
      out += g.adjacency(i, j) != 0.0 ? "1" : "0";
    }
    out += "\n";
  }
  return out;
}

EdgeList edges_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
    throw SchemaViolation("edges");
  EdgeList edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned())
      throw SchemaViolation("edges[]");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return edges;
}

std::string factor_to_csv(const Matrix& basis, const std::vector<std::string>& labels) {
  std::string out = "label";
  for (std::size_t j = 0; j < basis.cols(); ++j) out += ",t" + std::to_string(j);
  out += "\n";
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    out += labels.size() == basis.rows() ? labels[i] : std::to_string(i);
    for (std::size_t j = 0; j < basis.cols(); ++j)
      out += "," + format_double(basis(i, j));
    out += "\n";
  }
  return out;
}

std::string sigma_to_csv(const std::vector<double>& sigma) {
  std::string out = "topic,weight\n";
  for (std::size_t i = 0; i < sigma.size(); ++i)
    out += std::to_string(i) + "," + format_double(sigma[i]) + "\n";
  return out;
}

std::vector<double> sigma_from_csv(const std::string& csv) {
  const auto lines = split_lines(csv);
  std::vector<double> sigma;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() != 2) throw InputError("bad sigma CSV row: " + lines[i]);
    sigma.push_back(parse_double(cells[1]));
  }
  return sigma;
}

Matrix factor_from_csv(const std::string& csv, std::vector<std::string>* labels) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw InputError("factor CSV is empty");
  const std::size_t cols = split_csv_line(lines[0]).size() - 1;
  Matrix basis(lines.size() - 1, cols);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() != cols + 1)
      throw InputError("bad factor CSV row: " + lines[i]);
    if (labels) labels->push_back(cells[0]);
    for (std::size_t j = 0; j < cols; ++j) basis(i - 1, j) = parse_double(cells[j + 1]);
  }
  return basis;
}

nlohmann::json factor_manifest(const SvdFactors& f, std::size_t input_rows,
                               std::size_t input_cols, const SvdOptions& opts) {
  return nlohmann::json{
      {"rows", input_rows},
      {"cols", input_cols},
      {"rank", f.rank()},
      {"tolerance", opts.tolerance},
      {"max_sweeps", opts.max_sweeps},
      {"sign_convention",
       "largest-magnitude entry of each U column is non-negative; ties break "
       "to the lowest row index"},
  };
}

std::string topic_space_to_csv(const TopicSpace& space) {
  static const char* axis[] = {"x", "y", "z"};
  std::string out = "label";
  for (std::size_t d = 0; d < space.dims.size(); ++d)
    out += "," + (d < 3 ? std::string(axis[d]) : "c" + std::to_string(d));
  out += "\n";
  for (const auto& pt : space.points) {
    out += pt.label;
    for (double c : pt.coords) out += "," + format_double(c);
    out += "\n";
  }
  return out;
}

TopicSpace topic_space_from_csv(const std::string& csv) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw InputError("topic space CSV is empty");
  TopicSpace space;
  const std::size_t dims = split_csv_line(lines[0]).size() - 1;
  for (std::size_t d = 0; d < dims; ++d) space.dims.push_back(d);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() != dims + 1)
      throw InputError("bad topic space CSV row: " + lines[i]);
    TopicPoint pt;
    pt.label = cells[0];
    for (std::size_t d = 0; d < dims; ++d) pt.coords.push_back(parse_double(cells[d + 1]));
    space.points.push_back(std::move(pt));
  }
  return space;
}

nlohmann::json cfg_report_to_json(const CfgTopicReport& report) {
  return nlohmann::json{
      {"n_nodes", report.n_nodes},
      {"weights", report.weights},
      {"low_weight_count", report.low_weight_count},
      {"low_weight_fraction", report.low_weight_fraction},
      {"threshold", report.threshold},
  };
}

}  // namespace binlsa

#include "pwr/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pwr/errors.hpp"

namespace pwr {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (end == text.size()) {
      if (!line.empty()) lines.push_back({number, line});
      break;
    }
    lines.push_back({number, line});
    start = end + 1;
    ++number;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(std::string_view text, long long& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, out);
  return ec == std::errc() && ptr == last;
}

struct Field {
  std::string text;
  std::size_t column; // 1-based character position where the field starts
};

std::vector<Field> split_csv(const Line& line) {
  std::vector<Field> fields;
  const std::string_view s = line.text;
  std::size_t i = 0;
  while (true) {
    Field field{{}, i + 1};
    if (i < s.size() && s[i] == '"') {
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            field.text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field.text += s[i++];
      }
      if (!closed) throw ParseError("unterminated quoted field", line.number, field.column);
      if (i < s.size() && s[i] != ',') {
        throw ParseError("unexpected character after closing quote", line.number, i + 1);
      }
    } else {
      while (i < s.size() && s[i] != ',') field.text += s[i++];
    }
    fields.push_back(std::move(field));
    if (i >= s.size()) break;
    ++i; // comma
  }
  return fields;
}

std::string csv_field(std::string_view text) {
  const bool needs_quotes = text.find_first_of(",\"") != std::string_view::npos ||
                            (!text.empty() && (std::isspace(static_cast<unsigned char>(text.front())) ||
                                               std::isspace(static_cast<unsigned char>(text.back()))));
  if (!needs_quotes) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Rethrows label/shape violations from the matrix constructor as positioned errors.
template <typename Build>
CitationMatrix build_matrix(Build&& build, std::size_t line) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

} // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Pajek

CitationMatrix read_pajek(std::string_view text, std::vector<std::string>* warnings) {
  enum class Section { none, vertices, arcs };
  Section section = Section::none;
  long long n = -1;
  std::vector<std::string> labels;
  std::vector<bool> declared;
  std::vector<CitationMatrix::Triplet> arcs;
  bool saw_arcs = false;
  std::size_t last_line = 1;

  for (const auto& line : split_lines(text)) {
    last_line = line.number;
    const std::string_view body = trim(line.text);
    if (body.empty() || body.front() == '%') continue;

    if (body.front() == '*') {
      const auto tokens = whitespace_tokens(body);
      const std::string keyword = lower(tokens.front());
      if (keyword == "*vertices") {
        if (n >= 0) throw ParseError("repeated *Vertices section", line.number);
        if (tokens.size() < 2 || !parse_int(tokens[1], n) || n < 0) {
          throw ParseError("*Vertices needs a non-negative vertex count", line.number);
        }
        labels.resize(static_cast<std::size_t>(n));
        declared.assign(static_cast<std::size_t>(n), false);
        section = Section::vertices;
      } else if (keyword == "*arcs") {
        if (n < 0) throw ParseError("*Arcs before *Vertices", line.number);
        section = Section::arcs;
        saw_arcs = true;
      } else if (keyword == "*edges") {
        throw ParseError("undirected *Edges sections are not supported", line.number);
      } else {
        throw ParseError("unsupported section '" + tokens.front() + "'", line.number);
      }
      continue;
    }

    switch (section) {
    case Section::none:
      throw ParseError("expected *Vertices", line.number);
    case Section::vertices: {
      const std::size_t space = body.find_first_of(" \t");
      long long id = 0;
      if (!parse_int(body.substr(0, space), id)) throw ParseError("vertex id must be an integer", line.number, 1);
      if (id < 1 || id > n) {
        throw ParseError("vertex id " + std::to_string(id) + " outside 1.." + std::to_string(n), line.number, 1);
      }
      const auto slot = static_cast<std::size_t>(id - 1);
      if (declared[slot]) throw ParseError("duplicate vertex id " + std::to_string(id), line.number, 1);
      declared[slot] = true;
      std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(body.substr(space));
      if (rest.empty()) {
        labels[slot] = std::to_string(id);
      } else if (rest.front() == '"') {
        const std::size_t close = rest.rfind('"');
        if (close == 0) throw ParseError("unterminated vertex label", line.number);
        labels[slot] = std::string(rest.substr(1, close - 1));
      } else {
        labels[slot] = std::string(rest.substr(0, rest.find_first_of(" \t")));
      }
      break;
    }
    case Section::arcs: {
      const auto tokens = whitespace_tokens(body);
      if (tokens.size() < 2 || tokens.size() > 3) {
        throw ParseError("arc line must read 'source target [weight]'", line.number);
      }
      long long src = 0;
      long long dst = 0;
      if (!parse_int(tokens[0], src) || !parse_int(tokens[1], dst)) {
        throw ParseError("arc endpoints must be integers", line.number);
      }
      if (src < 1 || src > n || dst < 1 || dst > n) {
        throw ParseError("arc endpoint outside 1.." + std::to_string(n), line.number);
      }
      double weight = 1.0;
      if (tokens.size() == 3 && !parse_double(tokens[2], weight)) {
        throw ParseError("arc weight '" + tokens[2] + "' is not a number", line.number);
      }
      if (weight < 0.0) throw ParseError("negative arc weight", line.number);
      arcs.emplace_back(static_cast<Index>(src - 1), static_cast<Index>(dst - 1), weight);
      break;
    }
    }
  }

  if (n < 0) throw ParseError("missing *Vertices section", last_line);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!declared[i]) labels[i] = std::to_string(i + 1);
  if (!saw_arcs && warnings) warnings->push_back("no *Arcs section; matrix is all zero");
  return build_matrix([&] { return CitationMatrix::from_triplets(std::move(labels), arcs); }, last_line);
}

std::string write_pajek(const CitationMatrix& z) {
  std::string out = "*Vertices " + std::to_string(z.size()) + "\n";
  for (Index i = 0; i < z.size(); ++i) out += std::to_string(i + 1) + " \"" + z.label(i) + "\"\n";
  out += "*Arcs\n";
  for (const auto& t : z.nonzeros()) {
    out += std::to_string(t.row() + 1) + " " + std::to_string(t.col() + 1) + " " + format_number(t.value()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix CSV

CitationMatrix read_csv_matrix(std::string_view text) {
  std::vector<Line> lines;
  for (const auto& line : split_lines(text))
    if (!is_blank(line.text)) lines.push_back(line);
  if (lines.empty()) throw ParseError("empty matrix file", 1);

  const auto header = split_csv(lines.front());
  if (!trim(header.front().text).empty()) {
    throw ParseError("first header cell must be empty", lines.front().number, 1);
  }
  std::vector<std::string> labels;
  for (std::size_t c = 1; c < header.size(); ++c) labels.push_back(header[c].text);
  const std::size_t n = labels.size();
  if (lines.size() - 1 != n) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size() - 1),
                     lines.back().number);
  }

  CitationMatrix::Dense dense(static_cast<Index>(n), static_cast<Index>(n));
  std::vector<CitationMatrix::Triplet> triplets;
  const bool use_dense = static_cast<Index>(n) <= CitationMatrix::kDenseLimit;
  for (std::size_t r = 0; r < n; ++r) {
    const Line& line = lines[r + 1];
    const auto fields = split_csv(line);
    if (fields.size() != n + 1) {
      throw ParseError("expected " + std::to_string(n + 1) + " cells, found " + std::to_string(fields.size()),
                       line.number);
    }
    if (fields.front().text != labels[r]) {
      throw ParseError("row label '" + fields.front().text + "' does not match column label '" + labels[r] + "'",
                       line.number, 1);
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Field& f = fields[c + 1];
      double value = 0.0;
      if (!parse_double(f.text, value)) throw ParseError("'" + f.text + "' is not a number", line.number, f.column);
      if (value < 0.0) throw ParseError("negative citation count", line.number, f.column);
      if (use_dense) {
        dense(static_cast<Index>(r), static_cast<Index>(c)) = value;
      } else if (value != 0.0) {
        triplets.emplace_back(static_cast<Index>(r), static_cast<Index>(c), value);
      }
    }
  }
  return build_matrix(
      [&] {
        if (use_dense) return CitationMatrix(std::move(labels), std::move(dense));
        return CitationMatrix::from_triplets(std::move(labels), triplets);
      },
      lines.front().number);
}

std::string write_csv_matrix(const CitationMatrix& z) {
  std::string out;
  for (const auto& label : z.labels()) out += "," + csv_field(label);
  out += "\n";
  const CitationMatrix::Dense d = z.to_dense();
  for (Index i = 0; i < z.size(); ++i) {
    out += csv_field(z.label(i));
    for (Index j = 0; j < z.size(); ++j) out += "," + format_number(d(i, j));
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces

TraceTable trace_table(const PwrTrace& trace) {
  TraceTable table;
  table.reserve(trace.labels.size() * static_cast<std::size_t>(trace.k_max()));
  for (Index i = 0; i < trace.size(); ++i) {
    for (int k = 1; k <= trace.k_max(); ++k) {
      table.push_back({trace.labels[static_cast<std::size_t>(i)], k, trace.power_at(k)[i],
                       trace.weakness_at(k)[i], trace.ratio_at(k)[i]});
    }
  }
  return table;
}

std::string write_trace_csv(const PwrTrace& trace) {
  std::string out = "label,k,power,weakness,ratio\n";
  for (const auto& row : trace_table(trace)) {
    out += csv_field(row.label) + "," + std::to_string(row.k) + "," + format_number(row.power) + "," +
           format_number(row.weakness) + "," + format_number(row.ratio) + "\n";
  }
  return out;
}

TraceTable read_trace_csv(std::string_view text) {
  std::vector<Line> lines;
  for (const auto& line : split_lines(text)) {
    const auto body = trim(line.text);
    if (!body.empty() && body.front() != '#') lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty trace file", 1);
  const auto header = split_csv(lines.front());
  const std::array<const char*, 5> expected{"label", "k", "power", "weakness", "ratio"};
  if (header.size() != expected.size()) throw ParseError("trace header must be label,k,power,weakness,ratio", lines.front().number);
  for (std::size_t c = 0; c < expected.size(); ++c) {
    if (header[c].text != expected[c]) {
      throw ParseError("trace header must be label,k,power,weakness,ratio", lines.front().number, header[c].column);
    }
  }

  TraceTable table;
  std::set<std::string> finished;
  int k_max = -1;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_csv(lines[r]);
    if (fields.size() != 5) throw ParseError("expected 5 cells", lines[r].number);
    TraceRow row;
    row.label = fields[0].text;
    long long k = 0;
    if (!parse_int(fields[1].text, k) || k < 1) throw ParseError("k must be a positive integer", lines[r].number, fields[1].column);
    row.k = static_cast<int>(k);
    double* targets[] = {&row.power, &row.weakness, &row.ratio};
    for (std::size_t c = 0; c < 3; ++c) {
      if (!parse_double(fields[c + 2].text, *targets[c])) {
        throw ParseError("'" + fields[c + 2].text + "' is not a number", lines[r].number, fields[c + 2].column);
      }
    }

    const bool continues = !table.empty() && table.back().label == row.label;
    const int expected_k = continues ? table.back().k + 1 : 1;
    if (row.k != expected_k) {
      throw ParseError("expected k=" + std::to_string(expected_k) + " for '" + row.label + "'", lines[r].number,
                       fields[1].column);
    }
    if (!continues) {
      if (!table.empty()) {
        if (k_max < 0) k_max = table.back().k;
        if (table.back().k != k_max) throw ParseError("node '" + table.back().label + "' has a short trace", lines[r].number);
        finished.insert(table.back().label);
      }
      if (finished.count(row.label)) throw ParseError("node '" + row.label + "' appears twice", lines[r].number);
    }
    table.push_back(std::move(row));
  }
  if (!table.empty() && k_max >= 0 && table.back().k != k_max) {
    throw ParseError("node '" + table.back().label + "' has a short trace", lines.back().number);
  }
  return table;
}

std::vector<double> ratio_series(const TraceTable& table, std::string_view label) {
  std::vector<double> out;
  for (const auto& row : table)
    if (row.label == label) out.push_back(row.ratio);
  if (out.empty()) throw std::invalid_argument("no trace rows for '" + std::string(label) + "'");
  return out;
}

// ---------------------------------------------------------------------------
// Metrics, partitions, label lists

MetricVector read_metric_csv(std::string_view text, std::string name) {
  std::vector<Line> lines;
  for (const auto& line : split_lines(text))
    if (!is_blank(line.text)) lines.push_back(line);
  if (lines.empty()) throw ParseError("empty metric file", 1);
  if (split_csv(lines.front()).size() != 2) throw ParseError("metric header must have two columns", lines.front().number);

  MetricVector m;
  m.name = std::move(name);
  std::vector<double> values;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_csv(lines[r]);
    if (fields.size() != 2) throw ParseError("expected 'label,value'", lines[r].number);
    if (fields[0].text.empty()) throw ParseError("empty label", lines[r].number, 1);
    if (!seen.insert(fields[0].text).second) {
      throw ParseError("duplicate label '" + fields[0].text + "'", lines[r].number, 1);
    }
    double value = 0.0;
    if (!parse_double(fields[1].text, value)) {
      throw ParseError("'" + fields[1].text + "' is not a number", lines[r].number, fields[1].column);
    }
    m.labels.push_back(fields[0].text);
    values.push_back(value);
  }
  m.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
  return m;
}

std::string write_metric_csv(const MetricVector& m) {
  std::string out = "label," + csv_field(m.name) + "\n";
  for (Index i = 0; i < m.size(); ++i) {
    out += csv_field(m.labels[static_cast<std::size_t>(i)]) + "," + format_number(m.values[i]) + "\n";
  }
  return out;
}

std::string write_partition_csv(const std::vector<std::string>& labels, const Partition& p) {
  if (labels.size() != p.community_of.size()) throw std::invalid_argument("partition does not match labels");
  std::string out = "label,community\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += csv_field(labels[i]) + "," + std::to_string(p.community_of[i]) + "\n";
  }
  return out;
}

std::vector<std::string> read_label_list(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& line : split_lines(text)) {
    const auto body = trim(line.text);
    if (body.empty() || body.front() == '#') continue;
    out.emplace_back(body);
  }
  return out;
}

std::string write_label_list(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& label : labels) out += label + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files

MatrixFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".net") return MatrixFormat::pajek;
  if (ext == ".csv") return MatrixFormat::csv;
  throw std::invalid_argument("cannot infer matrix format from '" + path.string() + "'; use --format");
}

MatrixFormat parse_format_name(std::string_view name) {
  const std::string n = lower(name);
  if (n == "pajek" || n == "net") return MatrixFormat::pajek;
  if (n == "csv") return MatrixFormat::csv;
  throw std::invalid_argument("unknown matrix format '" + std::string(name) + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

CitationMatrix read_matrix(std::string_view text, MatrixFormat format, std::vector<std::string>* warnings) {
  return format == MatrixFormat::pajek ? read_pajek(text, warnings) : read_csv_matrix(text);
}

std::string write_matrix(const CitationMatrix& z, MatrixFormat format) {
  return format == MatrixFormat::pajek ? write_pajek(z) : write_csv_matrix(z);
}

} // namespace pwr

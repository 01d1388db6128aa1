#ifndef PWR_IO_HPP
#define PWR_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwr/citation_matrix.hpp"
#include "pwr/comparators.hpp"
#include "pwr/decomposition.hpp"
#include "pwr/engine.hpp"

namespace pwr {

// All readers throw ParseError with a 1-based line (and column where it
// applies) on malformed input. LF and CRLF are accepted; LF is written.

/// Pajek network with arcs pointing from cited to citing journal:
/// arc `src dst w` adds w to z(src-1, dst-1). Repeated arcs accumulate.
/// A missing `*Arcs` section yields a zero matrix and a warning.
CitationMatrix read_pajek(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_pajek(const CitationMatrix& z);

/// Header row: empty cell then citing labels; each row: cited label then
/// one number per column. Row and column labels must agree in order.
CitationMatrix read_csv_matrix(std::string_view text);
std::string write_csv_matrix(const CitationMatrix& z);

struct TraceRow {
  std::string label;
  int k = 0;
  double power = 0.0;
  double weakness = 0.0;
  double ratio = 0.0;
};

/// One row per node per k, nodes in label order, k ascending.
using TraceTable = std::vector<TraceRow>;

TraceTable trace_table(const PwrTrace& trace);

/// `label,k,power,weakness,ratio` with shortest round-trip number formatting.
std::string write_trace_csv(const PwrTrace& trace);

/// Lines starting with '#' are skipped. Checks one row per node per k and
/// contiguous k from 1.
TraceTable read_trace_csv(std::string_view text);

/// Ratio series r(1..k_max) of one node.
std::vector<double> ratio_series(const TraceTable& table, std::string_view label);

/// Two-column `label,value` file with a header row.
MetricVector read_metric_csv(std::string_view text, std::string name);
std::string write_metric_csv(const MetricVector& m);

/// `label,community`.
std::string write_partition_csv(const std::vector<std::string>& labels, const Partition& p);

/// One label per line; blank lines and '#' comments skipped.
std::vector<std::string> read_label_list(std::string_view text);
std::string write_label_list(const std::vector<std::string>& labels);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

enum class MatrixFormat { pajek, csv };

/// `.net` is Pajek, `.csv` is CSV; anything else throws std::invalid_argument.
MatrixFormat format_from_path(const std::filesystem::path& path);
MatrixFormat parse_format_name(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

CitationMatrix read_matrix(std::string_view text, MatrixFormat format,
                           std::vector<std::string>* warnings = nullptr);
std::string write_matrix(const CitationMatrix& z, MatrixFormat format);

} // namespace pwr

#endif // PWR_IO_HPP

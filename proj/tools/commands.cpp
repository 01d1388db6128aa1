#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "pwr/comparators.hpp"
#include "pwr/decomposition.hpp"
#include "pwr/errors.hpp"
#include "pwr/graph.hpp"
#include "pwr/io.hpp"
#include "pwr/plot.hpp"

namespace pwr::cli {

namespace {

/// A flag combination or result that the subcommand contract rules out.
class ContractViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

MatrixFormat input_format(const RunConfig& config) {
  return config.format ? parse_format_name(*config.format) : format_from_path(config.input);
}

CitationMatrix load_matrix(const RunConfig& config, std::ostream& err) {
  std::vector<std::string> warnings;
  CitationMatrix z = read_matrix(read_text_file(config.input), input_format(config), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return z;
}

void save_matrix(const CitationMatrix& z, const std::string& path) {
  write_text_file(path, write_matrix(z, format_from_path(path)));
}

std::string join_labels(const CitationMatrix& z, const std::vector<Index>& nodes) {
  std::string out;
  for (Index i : nodes) {
    if (!out.empty()) out += ", ";
    out += z.label(i);
  }
  return out;
}

void warn_dangling(const CitationMatrix& z, const DanglingNodes& d, std::ostream& err) {
  if (!d.cited_only.empty()) {
    err << "warning: cited but not citing (ratios inflated by a near-zero weakness): "
        << join_labels(z, d.cited_only) << "\n";
  }
  if (!d.citing_only.empty()) err << "warning: citing but never cited: " << join_labels(z, d.citing_only) << "\n";
  if (!d.isolated.empty()) err << "warning: neither cited nor citing: " << join_labels(z, d.isolated) << "\n";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void add_input(CLI::App* sub, RunConfig& config) {
  sub->add_option("-i,--input", config.input, "Citation matrix (.net Pajek or .csv)")->required();
  sub->add_option("--format", config.format, "Input format: pajek|csv (default: by extension)")
      ->check(CLI::IsMember({"pajek", "csv"}));
}

void add_pwr_options(CLI::App* sub, RunConfig& config) {
  static const std::map<std::string, SelfCitations> self_map{{"include", SelfCitations::include},
                                                              {"exclude", SelfCitations::exclude}};
  static const std::map<std::string, ZeroDivision> zero_map{
      {"zero", ZeroDivision::zero}, {"inf", ZeroDivision::infinite}, {"error", ZeroDivision::error}};
  sub->add_option("--k-max", config.pwr.k_max, "Number of iterations")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tol", config.pwr.tol, "Convergence threshold on the max ratio change")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--self-citations", config.pwr.self_citations, "include|exclude")
      ->transform(CLI::CheckedTransformer(self_map));
  sub->add_option("--zero-div", config.pwr.zero_division, "Ratio when weakness is zero: zero|inf|error")
      ->transform(CLI::CheckedTransformer(zero_map));
  sub->add_flag("--no-normalize{false}", config.pwr.normalize_each_iteration,
                "Multiply raw vectors instead of rescaling each iteration");
}

} // namespace

int cmd_pwr(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CitationMatrix z = load_matrix(config, err);
  const PwrTrace trace = pwr_trace(z, config.pwr);
  warn_dangling(z, trace.dangling, err);

  const std::string csv = write_trace_csv(trace);
  if (config.output) {
    write_text_file(*config.output, csv);
  } else {
    out << csv;
  }
  if (config.plot) write_text_file(*config.plot, render_convergence_svg(trace));

  out << "# k_max=" << trace.k_max() << " tol=" << format_number(config.pwr.tol) << "\n";
  if (trace.degenerate) out << "# degenerate=true (some iterate vanished)\n";
  if (trace.k_max() >= 2) {
    const ConvergenceReport report = convergence_report(trace, config.pwr.tol);
    out << "# converged=" << (report.converged ? "true" : "false");
    if (report.k_converged) out << " k_converged=" << *report.k_converged;
    out << "\n";
    for (int k = 2; k <= report.k_max; ++k) out << "# delta k=" << k << " " << format_number(report.delta_at(k)) << "\n";
    if (!report.flagged.empty()) out << "# zero-division nodes: " << join_labels(z, report.flagged) << "\n";
    out << "# " << report.homogeneity_hint() << "\n";
  } else {
    out << "# converged=false (k_max < 2)\n";
  }
  return kSuccess;
}

int cmd_scc(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CitationMatrix z = load_matrix(config, err);
  const SccResult scc = strongly_connected_components(z);
  out << "components=" << scc.components.size() << "\n";
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    const auto& comp = scc.components[c];
    out << "component " << c << " size=" << comp.size() << ":";
    for (const auto& label : comp.labels(z)) out << " \"" << label << "\"";
    out << "\n";
  }
  if (config.largest) {
    if (!config.output) throw std::invalid_argument("--largest needs --output");
    const CitationMatrix largest = largest_strong_component(z);
    save_matrix(largest, *config.output);
    out << "largest component (" << largest.size() << " nodes) written to " << *config.output << "\n";
  }
  return kSuccess;
}

int cmd_subset(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CitationMatrix z = load_matrix(config, err);
  NodeSet nodes = citing_threshold_subset(z, config.target, config.min_count);
  if (config.union_with) {
    const auto labels = read_label_list(read_text_file(*config.union_with));
    nodes = union_subset(z, nodes, NodeSet::from_labels(z, labels));
  }
  if (nodes.empty()) {
    throw ContractViolation("no journal cites '" + config.target + "' at least " + format_number(config.min_count) +
                            " times; the subset is empty");
  }
  const CitationMatrix sub = extract_subgraph(z, nodes);
  out << "selected=" << nodes.size() << "\n" << write_label_list(sub.labels());
  if (config.output) save_matrix(sub, *config.output);
  return kSuccess;
}

int cmd_decompose(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CitationMatrix z = load_matrix(config, err);
  const DiagonalPolicy diagonal =
      config.cosine_diagonal == "exclude" ? DiagonalPolicy::exclude : DiagonalPolicy::include;
  const WeightedGraph g = threshold_graph(citing_cosine_matrix(z, diagonal), config.cosine_threshold);
  if (!(g.total_weight() > 0.0)) {
    throw ContractViolation("no cosine exceeds " + format_number(config.cosine_threshold) +
                            "; modularity is undefined on an empty graph");
  }
  const Partition p = louvain_partition(g, config.resolution);
  const std::string csv = write_partition_csv(z.labels(), p);
  if (config.output) {
    write_text_file(*config.output, csv);
  } else {
    out << csv;
  }
  out << "# communities=" << p.community_count() << " Q=" << format_number(p.q) << "\n";
  return kSuccess;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CitationMatrix z = load_matrix(config, err);
  std::vector<MetricVector> metrics;
  for (const auto& name : config.metrics) {
    if (name == "pwr") {
      const ConvergedPwr result = converged_pwr(z, config.pwr);
      err << "pwr: " << result.report.homogeneity_hint() << "\n";
      metrics.push_back({"pwr", z.labels(), result.ratio});
    } else if (name == "cf") {
      const CitationMatrix effective =
          config.pwr.self_citations == SelfCitations::exclude ? zero_diagonal(z) : z;
      metrics.push_back(citation_factor(effective, config.pwr.zero_division));
    } else if (name == "pagerank") {
      metrics.push_back(pagerank(z, PageRankOptions{config.damping}));
    } else if (name == "hits") {
      HitsResult h = hits(z);
      metrics.push_back(std::move(h.authorities));
      metrics.push_back(std::move(h.hubs));
    } else {
      throw std::invalid_argument("unknown metric '" + name + "' (expected pwr, cf, pagerank, hits)");
    }
  }
  for (const auto& spec : config.externals) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw std::invalid_argument("--external expects name=file.csv, got '" + spec + "'");
    }
    const MetricVector m = read_metric_csv(read_text_file(spec.substr(eq + 1)), spec.substr(0, eq));
    metrics.push_back(align_to(m, z.labels()));
  }
  if (metrics.empty()) throw std::invalid_argument("no metrics selected");

  std::string table = "label";
  for (const auto& m : metrics) table += "," + m.name;
  table += "\n";
  for (Index i = 0; i < z.size(); ++i) {
    table += z.label(i);
    for (const auto& m : metrics) table += "," + format_number(m.values[i]);
    table += "\n";
  }
  if (config.output) {
    write_text_file(*config.output, table);
  } else {
    out << table;
  }

  if (metrics.size() >= 2 && z.size() >= 2) {
    const ComparisonTable cmp = compare_rankings(metrics);
    for (std::size_t a = 0; a < metrics.size(); ++a) {
      for (std::size_t b = a + 1; b < metrics.size(); ++b) {
        const auto& c = cmp.pairs[a][b];
        out << "# " << c.x_name << " vs " << c.y_name << ": pearson=" << format_number(c.pearson)
            << " spearman=" << format_number(c.spearman) << " n=" << c.n << "\n";
      }
    }
  }
  return kSuccess;
}

int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.output) throw std::invalid_argument("convert needs --output");
  const MatrixFormat from = input_format(config);
  const MatrixFormat to = config.to_format ? parse_format_name(*config.to_format) : format_from_path(*config.output);
  if (from == to && !config.force) {
    throw ContractViolation("input and output formats are the same; pass --force to rewrite anyway");
  }
  const CitationMatrix z = load_matrix(config, err);
  write_text_file(*config.output, write_matrix(z, to));
  out << "wrote " << z.size() << " nodes to " << *config.output << "\n";
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Power-weakness ratio and companion journal indicators over citation matrices", "pwr"};
  app.require_subcommand(1);

  auto* pwr = app.add_subcommand("pwr", "Iterate power, weakness and their ratio for k = 1..k_max");
  add_input(pwr, config);
  add_pwr_options(pwr, config);
  pwr->add_option("-o,--output", config.output, "Trace CSV (default: standard output)");
  pwr->add_option("--plot", config.plot, "Write a convergence chart (SVG)");

  auto* scc = app.add_subcommand("scc", "List strong components");
  add_input(scc, config);
  scc->add_flag("--largest", config.largest, "Write the largest strong component to --output");
  scc->add_option("-o,--output", config.output, "Matrix file for --largest");

  auto* subset = app.add_subcommand("subset", "Journals citing a target at least --min times");
  add_input(subset, config);
  subset->add_option("--target", config.target, "Label of the cited journal")->required();
  subset->add_option("--min", config.min_count, "Minimum number of citations to the target")->capture_default_str();
  subset->add_option("--union-with", config.union_with, "File of additional labels, one per line");
  subset->add_option("-o,--output", config.output, "Matrix file for the induced subgraph");

  auto* decompose = app.add_subcommand("decompose", "Louvain communities of the citing-cosine graph");
  add_input(decompose, config);
  decompose->add_option("--cosine-threshold", config.cosine_threshold, "Keep edges with cosine above this")
      ->capture_default_str();
  decompose->add_option("--resolution", config.resolution, "Modularity resolution")->capture_default_str();
  decompose->add_option("--cosine-diagonal", config.cosine_diagonal, "include|exclude self-citations")
      ->check(CLI::IsMember({"include", "exclude"}))
      ->capture_default_str();
  decompose->add_option("-o,--output", config.output, "Partition CSV (default: standard output)");

  auto* compare = app.add_subcommand("compare", "Tabulate metrics and their pairwise correlations");
  add_input(compare, config);
  add_pwr_options(compare, config);
  std::string metric_list = "pwr";
  compare->add_option("--metrics", metric_list, "Comma-separated: pwr,cf,pagerank,hits")->capture_default_str();
  compare->add_option("--external", config.externals, "name=file.csv with label,value rows (repeatable)");
  compare->add_option("--damping", config.damping, "PageRank damping")->capture_default_str();
  compare->add_option("-o,--output", config.output, "Metric table CSV (default: standard output)");

  auto* convert = app.add_subcommand("convert", "Convert between Pajek and CSV matrices");
  add_input(convert, config);
  convert->add_option("-o,--output", config.output, "Output matrix file")->required();
  convert->add_option("--to", config.to_format, "Output format: pajek|csv (default: by extension)")
      ->check(CLI::IsMember({"pajek", "csv"}));
  convert->add_flag("--force", config.force, "Allow identical input and output formats");

  std::vector<const char*> argv{"pwr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  config.metrics = split_list(metric_list);

  try {
    if (config.subcommand == "pwr") return cmd_pwr(config, out, err);
    if (config.subcommand == "scc") return cmd_scc(config, out, err);
    if (config.subcommand == "subset") return cmd_subset(config, out, err);
    if (config.subcommand == "decompose") return cmd_decompose(config, out, err);
    if (config.subcommand == "compare") return cmd_compare(config, out, err);
    if (config.subcommand == "convert") return cmd_convert(config, out, err);
  } catch (const ZeroDivisionError& e) {
    err << "error: " << e.what() << "\n";
    return kContractViolation;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kContractViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace pwr::cli

#ifndef PWR_ERRORS_HPP
#define PWR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace pwr {

/// Malformed input text. Line and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Raised by the `error` zero-division policy when some weakness entry is zero.
class ZeroDivisionError : public std::domain_error {
public:
  ZeroDivisionError(std::string label, int k)
      : std::domain_error("zero weakness for node '" + label + "' at k=" + std::to_string(k)),
        label_(std::move(label)), k_(k) {}

  const std::string& label() const noexcept { return label_; }
  int k() const noexcept { return k_; }

private:
  std::string label_;
  int k_;
};

/// An iterative method ran out of iterations. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& message, Eigen::VectorXd last_iterate, int iterations)
      : std::runtime_error(message), last_iterate_(std::move(last_iterate)),
        iterations_(iterations) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  int iterations() const noexcept { return iterations_; }

private:
  Eigen::VectorXd last_iterate_;
  int iterations_;
};

/// Two labelled collections that were required to share a node set do not.
class LabelMismatchError : public std::invalid_argument {
public:
  LabelMismatchError(const std::string& context, std::vector<std::string> unmatched)
      : std::invalid_argument(format(context, unmatched)), unmatched_(std::move(unmatched)) {}

  const std::vector<std::string>& unmatched() const noexcept { return unmatched_; }

private:
  static std::string format(const std::string& context, const std::vector<std::string>& labels) {
    std::string out = context + ": unmatched labels:";
    for (const auto& label : labels) out += " '" + label + "'";
    return out;
  }

  std::vector<std::string> unmatched_;
};

} // namespace pwr

#endif // PWR_ERRORS_HPP

#ifndef PWR_TESTS_FIXTURES_HPP
#define PWR_TESTS_FIXTURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pwr/citation_matrix.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return PWR_TEST_DATA_DIR; }

// JASIST+ set, 2013 citation window. Rows cited, columns citing.
inline const std::vector<std::string>& jasist_labels() {
  static const std::vector<std::string> labels{"INFORM PROCESS MANAG", "JASIST",  "J INF SCI",  "SCIENTOMETRICS",
                                               "INFORM RES",           "J DOC",   "J INFORMETR"};
  return labels;
}

enum Journal : Eigen::Index { IPM = 0, JASIST = 1, JIS = 2, SCIENTOMETRICS = 3, INFORM_RES = 4, JDOC = 5, JINFORMETR = 6 };

inline pwr::CitationMatrix jasist_plus() {
  Eigen::MatrixXd z(7, 7);
  z << 132, 165, 49, 86, 68, 46, 23,     //
      120, 756, 107, 495, 189, 139, 319, //
      12, 66, 89, 72, 26, 26, 30,        //
      48, 320, 34, 1542, 13, 25, 552,    //
      14, 43, 29, 8, 93, 39, 4,          //
      26, 96, 44, 69, 128, 108, 29,      //
      29, 91, 2, 269, 4, 3, 302;
  return pwr::CitationMatrix(jasist_labels(), z);
}

// Published convergence table, re-ordered to the matrix row order above.
// Columns are k = 1..7.
inline Eigen::Matrix<double, 7, 7> published_ratios_with_self_citations() {
  Eigen::Matrix<double, 7, 7> r;
  r << 1.49, 1.72, 1.76, 1.76, 1.76, 1.76, 1.77, // INFORM PROCESS MANAG
      1.38, 1.48, 1.51, 1.53, 1.53, 1.53, 1.54,  // JASIST
      0.91, 1.19, 1.36, 1.43, 1.45, 1.46, 1.46,  // J INF SCI
      1.00, 0.98, 0.98, 0.98, 0.98, 0.98, 0.97,  // SCIENTOMETRICS
      0.44, 0.37, 0.39, 0.40, 0.41, 0.41, 0.41,  // INFORM RES
      1.30, 1.38, 1.52, 1.60, 1.63, 1.64, 1.64,  // J DOC
      0.56, 0.48, 0.47, 0.47, 0.47, 0.47, 0.47;  // J INFORMETR
  return r;
}

inline Eigen::Matrix<double, 7, 7> published_ratios_without_self_citations() {
  Eigen::Matrix<double, 7, 7> r;
  r << 1.76, 1.93, 1.75, 1.80, 1.78, 1.79, 1.79, // INFORM PROCESS MANAG
      1.75, 1.52, 1.61, 1.57, 1.59, 1.58, 1.58,  // JASIST
      0.88, 1.23, 1.23, 1.25, 1.25, 1.25, 1.25,  // J INF SCI
      0.99, 0.99, 0.98, 0.99, 0.98, 0.99, 0.98,  // SCIENTOMETRICS
      0.32, 0.43, 0.41, 0.42, 0.42, 0.42, 0.42,  // INFORM RES
      1.41, 1.46, 1.46, 1.48, 1.47, 1.48, 1.48,  // J DOC
      0.42, 0.49, 0.48, 0.48, 0.48, 0.48, 0.48;  // J INFORMETR
  return r;
}

inline std::vector<std::string> numbered_labels(Eigen::Index n, const std::string& prefix = "N") {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline pwr::CitationMatrix make(const Eigen::MatrixXd& m) {
  return pwr::CitationMatrix(numbered_labels(m.rows()), m);
}

/// Non-negative integer matrix with entries in [0, max_entry]; roughly
/// `zero_share` of entries are forced to zero.
inline Eigen::MatrixXd random_counts(std::mt19937& rng, Eigen::Index n, int max_entry, double zero_share = 0.0) {
  std::uniform_int_distribution<int> value(0, max_entry);
  std::bernoulli_distribution drop(zero_share);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = drop(rng) ? 0.0 : value(rng);
  return m;
}

/// Real-valued matrix with entries in [lo, hi].
inline Eigen::MatrixXd random_real(std::mt19937& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = value(rng);
  return m;
}

inline double relative_error(double got, double want) {
  const double scale = std::max({std::abs(got), std::abs(want), 1e-300});
  return std::abs(got - want) / scale;
}

template <typename A, typename B>
double max_relative_error(const Eigen::MatrixBase<A>& got, const Eigen::MatrixBase<B>& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.size(); ++i) worst = std::max(worst, relative_error(got(i), want(i)));
  return worst;
}

} // namespace fixtures

#endif // PWR_TESTS_FIXTURES_HPP

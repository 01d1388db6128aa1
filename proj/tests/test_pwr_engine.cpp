#include <doctest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "pwr/engine.hpp"
#include "pwr/errors.hpp"
#include "pwr/graph.hpp"

using namespace pwr;
using fixtures::make;
using fixtures::max_relative_error;

namespace {

PwrOptions raw(int k_max) {
  PwrOptions o;
  o.k_max = k_max;
  o.normalize_each_iteration = false;
  return o;
}

PwrOptions with_k(int k_max) {
  PwrOptions o;
  o.k_max = k_max;
  return o;
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

Eigen::MatrixXd permute(const Eigen::MatrixXd& m, const std::vector<Index>& perm) {
  // Node i of the input becomes node perm[i] of the output.
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = m(i, j);
  return out;
}

/// Two dense 4-node blocks; the first cites the second heavily, little comes back.
Eigen::MatrixXd coupled_blocks(Eigen::MatrixXd& a, Eigen::MatrixXd& b) {
  a.resize(4, 4);
  b.resize(4, 4);
  a << 5, 20, 18, 16, 22, 4, 17, 19, 15, 21, 6, 20, 17, 16, 19, 5;
  b << 6, 12, 14, 11, 13, 5, 12, 15, 12, 14, 4, 13, 10, 13, 12, 6;
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(8, 8);
  z.topLeftCorner(4, 4) = a;
  z.bottomRightCorner(4, 4) = b;
  z.bottomLeftCorner(4, 4).setConstant(40.0); // block B cited by block A
  z.topRightCorner(4, 4).setConstant(1.0);
  return z;
}

} // namespace

TEST_SUITE("pwr_engine") {
  TEST_CASE("options are validated") {
    PwrOptions o;
    o.k_max = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = {};
    o.tol = 0.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    CHECK_THROWS_AS(pwr_trace(CitationMatrix{}, {}), std::invalid_argument);
  }

  TEST_CASE("power vector trace") {
    const CitationMatrix t3 = fixtures::jasist_plus();
    const auto p = power_vector_trace(t3, raw(2));
    CHECK(p.vectors[0] == row_sums(t3));
    CHECK(p.vectors[1] == row_sums(matrix_power_oracle(t3, 2)));

    const auto ones = power_vector_trace(make(Eigen::MatrixXd::Ones(3, 3)), with_k(5));
    for (const auto& v : ones.vectors) CHECK(max_relative_error(v, Eigen::VectorXd::Constant(3, 1.0 / 3)) < 1e-15);

    const auto flip = power_vector_trace(make(mat2(0, 2, 1, 0)), raw(2));
    CHECK(flip.vectors[1] == Eigen::Vector2d(2, 2));

    const auto zero = power_vector_trace(make(Eigen::MatrixXd::Zero(2, 2)), with_k(3));
    CHECK(zero.degenerate);
    for (const auto& v : zero.vectors) CHECK(v.isZero(0.0));
  }

  TEST_CASE("weakness vector trace") {
    const CitationMatrix t3 = fixtures::jasist_plus();
    const auto w = weakness_vector_trace(t3, raw(2));
    CHECK(w.vectors[0] == column_sums(t3));
    CHECK(w.vectors[1] == column_sums(matrix_power_oracle(t3, 2)));

    const auto flip = weakness_vector_trace(make(mat2(0, 2, 1, 0)), raw(3));
    CHECK(flip.vectors[2] == Eigen::Vector2d(2, 4));

    Eigen::MatrixXd sym(3, 3);
    sym << 1, 4, 2, 4, 0, 7, 2, 7, 3;
    const auto ps = power_vector_trace(make(sym), with_k(6));
    const auto ws = weakness_vector_trace(make(sym), with_k(6));
    for (int k = 0; k < 6; ++k) CHECK(ps.vectors[static_cast<std::size_t>(k)] == ws.vectors[static_cast<std::size_t>(k)]);
  }

  TEST_CASE("normalized iterates have unit sum and record their scaling") {
    std::mt19937 rng(3);
    const CitationMatrix z = make(fixtures::random_real(rng, 6, 0.0, 50.0));
    const PwrTrace t = pwr_trace(z, with_k(20));
    for (int k = 1; k <= 20; ++k) {
      CHECK(std::abs(t.power_at(k).sum() - 1.0) < 1e-12);
      CHECK(std::abs(t.weakness_at(k).sum() - 1.0) < 1e-12);
      CHECK((t.power_at(k).array() >= 0).all());
    }
    // Product of the scales recovers the raw grand total of Z^k / n.
    const PwrTrace r = pwr_trace(z, raw(4));
    double product = 1.0;
    for (int k = 1; k <= 4; ++k) product *= t.power_scale[static_cast<std::size_t>(k - 1)];
    CHECK(fixtures::relative_error(product * 6.0, r.power_at(4).sum()) < 1e-12);
  }

  TEST_CASE("JASIST+ ratios with self-citations") {
    const PwrTrace t = pwr_trace(fixtures::jasist_plus(), with_k(7));
    const auto published = fixtures::published_ratios_with_self_citations();
    for (int k = 1; k <= 7; ++k)
      for (Index i = 0; i < 7; ++i) {
        INFO("k=" << k << " node=" << t.labels[static_cast<std::size_t>(i)]);
        CHECK(std::abs(t.ratio_at(k)[i] - published(i, k - 1)) <= 0.01);
      }
    // k = 1 to two decimals.
    const Eigen::VectorXd r1 = t.ratio_at(1);
    const double expected[] = {1.49, 1.38, 0.91, 1.00, 0.44, 1.30, 0.56};
    for (Index i = 0; i < 7; ++i) CHECK(std::abs(r1[i] - expected[i]) < 0.005);
  }

  TEST_CASE("JASIST+ ratios without self-citations") {
    PwrOptions o = with_k(7);
    o.self_citations = SelfCitations::exclude;
    const PwrTrace t = pwr_trace(fixtures::jasist_plus(), o);
    const auto published = fixtures::published_ratios_without_self_citations();
    for (int k = 1; k <= 7; ++k)
      for (Index i = 0; i < 7; ++i) {
        INFO("k=" << k << " node=" << t.labels[static_cast<std::size_t>(i)]);
        CHECK(std::abs(t.ratio_at(k)[i] - published(i, k - 1)) <= 0.01);
      }
    const double expected_k7[] = {1.79, 1.58, 1.25, 0.98, 0.42, 1.48, 0.48};
    for (Index i = 0; i < 7; ++i) CHECK(std::abs(t.ratio_at(7)[i] - expected_k7[i]) < 0.005);
  }

  TEST_CASE("zero-division policies") {
    // Node 1 cites node 0 but is never cited; node 0 cites nothing.
    const CitationMatrix z = make(mat2(0, 5, 0, 0));
    PwrOptions o = with_k(1);
    const PwrTrace zero = pwr_trace(z, o);
    CHECK(zero.ratio_at(1)[0] == 0.0);
    CHECK(zero.undefined[0][0]);
    CHECK(zero.ratio_at(1)[1] == 0.0); // p = 0, w > 0
    CHECK_FALSE(zero.undefined[0][1]);
    REQUIRE(zero.dangling.cited_only.size() == 1);
    CHECK(zero.dangling.cited_only[0] == 0);
    REQUIRE(zero.dangling.citing_only.size() == 1);
    CHECK(zero.dangling.citing_only[0] == 1);

    o.zero_division = ZeroDivision::infinite;
    const PwrTrace inf = pwr_trace(z, o);
    CHECK(inf.ratio_at(1)[0] == kUndefinedRatio);
    CHECK(inf.undefined[0][0]);
    CHECK(std::isfinite(inf.ratio_at(1)[0]));

    o.zero_division = ZeroDivision::error;
    try {
      pwr_trace(z, o);
      FAIL("expected ZeroDivisionError");
    } catch (const ZeroDivisionError& e) {
      CHECK(e.label() == "N0");
      CHECK(e.k() == 1);
    }
  }

  TEST_CASE("converged_pwr") {
    PwrOptions o = with_k(7);
    o.tol = 0.01;
    o.self_citations = SelfCitations::exclude;
    const ConvergedPwr c = converged_pwr(fixtures::jasist_plus(), o);
    REQUIRE(c.report.converged);
    CHECK(*c.report.k_converged <= 7);
    CHECK(c.k == *c.report.k_converged);
    std::vector<Index> order(7);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return c.ratio[a] > c.ratio[b]; });
    using namespace fixtures;
    CHECK(order == std::vector<Index>{IPM, JASIST, JDOC, JIS, SCIENTOMETRICS, JINFORMETR, INFORM_RES});

    const ConvergedPwr flip = converged_pwr(make(mat2(0, 2, 1, 0)), with_k(20));
    CHECK_FALSE(flip.report.converged);
    CHECK_FALSE(flip.report.k_converged.has_value());
    CHECK(flip.k == 20);
    const PwrTrace flip_trace = pwr_trace(make(mat2(0, 2, 1, 0)), with_k(4));
    CHECK(flip_trace.ratio_at(1) == Eigen::Vector2d(2.0, 0.5));
    CHECK(flip_trace.ratio_at(2) == Eigen::Vector2d(1.0, 1.0));
    CHECK(flip_trace.ratio_at(3) == Eigen::Vector2d(2.0, 0.5));
    for (double d : flip.report.deltas) CHECK(d == doctest::Approx(1.0));

    const ConvergedPwr ones = converged_pwr(make(Eigen::MatrixXd::Ones(4, 4)), with_k(20));
    REQUIRE(ones.report.converged);
    CHECK(*ones.report.k_converged == 2);
    CHECK(ones.ratio == Eigen::VectorXd::Ones(4));

    const ConvergedPwr single = converged_pwr(make(Eigen::MatrixXd::Ones(2, 2)), with_k(1));
    CHECK_FALSE(single.report.converged);
    CHECK(single.k == 1);
  }

  TEST_CASE("convergence_report") {
    const PwrTrace constant = pwr_trace(make(Eigen::MatrixXd::Ones(3, 3)), with_k(5));
    const ConvergenceReport rc = convergence_report(constant, 1e-12);
    for (double d : rc.deltas) CHECK(d == 0.0);
    CHECK(*rc.k_converged == 2);
    CHECK_THROWS_AS(convergence_report(pwr_trace(make(Eigen::MatrixXd::Ones(2, 2)), with_k(1)), 0.1),
                    std::invalid_argument);

    PwrOptions o = with_k(7);
    o.self_citations = SelfCitations::exclude;
    const ConvergenceReport r = convergence_report(pwr_trace(fixtures::jasist_plus(), o), 0.01);
    CHECK(r.delta_at(7) <= 0.01);
    CHECK(r.deltas.size() == 6);

    // Undefined entries stay out of the max and their nodes are flagged.
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 3);
    m.col(2).setZero();
    const ConvergenceReport flagged = convergence_report(pwr_trace(make(m), with_k(4)), 1e-9);
    REQUIRE(flagged.flagged.size() == 1);
    CHECK(flagged.flagged[0] == 2);
    CHECK(flagged.converged);
  }

  TEST_CASE("heterogeneous coupling slows convergence") {
    Eigen::MatrixXd a, b;
    const Eigen::MatrixXd z = coupled_blocks(a, b);
    PwrOptions o = with_k(200);
    o.tol = 1e-4;
    const auto ka = converged_pwr(make(a), o).report.k_converged;
    const auto kb = converged_pwr(make(b), o).report.k_converged;
    const auto kz = converged_pwr(make(z), o).report.k_converged;
    REQUIRE(ka);
    REQUIRE(kb);
    REQUIRE(kz);
    CHECK(*kz > *ka);
    CHECK(*kz > *kb);
  }

  TEST_CASE("unnormalized traces equal row and column sums of the explicit power") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const CitationMatrix z = make(fixtures::random_real(rng, 5, 0.0, 10.0));
      const PwrTrace t = pwr_trace(z, raw(5));
      for (int k = 1; k <= 5; ++k) {
        const CitationMatrix zk = matrix_power_oracle(z, k);
        CHECK(max_relative_error(t.power_at(k), row_sums(zk)) < 1e-9);
        CHECK(max_relative_error(t.weakness_at(k), column_sums(zk)) < 1e-9);
      }
    }
  }

  TEST_CASE("duality, reciprocity and self-citation equivalence") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      const CitationMatrix z = make(fixtures::random_real(rng, 6, 0.1, 20.0));
      const PwrOptions o = with_k(8);
      const auto w = weakness_vector_trace(z, o);
      const auto pt = power_vector_trace(transpose(z), o);
      for (std::size_t k = 0; k < 8; ++k) CHECK(w.vectors[k] == pt.vectors[k]);

      const PwrTrace forward = pwr_trace(z, o);
      const PwrTrace backward = pwr_trace(transpose(z), o);
      for (int k = 1; k <= 8; ++k)
        CHECK(max_relative_error(backward.ratio_at(k), forward.ratio_at(k).cwiseInverse()) < 1e-12);

      PwrOptions excl = o;
      excl.self_citations = SelfCitations::exclude;
      const PwrTrace a = pwr_trace(z, excl);
      const PwrTrace b = pwr_trace(zero_diagonal(z), o);
      for (int k = 1; k <= 8; ++k) CHECK(a.ratio_at(k) == b.ratio_at(k));
    }
  }

  TEST_CASE("scale, permutation and normalization invariance") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::MatrixXd m = fixtures::random_real(rng, 6, 0.0, 30.0);
      const CitationMatrix z = make(m);
      const PwrTrace base = pwr_trace(z, with_k(10));
      for (double c : {0.5, 3.0, 10.0}) {
        const PwrTrace scaled = pwr_trace(make(c * m), with_k(10));
        for (int k = 1; k <= 10; ++k) CHECK(max_relative_error(scaled.ratio_at(k), base.ratio_at(k)) < 1e-9);
      }

      std::vector<Index> perm{0, 1, 2, 3, 4, 5};
      std::shuffle(perm.begin(), perm.end(), rng);
      const PwrTrace permuted = pwr_trace(make(permute(m, perm)), with_k(10));
      for (int k = 1; k <= 10; ++k)
        for (Index i = 0; i < 6; ++i)
          CHECK(fixtures::relative_error(permuted.ratio_at(k)[perm[static_cast<std::size_t>(i)]], base.ratio_at(k)[i]) <
                1e-9);

      const PwrTrace unnormalized = pwr_trace(z, raw(10));
      for (int k = 1; k <= 10; ++k) CHECK(max_relative_error(unnormalized.ratio_at(k), base.ratio_at(k)) < 1e-9);
    }
  }

  TEST_CASE("symmetric matrices have unit ratios") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::MatrixXd m = fixtures::random_real(rng, 5, 0.0, 9.0);
      const PwrTrace t = pwr_trace(make(m + m.transpose()), with_k(12));
      for (int k = 1; k <= 12; ++k) CHECK(max_relative_error(t.ratio_at(k), Eigen::VectorXd::Ones(5)) < 1e-9);
    }
  }

  TEST_CASE("unnormalized iteration reports overflow") {
    CHECK_THROWS_AS(pwr_trace(make(Eigen::MatrixXd::Constant(3, 3, 1e150)), raw(5)), std::overflow_error);
    CHECK_NOTHROW(pwr_trace(make(Eigen::MatrixXd::Constant(3, 3, 1e150)), with_k(50)));
  }

  TEST_CASE("sparse storage gives the dense results") {
    std::mt19937 rng(41);
    const Eigen::MatrixXd m = fixtures::random_counts(rng, 9, 30, 0.5);
    CitationMatrix::Sparse s = m.sparseView();
    const PwrTrace dense = pwr_trace(make(m), with_k(6));
    const PwrTrace sparse = pwr_trace(CitationMatrix(fixtures::numbered_labels(9), s), with_k(6));
    for (int k = 1; k <= 6; ++k) {
      CHECK(max_relative_error(sparse.ratio_at(k), dense.ratio_at(k)) < 1e-12);
    }
  }
}

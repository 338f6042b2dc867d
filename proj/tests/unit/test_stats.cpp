#include <doctest.h>

#include <cmath>
#include <vector>

#include "pcax/errors.hpp"
#include "pcax/stats.hpp"
#include "test_helpers.hpp"

using namespace pcax;
using namespace pcax::testing;

TEST_CASE("DataMatrix validates its invariants") {
  CHECK_THROWS_AS(DataMatrix({"a"}, Matrix(1, 1, {1.0})),
                  InvalidArgumentError);  // Q must be >= 2
  CHECK_THROWS_AS(DataMatrix({"a", "a"}, Matrix(2, 2, {1, 2, 3, 4})),
                  InvalidArgumentError);  // duplicate names
  CHECK_THROWS_AS(DataMatrix({"a"}, Matrix(2, 2)), InvalidArgumentError);
}

TEST_CASE("summarize single and constant features") {
  const DataMatrix x({"a"}, Matrix(1, 3, {1.0, 2.0, 3.0}));
  const SummaryStats s = summarize(x);
  CHECK(s.means[0] == doctest::Approx(2.0));
  CHECK(s.stds[0] == doctest::Approx(1.0));

  const DataMatrix c({"a"}, Matrix(1, 4, {5.0, 5.0, 5.0, 5.0}));
  const SummaryStats sc = summarize(c);
  CHECK(sc.means[0] == 5.0);
  CHECK(sc.stds[0] == 0.0);
}

TEST_CASE("summarize matches a two-pass oracle on random data") {
  const DataMatrix x = random_dataset(4, 50, 31, 3.0);
  const SummaryStats s = summarize(x);
  for (std::size_t i = 0; i < 4; ++i) {
    double mean = 0.0;
    for (double v : x.values.row(i)) mean += v;
    mean /= 50.0;
    double ss = 0.0;
    for (double v : x.values.row(i)) ss += (v - mean) * (v - mean);
    CHECK(std::abs(s.means[i] - mean) <= 1e-12);
    CHECK(std::abs(s.stds[i] - std::sqrt(ss / 49.0)) <= 1e-12);
  }
}

TEST_CASE("center moves every row mean to zero and is idempotent") {
  const DataMatrix x({"a"}, Matrix(1, 3, {1.0, 2.0, 3.0}));
  const DataMatrix centered = center(x);
  CHECK(centered.values(0, 0) == doctest::Approx(-1.0));
  CHECK(centered.values(0, 1) == doctest::Approx(0.0));
  CHECK(centered.values(0, 2) == doctest::Approx(1.0));

  const DataMatrix twice = center(centered);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(std::abs(twice.values(0, j) - centered.values(0, j)) <= 1e-12);
  }

  const DataMatrix random = random_dataset(5, 40, 8, 10.0);
  const DataMatrix rc = center(random);
  for (std::size_t i = 0; i < 5; ++i) {
    double mean = 0.0;
    for (double v : rc.values.row(i)) mean += v;
    CHECK(std::abs(mean / 40.0) <= 1e-12);
  }
}

TEST_CASE("standardize hand example with the Q-1 denominator") {
  // [0, 2]: mean 1, std sqrt(2); entries map to -+1/sqrt(2).
  const DataMatrix x({"a"}, Matrix(1, 2, {0.0, 2.0}));
  const StandardizeResult r = standardize(x, ZeroStdPolicy::error);
  CHECK(r.stats.means[0] == doctest::Approx(1.0));
  CHECK(r.stats.stds[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.data.values(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(r.data.values(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("standardize zero-variance policies") {
  const DataMatrix x({"flat", "varies"},
                     Matrix(2, 3, {7.0, 7.0, 7.0, 1.0, 2.0, 4.0}));
  CHECK_THROWS_AS(standardize(x, ZeroStdPolicy::error), DataError);

  const StandardizeResult r = standardize(x, ZeroStdPolicy::drop);
  REQUIRE(r.kept == std::vector<std::size_t>{1});
  CHECK(r.data.feature_names == std::vector<std::string>{"varies"});

  const DataMatrix all_flat({"a", "b"}, Matrix(2, 2, {1.0, 1.0, 2.0, 2.0}));
  CHECK_THROWS_AS(standardize(all_flat, ZeroStdPolicy::drop), DataError);
}

TEST_CASE("standardize yields unit rows and is idempotent") {
  const DataMatrix x = random_dataset(6, 80, 17, 4.0);
  const StandardizeResult r = standardize(x, ZeroStdPolicy::error);
  const SummaryStats s = summarize(r.data);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(s.means[i]) <= 1e-10);
    CHECK(std::abs(s.stds[i] - 1.0) <= 1e-10);
  }
  const StandardizeResult again = standardize(r.data, ZeroStdPolicy::error);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 80; ++j) {
      CHECK(std::abs(again.data.values(i, j) - r.data.values(i, j)) <= 1e-10);
    }
  }
}

TEST_CASE("covariance_matrix basics") {
  const DataMatrix same({"a", "b"},
                        Matrix(2, 3, {-1.0, 0.0, 1.0, -1.0, 0.0, 1.0}));
  const Matrix k = covariance_matrix(same);
  CHECK(k(0, 0) == doctest::Approx(1.0));
  CHECK(k(0, 1) == doctest::Approx(1.0));
  CHECK(k(1, 0) == doctest::Approx(1.0));
  CHECK(k(1, 1) == doctest::Approx(1.0));

  // Rows with zero dot product have zero covariance.
  const DataMatrix orth({"a", "b"},
                        Matrix(2, 4, {-1.0, 1.0, -1.0, 1.0,
                                      -1.0, -1.0, 1.0, 1.0}));
  const Matrix ko = covariance_matrix(orth);
  CHECK(std::abs(ko(0, 1)) <= 1e-12);

  const DataMatrix one({"a"}, Matrix(1, 3, {-1.0, 0.0, 1.0}));
  CHECK(covariance_matrix(one)(0, 0) == doctest::Approx(1.0));

  const DataMatrix uncentered({"a"}, Matrix(1, 3, {1.0, 2.0, 3.0}));
  CHECK_THROWS_AS(covariance_matrix(uncentered), DataError);
}

TEST_CASE("covariance of standardized data equals the Pearson matrix") {
  const DataMatrix x = random_dataset(5, 60, 23, 2.5);
  const StandardizeResult r = standardize(x, ZeroStdPolicy::error);
  const Matrix k = covariance_matrix(r.data);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const double expected =
          i == j ? 1.0 : pearson(x.values.row(i), x.values.row(j));
      CHECK(std::abs(k(i, j) - expected) <= 1e-10);
    }
  }
}

TEST_CASE("covariance is invariant to constant feature shifts") {
  const DataMatrix x = random_dataset(3, 30, 41);
  Matrix shifted = x.values;
  for (double& v : shifted.row(1)) v += 42.0;
  const DataMatrix y(x.feature_names, shifted);
  const Matrix kx = covariance_matrix(center(x));
  const Matrix ky = covariance_matrix(center(y));
  CHECK(max_abs_diff(kx, ky) <= 1e-12);
}

TEST_CASE("pearson endpoints and hand-computed value") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{1.0, 3.0, 2.0, 4.0};
  std::vector<double> neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];

  CHECK(pearson(x, x) == doctest::Approx(1.0));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  CHECK(pearson(x, y) == doctest::Approx(0.8));

  const std::vector<double> flat{2.0, 2.0, 2.0, 2.0};
  CHECK_THROWS_AS(pearson(x, flat), DataError);
  const std::vector<double> shorter{1.0, 2.0};
  CHECK_THROWS_AS(pearson(x, shorter), InvalidArgumentError);
}

TEST_CASE("pearson stays within [-1, 1] on random pairs") {
  Rng rng(4242);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> a(20);
    std::vector<double> b(20);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.gaussian();
      b[i] = 0.9 * a[i] + 0.1 * rng.gaussian();  // strongly correlated
    }
    const double r = pearson(a, b);
    CHECK(r <= 1.0);
    CHECK(r >= -1.0);
  }
}

TEST_CASE("correlation_raw is the mean of products") {
  const std::vector<double> ones{1.0, 1.0};
  CHECK(correlation_raw(ones, ones) == doctest::Approx(1.0));

  const std::vector<double> x{3.0, -2.0};
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(correlation_raw(x, zeros) == 0.0);

  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{3.0, 4.0};
  CHECK(correlation_raw(a, b) == doctest::Approx(5.5));

  const std::vector<double> shorter{1.0};
  CHECK_THROWS_AS(correlation_raw(a, shorter), InvalidArgumentError);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "physiq/stats.hpp"

using namespace physiq::bench;

namespace {

// Brute-force rank: for each element count how many beat it, averaging ties.
std::vector<double> naive_ranks(const std::vector<double>& values, bool higher_better) {
  const std::size_t n = values.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    int better = 0, tied = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (values[j] == values[i]) {
        ++tied;
      } else if (higher_better ? values[j] > values[i] : values[j] < values[i]) {
        ++better;
      }
    }
    // tied positions better+1 .. better+tied share the average rank
    ranks[i] = better + (tied + 1) / 2.0;
  }
  return ranks;
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("average_ranks orders by direction and averages ties") {
  const std::vector<double> values = {0.3, 0.1, 0.3, 0.9};
  const auto hi = average_ranks(values, true);
  CHECK(hi[3] == 1.0);
  CHECK(hi[0] == 2.5);  // tied with values[2]
  CHECK(hi[2] == 2.5);
  CHECK(hi[1] == 4.0);
  const auto lo = average_ranks(values, false);
  CHECK(lo[1] == 1.0);
  CHECK(lo[3] == 4.0);
}

TEST_CASE("pearson: affine inputs, derived case, error paths") {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> affine = {1, 3, 5, 7};  // y = 2x + 1
  CHECK(pearson(x, affine) == doctest::Approx(1.0));

  // Hand evaluation of the product-moment formula: deviations multiply to
  // 0.75 four times, both variances are 5, so r = 3/5.
  const std::vector<double> y = {1, 0, 3, 2};
  CHECK(pearson(x, y) == doctest::Approx(0.6));
  // The adjacent-swap variant reaches 0.8: sum of products is 4, variances 5.
  const std::vector<double> y2 = {0, 1, 3, 2};
  CHECK(pearson(x, y2) == doctest::Approx(0.8));

  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{5, 5, 5, 5}), std::invalid_argument);
}

TEST_CASE("spearman: monotone maps, perfect inversion, tie handling") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> cubed = {1, 8, 27, 64, 125};
  CHECK(spearman(x, cubed) == doctest::Approx(1.0));

  CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));

  CHECK_THROWS_AS(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{7, 7, 7}), std::invalid_argument);
}

TEST_CASE("correlations match the brute-force oracle on all permutations of 5") {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y = {1, 2, 3, 4, 5};
  std::sort(y.begin(), y.end());
  do {
    // Integer inputs make both accumulations exact, so equality is exact.
    CHECK(pearson(x, y) == naive_pearson(x, y));
    const auto rx = naive_ranks(x, false);
    const auto ry = naive_ranks(y, false);
    CHECK(spearman(x, y) == naive_pearson(rx, ry));
    CHECK(average_ranks(y, false) == ry);
  } while (std::next_permutation(y.begin(), y.end()));
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bsplit/feynman.hpp"
#include "support/oracles.hpp"

using namespace bsplit;
using bsplit::testing::balanced;

namespace {

std::vector<double> probs(const OutputDistribution& d) { return d.probabilities(); }

void check_probabilities(const OutputDistribution& d,
                         const std::vector<double>& want, double tol) {
  REQUIRE(d.amplitudes.size() == want.size());
  const auto p = probs(d);
  for (std::size_t m = 0; m < want.size(); ++m) {
    INFO("m=" << m);
    CHECK(std::abs(p[m] - want[m]) <= tol);
  }
}

SymmetricSplitter swapped(const SymmetricSplitter& s) { return {s.tau, s.rho}; }

}  // namespace

TEST_CASE("single_input_distribution on a balanced splitter") {
  check_probabilities(single_input_distribution(2, balanced()),
                      {0.25, 0.5, 0.25}, 1e-15);
  check_probabilities(single_input_distribution(3, balanced()),
                      {0.125, 0.375, 0.375, 0.125}, 1e-15);
  const auto vac = single_input_distribution(0, balanced());
  REQUIRE(vac.amplitudes.size() == 1);
  CHECK(vac.amplitudes[0] == Amplitude{1.0, 0.0});
  CHECK_THROWS_AS(single_input_distribution(10001, balanced()), std::out_of_range);
  CHECK_THROWS_AS(single_input_distribution(600, balanced(), 599), std::out_of_range);
  CHECK(single_input_distribution(10000, balanced()).norm_residual() <= 1e-10);
}

TEST_CASE("single input amplitudes carry the binomial phases") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto s = testing::random_splitter(rng);
    const auto d = single_input_distribution(7, s);
    for (unsigned m = 0; m <= 7; ++m) {
      const Amplitude want = std::sqrt(double(testing::pascal_binomial(7, m))) *
                             std::pow(s.rho, m) * std::pow(s.tau, 7 - m);
      CHECK(std::abs(d.amplitudes[m] - want) <= 1e-13);
    }
  }
}

TEST_CASE("two_input_distribution: one photon in each port") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    const auto s = testing::random_splitter(rng);
    const auto d = two_input_distribution({1, 1}, s);
    REQUIRE(d.amplitudes.size() == 3);
    CHECK(std::abs(d.amplitudes[0] - std::sqrt(2.0) * s.rho * s.tau) <= 1e-14);
    CHECK(std::abs(d.amplitudes[1] - (s.rho * s.rho + s.tau * s.tau)) <= 1e-14);
    CHECK(std::abs(d.amplitudes[2] - std::sqrt(2.0) * s.rho * s.tau) <= 1e-14);
  }
  // balanced: the coincidence amplitude vanishes
  const auto d = two_input_distribution({1, 1}, balanced());
  CHECK(std::abs(d.amplitudes[1]) <= 1e-16);
  check_probabilities(d, {0.5, 0.0, 0.5}, 1e-15);
}

TEST_CASE("two_input_distribution: frozen (2, 1) balanced values") {
  // produced by the permanent oracle below and frozen here
  check_probabilities(two_input_distribution({2, 1}, balanced()),
                      {0.375, 0.125, 0.125, 0.375}, 1e-15);
  check_probabilities(two_input_distribution_streamlined({2, 1}, balanced()),
                      {0.375, 0.125, 0.125, 0.375}, 1e-15);
}

TEST_CASE("two_input_distribution: empty and one-sided inputs") {
  const auto vac = two_input_distribution({0, 0}, balanced());
  REQUIRE(vac.amplitudes.size() == 1);
  CHECK(vac.amplitudes[0] == Amplitude{1.0, 0.0});
  CHECK(two_input_distribution_streamlined({0, 0}, balanced()).amplitudes[0] ==
        Amplitude{1.0, 0.0});

  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const auto s = testing::random_splitter(rng);
    for (unsigned n : {1u, 5u, 40u, 300u}) {
      const auto one = single_input_distribution(n, s);
      const auto two = two_input_distribution({n, 0}, s);
      for (unsigned m = 0; m <= n; ++m) {
        CHECK(std::abs(one.amplitudes[m] - two.amplitudes[m]) <=
              1e-12 * std::max(1e-300, std::abs(one.amplitudes[m])) + 1e-300);
      }
    }
  }
}

TEST_CASE("two_input_distribution matches the permanent oracle") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 25; ++i) {
    const auto s = testing::random_splitter(rng);
    for (unsigned n1 = 0; n1 <= 4; ++n1) {
      for (unsigned n2 = 0; n2 <= 4; ++n2) {
        const auto d = two_input_distribution({n1, n2}, s);
        const auto e = two_input_distribution_streamlined({n1, n2}, s);
        for (unsigned m = 0; m <= n1 + n2; ++m) {
          const auto want = testing::boson_amplitude(s, n1, n2, m);
          INFO("n1=" << n1 << " n2=" << n2 << " m=" << m);
          CHECK(std::abs(d.amplitudes[m] - want) <= 1e-12);
          CHECK(std::abs(e.amplitudes[m] - want) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("streamlined terms equal path terms") {
  std::mt19937_64 rng(25);
  const auto s = testing::random_splitter(rng);
  for (unsigned m1 = 0; m1 <= 5; ++m1) {
    for (unsigned m2 = 0; m2 <= 3; ++m2) {
      const auto a = path_term({5, 3}, m1, m2, s).to_complex();
      const auto b = streamlined_term({5, 3}, m1, m2, s).to_complex();
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
  }
  CHECK_THROWS_AS(path_term({2, 2}, 3, 0, s), std::invalid_argument);
  CHECK_THROWS_AS(streamlined_term({2, 2}, 0, 3, s), std::invalid_argument);
}

TEST_CASE("property: streamlined and path terms agree for n1, n2 <= 20") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 5; ++i) {
    const auto s = testing::random_splitter(rng, 0.02, 0.98);
    for (unsigned n1 = 0; n1 <= 20; n1 += 1 + i) {
      for (unsigned n2 = 0; n2 <= 20; ++n2) {
        for (unsigned m1 = 0; m1 <= n1; ++m1) {
          for (unsigned m2 = 0; m2 <= n2; ++m2) {
            const auto a = path_term({n1, n2}, m1, m2, s);
            const auto b = streamlined_term({n1, n2}, m1, m2, s);
            const auto ca = a.to_complex(), cb = b.to_complex();
            CHECK(std::abs(ca - cb) <= 1e-12 * std::abs(ca));
          }
        }
      }
    }
  }
}

TEST_CASE("property: output distributions are normalized") {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 8; ++i) {
    const auto s = testing::random_splitter(rng);
    for (unsigned n1 = 0; n1 <= 30; n1 += 3) {
      for (unsigned n2 = 0; n2 <= 30; ++n2) {
        INFO("n1=" << n1 << " n2=" << n2);
        CHECK(two_input_distribution({n1, n2}, s).norm_residual() <= 1e-10);
        CHECK(two_input_distribution_streamlined({n1, n2}, s).norm_residual() <=
              1e-10);
      }
    }
  }
  // heavy cancellation: balanced splitter with equal inputs
  CHECK(two_input_distribution({30, 30}, balanced()).norm_residual() <= 1e-10);
  // no cancellation with everything in one port, even at the limit
  CHECK(two_input_distribution({512, 0}, balanced()).norm_residual() <= 1e-10);
  CHECK(single_input_distribution(512, balanced()).norm_residual() <= 1e-10);
}

TEST_CASE("property: port and coefficient exchanges") {
  // Swapping the input ports reverses the distribution, and so does
  // swapping rho with tau; doing both leaves it unchanged.
  std::mt19937_64 rng(28);
  std::uniform_int_distribution<unsigned> n(0, 25);
  for (int i = 0; i < 100; ++i) {
    const auto s = testing::random_splitter(rng);
    const unsigned n1 = n(rng), n2 = n(rng);
    const unsigned total = n1 + n2;
    const auto p = probs(two_input_distribution({n1, n2}, s));
    const auto ports = probs(two_input_distribution({n2, n1}, s));
    const auto coefs = probs(two_input_distribution({n1, n2}, swapped(s)));
    const auto both = probs(two_input_distribution({n2, n1}, swapped(s)));
    for (unsigned m = 0; m <= total; ++m) {
      CHECK(std::abs(p[m] - ports[total - m]) <= 1e-12);
      CHECK(std::abs(p[m] - coefs[total - m]) <= 1e-12);
      CHECK(std::abs(p[m] - both[m]) <= 1e-12);
    }
  }
}

TEST_CASE("mirror and window limits") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<unsigned> n(0, 40);
  std::uniform_real_distribution<double> ph(-pi, pi);
  for (int i = 0; i < 50; ++i) {
    const unsigned n1 = n(rng), n2 = n(rng);
    const double phi = ph(rng);
    const SymmetricSplitter window{0.0, std::polar(1.0, phi)};
    const SymmetricSplitter mirror{std::polar(1.0, phi), 0.0};
    const auto w = two_input_distribution({n1, n2}, window);
    const auto r = two_input_distribution({n1, n2}, mirror);
    for (unsigned m = 0; m <= n1 + n2; ++m) {
      CHECK(std::abs(w.amplitudes[m]) == doctest::Approx(m == n2 ? 1.0 : 0.0));
      CHECK(std::abs(r.amplitudes[m]) == doctest::Approx(m == n1 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("photon limit") {
  CHECK_THROWS_AS(two_input_distribution({300, 213}, balanced()), std::out_of_range);
  CHECK_THROWS_AS(two_input_distribution_streamlined({513, 0}, balanced()),
                  std::out_of_range);
  CHECK_NOTHROW(two_input_distribution({256, 256}, balanced()));
  CHECK_THROWS_AS(two_input_distribution({3, 3}, balanced(), 5), std::out_of_range);
}

TEST_CASE("cell_count_approx_error") {
  CHECK(cell_count_approx_error(1'000'000, 1) == 0.0);
  CHECK(cell_count_approx_error(1'000'000, 0) == 0.0);

  const double e3 = cell_count_approx_error(1'000'000, 3);
  CHECK(e3 == doctest::Approx(testing::exact_cell_count_error(1'000'000, 3))
                  .epsilon(1e-9));
  CHECK(e3 == doctest::Approx(3e-6).epsilon(0.01));

  const double e10 = cell_count_approx_error(100, 10);
  CHECK(e10 == doctest::Approx(testing::exact_cell_count_error(100, 10))
                   .epsilon(1e-10));
  const double predicted = 1.0 - std::exp(-0.45);
  CHECK(e10 / predicted < 2.0);
  CHECK(e10 / predicted > 0.5);

  for (unsigned m : {2u, 17u, 60u, 200u}) {
    CHECK(cell_count_approx_error(5000, m) ==
          doctest::Approx(testing::exact_cell_count_error(5000, m)).epsilon(1e-9));
  }
  // large m goes through the log-factorial branch
  CHECK(std::isfinite(cell_count_approx_error(100'000'000, 5000)));
  CHECK(cell_count_approx_error(100'000'000, 5000) ==
        doctest::Approx(std::expm1(5000.0 * 4999.0 / 2e8)).epsilon(1e-3));

  CHECK_THROWS_AS(cell_count_approx_error(10, 11), std::invalid_argument);
  CHECK_THROWS_AS(cell_count_approx_error(100'000'001, 1), std::invalid_argument);
}

TEST_CASE("poisson_reference") {
  const auto weak = SymmetricSplitter::from_reflectance(0.01);
  const auto ref = poisson_reference(400, weak, 30);
  CHECK(ref.mean == doctest::Approx(400.0 * 0.01 / 0.99).epsilon(1e-12));
  REQUIRE(ref.probabilities.size() == 31);
  CHECK(ref.probabilities[0] == doctest::Approx(std::exp(-ref.mean)).epsilon(1e-13));
  CHECK(ref.probabilities[4] ==
        doctest::Approx(std::exp(-ref.mean) * std::pow(ref.mean, 4) / 24.0)
            .epsilon(1e-12));

  const auto window = poisson_reference(50, SymmetricSplitter{0.0, 1.0}, 5);
  CHECK(window.mean == 0.0);
  CHECK(window.probabilities == std::vector<double>{1, 0, 0, 0, 0, 0});

  CHECK_THROWS_AS(poisson_reference(5, SymmetricSplitter{1.0, 0.0}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(poisson_reference(5, weak, 6), std::invalid_argument);
}

TEST_CASE("poisson limit of the single-input distribution") {
  const auto s = SymmetricSplitter::from_reflectance(0.001);
  const auto exact = single_input_distribution(1000, s).probabilities();
  const auto ref = poisson_reference(1000, s, 64);
  const double tv = total_variation_distance(exact, ref);
  CHECK(tv <= 0.01);

  // total variation recomputed from an lgamma binomial and a direct Poisson
  const auto binom = testing::binomial_pmf(1000, 0.001);
  double l1 = 0.0;
  for (unsigned m = 0; m <= 1000; ++m) {
    const double q = m <= 64 ? std::exp(-ref.mean + m * std::log(ref.mean) -
                                        std::lgamma(m + 1.0))
                             : 0.0;
    l1 += std::abs(binom[m] - q);
  }
  CHECK(tv == doctest::Approx(0.5 * l1).epsilon(1e-6));
}

TEST_CASE("property: poisson limit holds where the mean stays small") {
  std::mt19937_64 rng(30);
  std::uniform_int_distribution<unsigned> pick_n(500, 2000);
  std::uniform_real_distribution<double> pick_mean(0.01, 10.0);
  for (int i = 0; i < 40; ++i) {
    const unsigned n = pick_n(rng);
    const double r = pick_mean(rng) / n;
    const auto s = testing::random_splitter(rng, r, r);
    const auto exact = single_input_distribution(n, s, n).probabilities();
    const auto ref = poisson_reference(n, s, std::min(n, 200u));
    const double bound = std::max(0.02, 5.0 * n * r * r);
    INFO("n=" << n << " r=" << r);
    CHECK(total_variation_distance(exact, ref) <= bound);
  }
}

TEST_CASE("total_variation_distance counts reference mass past the cutoff") {
  PoissonReference ref;
  ref.probabilities = {0.5, 0.25};
  CHECK(total_variation_distance({0.5, 0.5}, ref) == doctest::Approx(0.125 + 0.25));
}

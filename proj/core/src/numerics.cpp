#include "bsplit/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsplit {

namespace {

constexpr std::uint64_t table_limit = 1024;
constexpr long double half_log_two_pi =
    0.918938533204672741780329736405617639861L;

const std::array<long double, table_limit + 1>& log_factorial_table() {
  static const auto table = [] {
    std::array<long double, table_limit + 1> t{};
    t[0] = 0.0L;
    for (std::uint64_t k = 1; k <= table_limit; ++k) {
      t[k] = t[k - 1] + std::log(static_cast<long double>(k));
    }
    return t;
  }();
  return table;
}

long double stirling_log_factorial(std::uint64_t n) {
  const long double x = static_cast<long double>(n);
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  // Asymptotic tail; at n > 1024 the next term is below 1e-24.
  const long double series =
      inv * (1.0L / 12.0L -
             inv2 * (1.0L / 360.0L - inv2 * (1.0L / 1260.0L - inv2 / 1680.0L)));
  return (x + 0.5L) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace

double normalize_phase(double radians) noexcept {
  double r = std::remainder(radians, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

double phase_of(Amplitude z) noexcept {
  if (z == Amplitude{}) return 0.0;
  return std::arg(z);
}

LogMagnitudePhase LogMagnitudePhase::from_complex(Amplitude z) noexcept {
  if (z == Amplitude{}) return zero();
  return {std::log(std::abs(z)), normalize_phase(std::arg(z))};
}

double LogMagnitudePhase::magnitude() const noexcept {
  return is_zero() ? 0.0 : std::exp(log_mag);
}

Amplitude LogMagnitudePhase::to_complex() const noexcept {
  if (is_zero()) return {};
  return std::polar(std::exp(log_mag), phase);
}

LogMagnitudePhase operator*(const LogMagnitudePhase& a,
                            const LogMagnitudePhase& b) noexcept {
  if (a.is_zero() || b.is_zero()) return LogMagnitudePhase::zero();
  return {a.log_mag + b.log_mag, normalize_phase(a.phase + b.phase)};
}

long double log_factorial_ext(std::uint64_t n) noexcept {
  if (n <= table_limit) return log_factorial_table()[n];
  return stirling_log_factorial(n);
}

double log_factorial(std::uint64_t n) noexcept {
  return static_cast<double>(log_factorial_ext(n));
}

long double log_binomial_ext(std::uint64_t n, std::uint64_t m) {
  if (m > n) {
    throw std::invalid_argument("binomial: m = " + std::to_string(m) +
                                " exceeds n = " + std::to_string(n));
  }
  // Same evaluation order for m and n - m keeps the result symmetric.
  const std::uint64_t lo = std::min(m, n - m);
  return log_factorial_ext(n) - log_factorial_ext(lo) -
         log_factorial_ext(n - lo);
}

double sqrt_binomial(std::uint64_t n, std::uint64_t m) {
  return static_cast<double>(std::exp(0.5L * log_binomial_ext(n, m)));
}

LogMagnitudePhase complex_pow(Amplitude z, std::uint64_t k) noexcept {
  if (k == 0) return {0.0, 0.0};
  if (z == Amplitude{}) return LogMagnitudePhase::zero();
  const double kk = static_cast<double>(k);
  return {kk * std::log(std::abs(z)), normalize_phase(kk * std::arg(z))};
}

}  // namespace bsplit

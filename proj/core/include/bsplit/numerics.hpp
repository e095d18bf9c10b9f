#ifndef BSPLIT_NUMERICS_HPP
#define BSPLIT_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <limits>

namespace bsplit {

/// Dimensionless complex probability amplitude or Fresnel coefficient.
using Amplitude = std::complex<double>;

using PhotonCount = std::uint32_t;

inline constexpr double pi = 3.14159265358979323846;

/// Maps an angle onto (-pi, pi].
double normalize_phase(double radians) noexcept;

/// Argument of z, with arg(0) defined as 0.
double phase_of(Amplitude z) noexcept;

/// Polar form with the magnitude held as a natural logarithm, so that
/// powers like tau^n for n in the thousands neither underflow nor overflow.
/// Zero is represented exactly by log_mag == -infinity.
struct LogMagnitudePhase {
  double log_mag = 0.0;
  double phase = 0.0;

  static LogMagnitudePhase zero() noexcept {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  static LogMagnitudePhase from_complex(Amplitude z) noexcept;

  bool is_zero() const noexcept {
    return log_mag == -std::numeric_limits<double>::infinity();
  }
  double magnitude() const noexcept;
  Amplitude to_complex() const noexcept;

  friend LogMagnitudePhase operator*(const LogMagnitudePhase& a,
                                     const LogMagnitudePhase& b) noexcept;
};

/// ln(n!). Exact cumulative table up to 1024, Stirling series above.
double log_factorial(std::uint64_t n) noexcept;

/// Extended-precision ln(n!) used when large log-factorials must be
/// differenced without losing the small result to cancellation.
long double log_factorial_ext(std::uint64_t n) noexcept;

/// ln C(n, m) in extended precision. Throws std::invalid_argument if m > n.
long double log_binomial_ext(std::uint64_t n, std::uint64_t m);

/// sqrt(C(n, m)) assembled in log space. Throws std::invalid_argument if m > n.
double sqrt_binomial(std::uint64_t n, std::uint64_t m);

/// z^k in polar log form. z == 0 with k > 0 yields the zero sentinel.
LogMagnitudePhase complex_pow(Amplitude z, std::uint64_t k) noexcept;

}  // namespace bsplit

#endif  // BSPLIT_NUMERICS_HPP

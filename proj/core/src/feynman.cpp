#include "bsplit/feynman.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <quadmath.h>

namespace bsplit {

namespace {

// Interference sums cancel terms as large as 2^N / N against results of
// order one, so plain double log sums lose about eight digits at N = 60.
// The factorial ratios are therefore carried as unevaluated pairs of long
// doubles (roughly 128 significant bits), and phases are split into exact
// quarter turns plus a small remainder. Tables are built in __float128.
__extension__ typedef __float128 quad;

struct wide {
  long double hi = 0.0L;
  long double lo = 0.0L;
};

wide from_quad(quad x) {
  const long double hi = static_cast<long double>(x);
  return {hi, static_cast<long double>(x - static_cast<quad>(hi))};
}

quad to_quad(wide x) {
  return static_cast<quad>(x.hi) + static_cast<quad>(x.lo);
}

wide operator+(wide a, wide b) {
  // two-sum on the leading parts, then renormalize
  const long double s = a.hi + b.hi;
  const long double v = s - a.hi;
  const long double e = (a.hi - (s - v)) + (b.hi - v) + a.lo + b.lo;
  const long double hi = s + e;
  return {hi, e - (hi - s)};
}

wide operator-(wide a) { return {-a.hi, -a.lo}; }
wide operator-(wide a, wide b) { return a + (-b); }
wide half(wide a) { return {0.5L * a.hi, 0.5L * a.lo}; }

constexpr PhotonCount wide_table_limit = 1024;

const std::vector<wide>& wide_log_factorial_table() {
  static const std::vector<wide> table = [] {
    std::vector<wide> t(wide_table_limit + 1);
    quad acc = 0;
    for (PhotonCount k = 2; k <= wide_table_limit; ++k) {
      acc += logq(static_cast<quad>(k));
      t[k] = from_quad(acc);
    }
    return t;
  }();
  return table;
}

wide lf(PhotonCount n) {
  if (n <= wide_table_limit) return wide_log_factorial_table()[n];
  return {log_factorial_ext(n), 0.0L};
}

wide half_log_binomial(PhotonCount n, PhotonCount k) {
  return half(lf(n) - lf(k) - lf(n - k));
}

// exp to long double accuracy: the low part enters at first order.
long double exp_wide(wide x) { return std::exp(x.hi) * (1.0L + x.lo); }

using ld_complex = std::complex<long double>;

// rho^a tau^b with a + b = N is rho^N (tau/rho)^b. The phase of tau/rho is
// q quarter turns plus delta, where delta is tiny for a quadrature splitter.
struct SplitterPolar {
  bool rho_zero;
  bool tau_zero;
  quad log_rho = 0;
  quad log_tau = 0;
  double phase_rho;
  int quarter_turns = 0;
  long double delta = 0.0L;

  explicit SplitterPolar(const SymmetricSplitter& s)
      : rho_zero(s.rho == Amplitude{}),
        tau_zero(s.tau == Amplitude{}),
        phase_rho(phase_of(s.rho)) {
    if (!rho_zero) log_rho = logq(static_cast<quad>(std::abs(s.rho)));
    if (!tau_zero) log_tau = logq(static_cast<quad>(std::abs(s.tau)));
    const long double half_pi = std::acos(-1.0L) / 2;
    const long double theta = static_cast<long double>(phase_of(s.tau)) -
                              static_cast<long double>(phase_rho);
    const long double q = std::nearbyint(theta / half_pi);
    delta = theta - q * half_pi;
    quarter_turns = static_cast<int>(q);
  }

  bool vanishes(std::uint64_t a, std::uint64_t b) const {
    return (a > 0 && rho_zero) || (b > 0 && tau_zero);
  }

  wide log_magnitude(wide log_prefactor, std::uint64_t a,
                     std::uint64_t b) const {
    quad lm = to_quad(log_prefactor);
    if (a > 0) lm += static_cast<quad>(a) * log_rho;
    if (b > 0) lm += static_cast<quad>(b) * log_tau;
    return from_quad(lm);
  }

  // Unit phasor (tau/rho)^b / |tau/rho|^b.
  ld_complex relative_phasor(std::uint64_t b) const {
    const long double angle = static_cast<long double>(b) * delta;
    const ld_complex small{std::cos(angle), std::sin(angle)};
    const long long turns = (static_cast<long long>(quarter_turns) *
                                 static_cast<long long>(b % 4) % 4 + 4) % 4;
    switch (turns) {
      case 1: return {-small.imag(), small.real()};
      case 2: return -small;
      case 3: return {small.imag(), -small.real()};
      default: return small;
    }
  }

  Amplitude common_phasor(std::uint64_t total) const {
    return std::polar(1.0, normalize_phase(static_cast<double>(total) *
                                           phase_rho));
  }

  LogMagnitudePhase term(wide log_prefactor, std::uint64_t a,
                         std::uint64_t b) const {
    if (vanishes(a, b)) return LogMagnitudePhase::zero();
    const double lm =
        static_cast<double>(log_magnitude(log_prefactor, a, b).hi);
    const double ph = static_cast<double>(a + b) * phase_rho +
                      quarter_turns * static_cast<double>(b % 4) * (pi / 2) +
                      static_cast<double>(static_cast<long double>(b) * delta);
    return {lm, normalize_phase(ph)};
  }
};

void check_limit(PhotonCount total, PhotonCount max_photons) {
  if (total > max_photons) {
    throw std::out_of_range("photon count " + std::to_string(total) +
                            " exceeds the configured maximum " +
                            std::to_string(max_photons));
  }
}

void check_term(const FockPair& in, PhotonCount m1, PhotonCount m2) {
  if (m1 > in.n1 || m2 > in.n2) {
    throw std::invalid_argument("term index exceeds input photon count");
  }
}

wide path_log_coefficient(const FockPair& in, PhotonCount m1, PhotonCount m2) {
  const PhotonCount m = m1 + m2;
  const PhotonCount rest = in.total() - m;
  return half(lf(in.n1) + lf(in.n2) + lf(m) + lf(rest)) - lf(m1) - lf(m2) -
         lf(in.n1 - m1) - lf(in.n2 - m2);
}

wide streamlined_log_coefficient(const FockPair& in, PhotonCount m1,
                                 PhotonCount m2) {
  const PhotonCount m = m1 + m2;
  const PhotonCount rest = in.total() - m;
  return half_log_binomial(in.n1, m1) + half_log_binomial(in.n2, m2) +
         half_log_binomial(m, m1) + half_log_binomial(rest, in.n1 - m1);
}

// Sums the terms for every m. coefficient(m, m1) returns the log of the
// factorial ratio; callers precompute what depends on one index only.
template <typename LogCoefficient>
OutputDistribution accumulate(const FockPair& in, const SymmetricSplitter& s,
                              LogCoefficient&& coefficient) {
  const SplitterPolar sp(s);
  const PhotonCount total = in.total();
  std::vector<ld_complex> rotation(total + 1);
  std::vector<wide> log_power(total + 1);
  for (PhotonCount b = 0; b <= total; ++b) {
    rotation[b] = sp.relative_phasor(b);
    if (!sp.vanishes(total - b, b)) {
      log_power[b] = sp.log_magnitude({}, total - b, b);
    }
  }
  const Amplitude common = sp.common_phasor(total);

  OutputDistribution out{total, std::vector<Amplitude>(total + 1)};
  for (PhotonCount m = 0; m <= total; ++m) {
    const PhotonCount lo = m > in.n2 ? m - in.n2 : 0;
    const PhotonCount hi = std::min(in.n1, m);
    ld_complex sum{};
    for (PhotonCount m1 = lo; m1 <= hi; ++m1) {
      const PhotonCount b = in.n1 - m1 + (m - m1);
      if (sp.vanishes(total - b, b)) continue;
      sum += exp_wide(coefficient(m, m1) + log_power[b]) * rotation[b];
    }
    out.amplitudes[m] =
        Amplitude{static_cast<double>(sum.real()),
                  static_cast<double>(sum.imag())} * common;
  }
  return out;
}

}  // namespace

std::vector<double> OutputDistribution::probabilities() const {
  std::vector<double> p(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), p.begin(),
                 [](Amplitude a) { return std::norm(a); });
  return p;
}

double OutputDistribution::norm_residual() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::abs(sum - 1.0);
}

OutputDistribution single_input_distribution(PhotonCount n,
                                             const SymmetricSplitter& s,
                                             PhotonCount max_photons) {
  check_limit(n, max_photons);
  const SplitterPolar sp(s);
  OutputDistribution out{n, std::vector<Amplitude>(n + 1)};
  for (PhotonCount m = 0; m <= n; ++m) {
    out.amplitudes[m] = sp.term(half_log_binomial(n, m), m, n - m).to_complex();
  }
  return out;
}

LogMagnitudePhase path_term(const FockPair& in, PhotonCount m1, PhotonCount m2,
                            const SymmetricSplitter& s) {
  check_term(in, m1, m2);
  return SplitterPolar(s).term(path_log_coefficient(in, m1, m2),
                                 in.n2 + m1 - m2, in.n1 - m1 + m2);
}

LogMagnitudePhase streamlined_term(const FockPair& in, PhotonCount m1,
                                   PhotonCount m2, const SymmetricSplitter& s) {
  check_term(in, m1, m2);
  return SplitterPolar(s).term(streamlined_log_coefficient(in, m1, m2),
                                 in.n2 + m1 - m2, in.n1 - m1 + m2);
}

OutputDistribution two_input_distribution(const FockPair& in,
                                          const SymmetricSplitter& s,
                                          PhotonCount max_photons) {
  check_limit(in.total(), max_photons);
  // lf(m1) + lf(n1 - m1) and lf(m2) + lf(n2 - m2) depend on one index each
  std::vector<wide> port1(in.n1 + 1), port2(in.n2 + 1);
  for (PhotonCount k = 0; k <= in.n1; ++k) port1[k] = lf(k) + lf(in.n1 - k);
  for (PhotonCount k = 0; k <= in.n2; ++k) port2[k] = lf(k) + lf(in.n2 - k);
  const wide inputs = lf(in.n1) + lf(in.n2);
  std::vector<wide> outputs(in.total() + 1);
  for (PhotonCount m = 0; m <= in.total(); ++m) {
    outputs[m] = half(inputs + lf(m) + lf(in.total() - m));
  }
  return accumulate(in, s, [&](PhotonCount m, PhotonCount m1) {
    return outputs[m] - port1[m1] - port2[m - m1];
  });
}

OutputDistribution two_input_distribution_streamlined(
    const FockPair& in, const SymmetricSplitter& s, PhotonCount max_photons) {
  check_limit(in.total(), max_photons);
  std::vector<wide> port1(in.n1 + 1), port2(in.n2 + 1);
  for (PhotonCount k = 0; k <= in.n1; ++k) port1[k] = half_log_binomial(in.n1, k);
  for (PhotonCount k = 0; k <= in.n2; ++k) port2[k] = half_log_binomial(in.n2, k);
  const PhotonCount total = in.total();
  return accumulate(in, s, [&](PhotonCount m, PhotonCount m1) {
    return port1[m1] + port2[m - m1] + half_log_binomial(m, m1) +
           half_log_binomial(total - m, in.n1 - m1);
  });
}

double cell_count_approx_error(std::uint64_t cells, std::uint64_t m) {
  if (m > cells) {
    throw std::invalid_argument("cell_count_approx_error: m exceeds N");
  }
  if (cells > 100'000'000) {
    throw std::invalid_argument("cell_count_approx_error: N above 1e8");
  }
  // log C(N,m) - log(N^m / m!) = sum_k log(1 - k/N)
  long double log_ratio = 0.0L;
  if (m <= 4096) {
    const long double n = static_cast<long double>(cells);
    for (std::uint64_t k = 1; k < m; ++k) {
      log_ratio += std::log1p(-static_cast<long double>(k) / n);
    }
  } else {
    log_ratio = log_factorial_ext(cells) - log_factorial_ext(cells - m) -
              static_cast<long double>(m) *
                  std::log(static_cast<long double>(cells));
  }
  return static_cast<double>(std::expm1(-log_ratio));
}

PoissonReference poisson_reference(PhotonCount n, const SymmetricSplitter& s,
                                   PhotonCount cutoff) {
  if (s.tau == Amplitude{}) {
    throw std::invalid_argument("poisson_reference: tau must be nonzero");
  }
  if (cutoff > n) {
    throw std::invalid_argument("poisson_reference: cutoff exceeds n");
  }
  PoissonReference ref;
  ref.mean = static_cast<double>(n) * std::norm(s.rho) / std::norm(s.tau);
  ref.probabilities.assign(cutoff + 1, 0.0);
  if (ref.mean == 0.0) {
    ref.probabilities[0] = 1.0;
    return ref;
  }
  const long double log_mean = std::log(static_cast<long double>(ref.mean));
  for (PhotonCount m = 0; m <= cutoff; ++m) {
    ref.probabilities[m] = static_cast<double>(
        std::exp(-static_cast<long double>(ref.mean) + m * log_mean -
                 log_factorial_ext(m)));
  }
  return ref;
}

double total_variation_distance(const std::vector<double>& exact,
                                const PoissonReference& reference) {
  const auto& q = reference.probabilities;
  const std::size_t len = std::max(exact.size(), q.size());
  double l1 = 0.0;
  double q_mass = 0.0;
  for (std::size_t m = 0; m < len; ++m) {
    const double pm = m < exact.size() ? exact[m] : 0.0;
    const double qm = m < q.size() ? q[m] : 0.0;
    l1 += std::abs(pm - qm);
    q_mass += qm;
  }
  return 0.5 * l1 + std::max(0.0, 1.0 - q_mass);
}

}  // namespace bsplit

#ifndef BSPLIT_FEYNMAN_HPP
#define BSPLIT_FEYNMAN_HPP

#include <vector>

#include "bsplit/numerics.hpp"
#include "bsplit/splitter.hpp"

namespace bsplit {

/// Limit on n1 + n2 for the two-input sums. Beyond a few dozen photons per
/// port the interference cancellation exceeds long double resolution for
/// near-balanced splitters; norm_residual() exposes the loss.
inline constexpr PhotonCount default_max_photons = 512;

/// The single-input distribution has one term per m and no cancellation,
/// so it stays accurate far into the many-photon regime.
inline constexpr PhotonCount default_single_input_max_photons = 10000;

/// Number states |n1> and |n2> arriving at input ports 1 and 2.
struct FockPair {
  PhotonCount n1 = 0;
  PhotonCount n2 = 0;

  PhotonCount total() const noexcept { return n1 + n2; }
};

/// Amplitudes A(m) for m photons at port 3 and total - m at port 4.
struct OutputDistribution {
  PhotonCount total = 0;
  std::vector<Amplitude> amplitudes;

  std::vector<double> probabilities() const;
  /// |sum_m |A(m)|^2 - 1|
  double norm_residual() const;
};

/// Single-input photon counting:
///   A(m) = sqrt(C(n, m)) rho^m tau^(n-m).
/// Throws std::out_of_range if n > max_photons.
OutputDistribution single_input_distribution(
    PhotonCount n, const SymmetricSplitter& s,
    PhotonCount max_photons = default_single_input_max_photons);

/// One (m1, m2) path-counting term: m1 of the n1 port-1 photons and m2 of
/// the n2 port-2 photons end up at port 3,
///
///   sqrt(n1! n2! m! (N-m)!) / (m1! m2! (n1-m1)! (n2-m2)!)
///       * rho^(n2+m1-m2) tau^(n1-m1+m2),   m = m1 + m2, N = n1 + n2.
///
/// The factorial ratio is assembled as a single log-space sum.
LogMagnitudePhase path_term(const FockPair& in, PhotonCount m1,
                            PhotonCount m2, const SymmetricSplitter& s);

/// The same term written as
///   sqrt(C(n1,m1) C(n2,m2) C(m,m1) C(N-m,n1-m1)) rho^.. tau^..
/// and assembled from four square-root binomials.
LogMagnitudePhase streamlined_term(const FockPair& in, PhotonCount m1,
                                   PhotonCount m2, const SymmetricSplitter& s);

/// Sum of path_term over every (m1, m2) with m1 + m2 = m. Terms are added
/// as ordinary complex numbers so that interference cancels exactly.
/// Throws std::out_of_range if n1 + n2 > max_photons.
OutputDistribution two_input_distribution(
    const FockPair& in, const SymmetricSplitter& s,
    PhotonCount max_photons = default_max_photons);

/// As two_input_distribution, using streamlined_term.
OutputDistribution two_input_distribution_streamlined(
    const FockPair& in, const SymmetricSplitter& s,
    PhotonCount max_photons = default_max_photons);

/// Relative error |C(N,m) - N^m/m!| / C(N,m) of the many-cell
/// approximation, evaluated in log space.
/// Throws std::invalid_argument if m > N or N > 1e8.
double cell_count_approx_error(std::uint64_t cells, std::uint64_t m);

/// Poisson law approached by the reflected count when n is large and the
/// splitter weakly reflecting: mean n |rho/tau|^2.
struct PoissonReference {
  double mean = 0.0;
  std::vector<double> probabilities;  // m = 0..cutoff
};

/// Throws std::invalid_argument if tau == 0 or cutoff > n.
PoissonReference poisson_reference(PhotonCount n, const SymmetricSplitter& s,
                                   PhotonCount cutoff);

/// Half the L1 distance between `exact` and the truncated reference, plus
/// the reference mass beyond its cutoff.
double total_variation_distance(const std::vector<double>& exact,
                                const PoissonReference& reference);

}  // namespace bsplit

#endif  // BSPLIT_FEYNMAN_HPP

#ifndef BSPLIT_OPERATOR_ORACLE_HPP
#define BSPLIT_OPERATOR_ORACLE_HPP

#include <map>
#include <utility>
#include <vector>

#include "bsplit/feynman.hpp"
#include "bsplit/numerics.hpp"
#include "bsplit/splitter.hpp"

namespace bsplit {

/// Largest n1 + n2 the exact-integer expansion accepts.
inline constexpr PhotonCount default_oracle_max_photons = 64;

/// Sparse two-mode Fock-basis state. Keys are (photons in mode A, photons in
/// mode B); for splitter outputs that is (port 3, port 4). Immutable once
/// built. Amplitudes below the prune threshold are dropped at construction
/// and their probability is added to the tracked norm deficit.
class TwoModeState {
 public:
  using Key = std::pair<PhotonCount, PhotonCount>;
  using Components = std::map<Key, Amplitude>;

  static constexpr double default_prune_threshold = 1e-15;

  /// |0>|0>
  TwoModeState();

  static TwoModeState fock(PhotonCount a, PhotonCount b);

  /// `norm_deficit` is the probability already known to be missing, e.g.
  /// the tail cut off by truncation.
  static TwoModeState from_components(
      Components components, PhotonCount n_max, double norm_deficit = 0.0,
      double prune_threshold = default_prune_threshold);

  const Components& components() const noexcept { return components_; }
  Amplitude amplitude(PhotonCount a, PhotonCount b) const;
  PhotonCount n_max() const noexcept { return n_max_; }
  double norm_squared() const;
  double norm_deficit() const noexcept { return norm_deficit_; }

 private:
  Components components_;
  PhotonCount n_max_ = 0;
  double norm_deficit_ = 0.0;
};

/// <bra|ket>
Amplitude overlap(const TwoModeState& bra, const TwoModeState& ket);

/// Output of the splitter for input |n1>|n2>, obtained by expanding
/// (rho x + tau y)^n1 (tau x + rho y)^n2 / sqrt(n1! n2!) with exact integer
/// binomials and attaching sqrt(m3! m4!) to each x^m3 y^m4 monomial.
/// Throws std::out_of_range if n1 + n2 > max_photons.
TwoModeState expand_output_state(
    const FockPair& in, const SymmetricSplitter& s,
    PhotonCount max_photons = default_oracle_max_photons);

/// Linear extension of expand_output_state to superpositions.
/// Throws std::out_of_range for components above max_photons in total.
TwoModeState apply_splitter(
    const TwoModeState& in, const SymmetricSplitter& s,
    PhotonCount max_photons = default_oracle_max_photons);

/// Product of Glauber coherent states truncated at n_max photons per mode.
/// Throws std::invalid_argument if |gamma|^2 > n_max / 4 for either mode.
TwoModeState coherent_two_mode(Amplitude gamma1, Amplitude gamma2,
                               PhotonCount n_max);

/// |<coherent(rho g1 + tau g2, tau g1 + rho g2) | U coherent(g1, g2)>|^2
double coherent_passthrough_fidelity(Amplitude gamma1, Amplitude gamma2,
                                     const SymmetricSplitter& s,
                                     PhotonCount n_max);

/// Feeds |n>|0> through `steps` identical splitters, keeping only the
/// branch where exactly one photon reaches port 3 each time and re-injecting
/// the port-4 packet at port 1. Returns the amplitude of each single-photon
/// detection (the i-th entry acts on |n - i>).
/// Throws std::invalid_argument if steps > n.
std::vector<Amplitude> annihilation_cascade(PhotonCount n,
                                            const SymmetricSplitter& s,
                                            PhotonCount steps);

}  // namespace bsplit

#endif  // BSPLIT_OPERATOR_ORACLE_HPP

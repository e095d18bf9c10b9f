#ifndef BSPLIT_SCENARIOS_HPP
#define BSPLIT_SCENARIOS_HPP

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bsplit/numerics.hpp"
#include "bsplit/splitter.hpp"

namespace bsplit {

/// Probability that inputs |1>|1> leave as |1>|1>: |rho^2 + tau^2|^2.
double hom_coincidence_probability(const SymmetricSplitter& s) noexcept;

/// sqrt(n) rho tau^(n-1): one photon of |n> reflected into port 3.
/// Throws std::invalid_argument if n == 0.
Amplitude annihilation_amplitude(PhotonCount n, const SymmetricSplitter& s);

/// sqrt(n+1) rho tau^n: |n>|1> leaves as |0>|n+1>.
Amplitude creation_amplitude(PhotonCount n, const SymmetricSplitter& s);

/// Two weak splitters in series, each post-selected on one photon at
/// port 3: annihilation_amplitude(n) * annihilation_amplitude(n-1).
/// Throws std::invalid_argument if n < 2.
Amplitude cascade_two_photon_annihilator(PhotonCount n,
                                         const SymmetricSplitter& s);

using Quantity = std::variant<double, Amplitude>;
using NamedQuantities = std::vector<std::pair<std::string, Quantity>>;

/// Named, ordered inputs and outputs of one worked scenario. The order of
/// each list is part of the CLI output contract.
struct ScenarioResult {
  std::string id;
  NamedQuantities inputs;
  NamedQuantities outputs;
  std::vector<std::string> references;

  /// Throws std::out_of_range for an unknown name.
  const Quantity& output(std::string_view name) const;
};

ScenarioResult hom_scenario(const SymmetricSplitter& s);

/// Single-photon annihilation/creation amplitudes at n, the two-splitter
/// cascade, and the same quantities read back from the general solvers.
ScenarioResult cascade_scenario(PhotonCount n, const SymmetricSplitter& s);

ScenarioResult michelson_scenario(const AsymmetricSplitter& f, double phi1,
                                  double phi2);

ScenarioResult complete_family_scenario(Amplitude rho, Amplitude tau,
                                        double tau_prime_phase, Branch branch,
                                        double tol = default_construction_tolerance);

}  // namespace bsplit

#endif  // BSPLIT_SCENARIOS_HPP

#include "bsplit/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bsplit/feynman.hpp"
#include "bsplit/operator_oracle.hpp"

namespace bsplit {

double hom_coincidence_probability(const SymmetricSplitter& s) noexcept {
  return std::norm(s.rho * s.rho + s.tau * s.tau);
}

Amplitude annihilation_amplitude(PhotonCount n, const SymmetricSplitter& s) {
  if (n == 0) {
    throw std::invalid_argument("annihilation_amplitude: n must be >= 1");
  }
  return std::sqrt(static_cast<double>(n)) * s.rho *
         complex_pow(s.tau, n - 1).to_complex();
}

Amplitude creation_amplitude(PhotonCount n, const SymmetricSplitter& s) {
  return std::sqrt(static_cast<double>(n) + 1.0) * s.rho *
         complex_pow(s.tau, n).to_complex();
}

Amplitude cascade_two_photon_annihilator(PhotonCount n,
                                         const SymmetricSplitter& s) {
  if (n < 2) {
    throw std::invalid_argument("cascade_two_photon_annihilator: n must be >= 2");
  }
  return annihilation_amplitude(n, s) * annihilation_amplitude(n - 1, s);
}

const Quantity& ScenarioResult::output(std::string_view name) const {
  for (const auto& [key, value] : outputs) {
    if (key == name) return value;
  }
  throw std::out_of_range("scenario " + id + " has no output " +
                          std::string(name));
}

namespace {

NamedQuantities splitter_inputs(const SymmetricSplitter& s) {
  return {{"rho", s.rho}, {"tau", s.tau}};
}

}  // namespace

ScenarioResult hom_scenario(const SymmetricSplitter& s) {
  const FockPair pair{1, 1};
  const auto dist = two_input_distribution(pair, s);
  const auto oracle = expand_output_state(pair, s);
  return {
      "hom",
      splitter_inputs(s),
      {
          {"amplitude_0_2", dist.amplitudes[0]},
          {"amplitude_1_1", dist.amplitudes[1]},
          {"amplitude_2_0", dist.amplitudes[2]},
          {"p_coincidence", hom_coincidence_probability(s)},
          {"p_coincidence_distribution", std::norm(dist.amplitudes[1])},
          {"p_coincidence_operator", std::norm(oracle.amplitude(1, 1))},
          {"reflectance_imbalance_sq",
           std::pow(std::norm(s.rho) - std::norm(s.tau), 2)},
      },
      {"two-photon interference at a lossless splitter",
       "path-counting two-input amplitude",
       "creation-operator expansion"},
  };
}

ScenarioResult cascade_scenario(PhotonCount n, const SymmetricSplitter& s) {
  if (n < 2) throw std::invalid_argument("cascade scenario needs n >= 2");
  const auto single = two_input_distribution({n, 0}, s);
  const auto with_one = two_input_distribution({n, 1}, s);
  const double ideal =
      std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1)) *
      std::norm(s.rho);

  ScenarioResult r{
      "cascade",
      splitter_inputs(s),
      {
          {"annihilation_amplitude", annihilation_amplitude(n, s)},
          {"annihilation_from_distribution", single.amplitudes[1]},
          {"creation_amplitude", creation_amplitude(n, s)},
          {"creation_from_distribution", with_one.amplitudes[0]},
          {"cascade_amplitude", cascade_two_photon_annihilator(n, s)},
          {"ideal_two_photon_magnitude", ideal},
          {"single_splitter_two_photon", single.amplitudes[2]},
      },
      {"single-photon annihilation by a weak splitter",
       "single-photon creation by a weak splitter",
       "two-splitter two-photon annihilator"},
  };
  r.inputs.insert(r.inputs.begin(), {"n", static_cast<double>(n)});
  if (n <= default_oracle_max_photons) {
    const auto steps = annihilation_cascade(n, s, 2);
    r.outputs.emplace_back("cascade_from_operator", steps[0] * steps[1]);
  }
  return r;
}

ScenarioResult michelson_scenario(const AsymmetricSplitter& f, double phi1,
                                  double phi2) {
  const auto [psi1, psi2] = michelson_amplitudes(f, phi1, phi2);
  return {
      "michelson",
      {{"phi1", phi1}, {"phi2", phi2}},
      {
          {"psi1", psi1},
          {"psi2", psi2},
          {"p1", std::norm(psi1)},
          {"p2", std::norm(psi2)},
          {"lossless_residual", lossless_residual(f, phi1 - phi2)},
      },
      {"Michelson interferometer channel amplitudes",
       "lossless identity in the arm phase difference"},
  };
}

ScenarioResult complete_family_scenario(Amplitude rho, Amplitude tau,
                                        double tau_prime_phase, Branch branch,
                                        double tol) {
  const auto f = complete_family(rho, tau, tau_prime_phase, branch, tol);
  const auto tr = time_reversal_residuals(f);
  return {
      "complete-family",
      {{"rho", rho},
       {"tau", tau},
       {"tau_prime_phase", tau_prime_phase},
       {"branch", branch_sign(branch)}},
      {
          {"rho", f.rho},
          {"tau", f.tau},
          {"rho_p", f.rho_p},
          {"tau_p", f.tau_p},
          {"rho_pp", f.rho_pp},
          {"tau_pp", f.tau_pp},
          {"rho_ppp", f.rho_ppp},
          {"tau_ppp", f.tau_ppp},
          {"time_reversal_direct", tr.direct},
          {"time_reversal_cross", tr.cross},
      },
      {"energy conservation in a Michelson interferometer",
       "time reversal with phase-conjugate mirrors"},
  };
}

}  // namespace bsplit

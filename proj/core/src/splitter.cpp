#include "bsplit/splitter.hpp"

#include <cmath>
#include <stdexcept>

namespace bsplit {

namespace {

double norm_defect(Amplitude a, Amplitude b) {
  return std::abs(std::norm(a) + std::norm(b) - 1.0);
}

bool any_zero(std::initializer_list<Amplitude> zs) {
  for (const auto& z : zs) {
    if (z == Amplitude{}) return true;
  }
  return false;
}

}  // namespace

SymmetricSplitter SymmetricSplitter::from_reflectance(double reflectance,
                                                      double rho_phase) {
  if (!(reflectance >= 0.0 && reflectance <= 1.0)) {
    throw std::invalid_argument("reflectance must lie in [0, 1]");
  }
  return from_polar(std::sqrt(reflectance), rho_phase,
                    std::sqrt(1.0 - reflectance), rho_phase + pi / 2);
}

void ConstraintReport::add(std::string name, double residual) {
  checks_.push_back({std::move(name), residual, residual <= tolerance_});
}

bool ConstraintReport::passed() const noexcept {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

const ConstraintCheck& ConstraintReport::at(std::string_view name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no constraint named " + std::string(name));
}

ConstraintReport validate_symmetric(const SymmetricSplitter& s, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ConstraintReport report(tol);
  report.add("unitarity", norm_defect(s.rho, s.tau));
  // arg(0) is undefined, so a perfect mirror or window has no phase rule.
  const double quadrature =
      any_zero({s.rho, s.tau})
          ? 0.0
          : std::abs(std::cos(phase_of(s.rho) - phase_of(s.tau)));
  report.add("quadrature", quadrature);
  return report;
}

ConstraintReport validate_family(const AsymmetricSplitter& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ConstraintReport report(tol);
  report.add("unitarity_front", norm_defect(f.rho, f.tau));
  report.add("unitarity_mirror1", norm_defect(f.rho_p, f.tau_p));
  report.add("unitarity_mirror2", norm_defect(f.rho_pp, f.tau_pp));
  report.add("reflection_magnitude_match",
             std::abs(std::abs(f.rho_p) - std::abs(f.rho_pp)));
  report.add("transmission_magnitude_match",
             std::abs(std::abs(f.tau_p) - std::abs(f.tau_pp)));

  double phase_sum = 0.0;
  if (!any_zero({f.rho_p, f.rho_pp, f.tau_p, f.tau_pp})) {
    const double d = normalize_phase(
        (phase_of(f.rho_p) + phase_of(f.rho_pp)) -
        (phase_of(f.tau_p) + phase_of(f.tau_pp)));
    phase_sum = pi - std::abs(d);  // distance from +-pi
  }
  report.add("phase_sum", phase_sum);

  const auto tr = time_reversal_residuals(f);
  report.add("time_reversal_direct", std::abs(tr.direct));
  report.add("time_reversal_cross", std::abs(tr.cross));
  report.add("backside_reflection", std::abs(f.rho_ppp - f.rho_pp));
  report.add("backside_transmission", std::abs(f.tau_ppp - f.tau_p));
  return report;
}

MichelsonAmplitudes michelson_amplitudes(const AsymmetricSplitter& f,
                                         double phi1, double phi2) noexcept {
  const Amplitude arm1 = std::polar(1.0, phi1);
  const Amplitude arm2 = std::polar(1.0, phi2);
  return {f.rho * f.rho_p * arm1 + f.tau * f.tau_pp * arm2,
          f.rho * f.tau_p * arm1 + f.tau * f.rho_pp * arm2};
}

double lossless_residual(const AsymmetricSplitter& f,
                         double delta_phi) noexcept {
  const auto [psi1, psi2] = michelson_amplitudes(f, delta_phi, 0.0);
  return std::norm(psi1) + std::norm(psi2) - 1.0;
}

AsymmetricSplitter complete_family(Amplitude rho, Amplitude tau,
                                   double tau_prime_phase, Branch branch,
                                   double tol) {
  if (!(norm_defect(rho, tau) <= tol)) {
    throw std::invalid_argument(
        "complete_family: |rho|^2 + |tau|^2 must equal 1");
  }
  const double r = std::abs(rho);
  const double t = std::abs(tau);
  const Amplitude tau_p = std::polar(t, tau_prime_phase);
  const Amplitude rho_pp = std::polar(
      r, normalize_phase(phase_of(tau) + tau_prime_phase - phase_of(rho) +
                         branch_sign(branch) * pi));
  return {rho, tau, rho, tau_p, rho_pp, tau, rho_pp, tau_p};
}

TimeReversalResiduals time_reversal_residuals(
    const AsymmetricSplitter& f) noexcept {
  return {std::conj(f.rho) * f.rho_p + std::conj(f.tau) * f.tau_pp - 1.0,
          std::conj(f.rho) * f.tau_p + std::conj(f.tau) * f.rho_pp};
}

}  // namespace bsplit

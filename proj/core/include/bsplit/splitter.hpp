#ifndef BSPLIT_SPLITTER_HPP
#define BSPLIT_SPLITTER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bsplit/numerics.hpp"

namespace bsplit {

inline constexpr double default_construction_tolerance = 1e-10;
inline constexpr double default_identity_tolerance = 1e-12;

/// Lossless splitter whose (rho, tau) are shared by both input ports.
struct SymmetricSplitter {
  Amplitude rho;
  Amplitude tau;

  static SymmetricSplitter from_polar(double rho_mag, double rho_phase,
                                      double tau_mag, double tau_phase) {
    return {std::polar(rho_mag, rho_phase), std::polar(tau_mag, tau_phase)};
  }
  /// |rho| = sqrt(reflectance), tau = sqrt(1 - reflectance) at rho phase + pi/2.
  static SymmetricSplitter from_reflectance(double reflectance,
                                            double rho_phase = 0.0);
};

/// The coefficient pairs for the four incidence geometries: front
/// (rho, tau), return from mirror 1 (rho_p, tau_p), return from mirror 2 on
/// the back side (rho_pp, tau_pp), and back-side incidence (rho_ppp, tau_ppp).
struct AsymmetricSplitter {
  Amplitude rho, tau;
  Amplitude rho_p, tau_p;
  Amplitude rho_pp, tau_pp;
  Amplitude rho_ppp, tau_ppp;

  /// Every geometry sees the same (rho, tau).
  static AsymmetricSplitter uniform(const SymmetricSplitter& s) {
    return {s.rho, s.tau, s.rho, s.tau, s.rho, s.tau, s.rho, s.tau};
  }
};

/// Selects the +pi or -pi solution of the reflection/transmission phase-sum
/// constraint. Both are physical; callers must choose.
enum class Branch { plus, minus };

constexpr double branch_sign(Branch b) noexcept {
  return b == Branch::plus ? 1.0 : -1.0;
}

struct ConstraintCheck {
  std::string name;
  double residual;  // magnitude of violation, >= 0
  bool pass;
};

class ConstraintReport {
 public:
  explicit ConstraintReport(double tolerance) : tolerance_(tolerance) {}

  void add(std::string name, double residual);

  bool passed() const noexcept;
  double tolerance() const noexcept { return tolerance_; }
  const std::vector<ConstraintCheck>& checks() const noexcept {
    return checks_;
  }
  /// Throws std::out_of_range for an unknown name.
  const ConstraintCheck& at(std::string_view name) const;

 private:
  double tolerance_;
  std::vector<ConstraintCheck> checks_;
};

/// Residuals "unitarity" = ||rho|^2 + |tau|^2 - 1| and
/// "quadrature" = |cos(phi_rho - phi_tau)|. The quadrature residual is 0
/// when either coefficient vanishes. Throws std::invalid_argument if tol <= 0.
ConstraintReport validate_symmetric(const SymmetricSplitter& s,
                                    double tol = default_construction_tolerance);

/// Checks every invariant of a full coefficient family: per-geometry
/// unitarity, matching magnitudes, the phase-sum rule, the two
/// time-reversal identities and the back-side coefficients.
ConstraintReport validate_family(const AsymmetricSplitter& f,
                                 double tol = default_identity_tolerance);

struct MichelsonAmplitudes {
  Amplitude psi1;
  Amplitude psi2;
};

/// Amplitudes for a photon entering channel 1 of a Michelson interferometer
/// to leave through channel 1 or 2, given round-trip arm phases phi1, phi2.
MichelsonAmplitudes michelson_amplitudes(const AsymmetricSplitter& f,
                                         double phi1, double phi2) noexcept;

/// |psi1|^2 + |psi2|^2 - 1 at phi1 - phi2 = delta_phi (signed).
double lossless_residual(const AsymmetricSplitter& f, double delta_phi) noexcept;

/// Builds the family implied by losslessness plus time reversal from the
/// front coefficients and the (otherwise undetermined) phase of tau_p.
/// Throws std::invalid_argument unless ||rho|^2 + |tau|^2 - 1| <= tol.
AsymmetricSplitter complete_family(Amplitude rho, Amplitude tau,
                                   double tau_prime_phase, Branch branch,
                                   double tol = default_construction_tolerance);

struct TimeReversalResiduals {
  Amplitude direct;  // conj(rho) rho_p + conj(tau) tau_pp - 1
  Amplitude cross;   // conj(rho) tau_p + conj(tau) rho_pp
};

TimeReversalResiduals time_reversal_residuals(
    const AsymmetricSplitter& f) noexcept;

}  // namespace bsplit

#endif  // BSPLIT_SPLITTER_HPP

#include "bsplit/operator_oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bsplit {

namespace {

namespace mp = boost::multiprecision;

constexpr PhotonCount exact_table_size = 128;

const std::array<mp::cpp_int, exact_table_size + 1>& factorials() {
  static const auto table = [] {
    std::array<mp::cpp_int, exact_table_size + 1> f;
    f[0] = 1;
    for (PhotonCount k = 1; k <= exact_table_size; ++k) f[k] = f[k - 1] * k;
    return f;
  }();
  return table;
}

mp::cpp_int binomial(PhotonCount n, PhotonCount k) {
  const auto& f = factorials();
  return f[n] / (f[k] * f[n - k]);
}

// sqrt(m3! m4! / (n1! n2!)), rounded to double once.
double number_state_factor(PhotonCount n1, PhotonCount n2, PhotonCount m3) {
  const auto& f = factorials();
  const PhotonCount m4 = n1 + n2 - m3;
  const mp::cpp_rational ratio(f[m3] * f[m4], f[n1] * f[n2]);
  return std::sqrt(ratio.convert_to<double>());
}

std::vector<Amplitude> powers(Amplitude z, PhotonCount up_to) {
  std::vector<Amplitude> p(up_to + 1);
  p[0] = 1.0;
  for (PhotonCount k = 1; k <= up_to; ++k) p[k] = p[k - 1] * z;
  return p;
}

void check_oracle_limit(PhotonCount total, PhotonCount max_photons) {
  if (max_photons > exact_table_size) {
    throw std::out_of_range("oracle photon limit above " +
                            std::to_string(exact_table_size));
  }
  if (total > max_photons) {
    throw std::out_of_range("photon count " + std::to_string(total) +
                            " exceeds the oracle maximum " +
                            std::to_string(max_photons));
  }
}

// Amplitudes c[k] = e^{-|g|^2/2} g^k / sqrt(k!) for k <= n_max, and the
// probability lying above n_max.
std::pair<std::vector<Amplitude>, double> coherent_mode(Amplitude gamma,
                                                        PhotonCount n_max) {
  std::vector<Amplitude> c(n_max + 1);
  const double mean = std::norm(gamma);
  c[0] = std::exp(-0.5 * mean);
  for (PhotonCount k = 1; k <= n_max; ++k) {
    c[k] = c[k - 1] * gamma / std::sqrt(static_cast<double>(k));
  }
  // Poisson tail by forward recursion; terms fall at least geometrically
  // once k > mean.
  double tail = 0.0;
  double p = std::norm(c[n_max]);
  for (PhotonCount k = n_max + 1; p > 0.0; ++k) {
    p *= mean / static_cast<double>(k);
    tail += p;
    if (p < 1e-40 * tail || k > n_max + 10'000) break;
  }
  return {std::move(c), tail};
}

}  // namespace

TwoModeState::TwoModeState() : components_{{{0, 0}, Amplitude{1.0}}} {}

TwoModeState TwoModeState::fock(PhotonCount a, PhotonCount b) {
  TwoModeState s;
  s.components_ = {{{a, b}, Amplitude{1.0}}};
  s.n_max_ = std::max(a, b);
  return s;
}

TwoModeState TwoModeState::from_components(Components components,
                                           PhotonCount n_max,
                                           double norm_deficit,
                                           double prune_threshold) {
  TwoModeState s;
  s.components_.clear();
  s.n_max_ = n_max;
  s.norm_deficit_ = norm_deficit;
  for (auto& [key, amp] : components) {
    if (key.first > n_max || key.second > n_max) {
      throw std::invalid_argument("component occupation exceeds n_max");
    }
    if (std::abs(amp) < prune_threshold) {
      s.norm_deficit_ += std::norm(amp);
      continue;
    }
    s.components_.emplace(key, amp);
  }
  return s;
}

Amplitude TwoModeState::amplitude(PhotonCount a, PhotonCount b) const {
  const auto it = components_.find({a, b});
  return it == components_.end() ? Amplitude{} : it->second;
}

double TwoModeState::norm_squared() const {
  double sum = 0.0;
  for (const auto& [key, amp] : components_) sum += std::norm(amp);
  return sum;
}

Amplitude overlap(const TwoModeState& bra, const TwoModeState& ket) {
  Amplitude sum{};
  const auto& small = bra.components().size() <= ket.components().size()
                          ? bra.components()
                          : ket.components();
  for (const auto& [key, amp] : small) {
    sum += std::conj(bra.amplitude(key.first, key.second)) *
           ket.amplitude(key.first, key.second);
  }
  return sum;
}

TwoModeState expand_output_state(const FockPair& in,
                                 const SymmetricSplitter& s,
                                 PhotonCount max_photons) {
  const PhotonCount total = in.total();
  check_oracle_limit(total, max_photons);
  const auto rho_pow = powers(s.rho, total);
  const auto tau_pow = powers(s.tau, total);

  // (rho x + tau y)^n1: x^m1 y^(n1-m1) with C(n1,m1) rho^m1 tau^(n1-m1)
  // (tau x + rho y)^n2: x^m2 y^(n2-m2) with C(n2,m2) tau^m2 rho^(n2-m2)
  std::vector<mp::cpp_int> first(in.n1 + 1), second(in.n2 + 1);
  for (PhotonCount k = 0; k <= in.n1; ++k) first[k] = binomial(in.n1, k);
  for (PhotonCount k = 0; k <= in.n2; ++k) second[k] = binomial(in.n2, k);

  TwoModeState::Components out;
  for (PhotonCount m1 = 0; m1 <= in.n1; ++m1) {
    for (PhotonCount m2 = 0; m2 <= in.n2; ++m2) {
      const mp::cpp_int weight = first[m1] * second[m2];
      const Amplitude term = weight.convert_to<double>() *
                             rho_pow[m1 + in.n2 - m2] *
                             tau_pow[in.n1 - m1 + m2];
      out[{m1 + m2, total - m1 - m2}] += term;
    }
  }
  for (auto& [key, amp] : out) {
    amp *= number_state_factor(in.n1, in.n2, key.first);
  }
  return TwoModeState::from_components(std::move(out), total);
}

TwoModeState apply_splitter(const TwoModeState& in, const SymmetricSplitter& s,
                            PhotonCount max_photons) {
  TwoModeState::Components out;
  PhotonCount n_max = 0;
  for (const auto& [key, amp] : in.components()) {
    const FockPair pair{key.first, key.second};
    check_oracle_limit(pair.total(), max_photons);
    const TwoModeState expanded = expand_output_state(pair, s, max_photons);
    for (const auto& [okey, oamp] : expanded.components()) {
      out[okey] += amp * oamp;
    }
    n_max = std::max(n_max, pair.total());
  }
  return TwoModeState::from_components(std::move(out), n_max,
                                       in.norm_deficit());
}

TwoModeState coherent_two_mode(Amplitude gamma1, Amplitude gamma2,
                               PhotonCount n_max) {
  const double limit = static_cast<double>(n_max) / 4.0;
  if (std::norm(gamma1) > limit || std::norm(gamma2) > limit) {
    throw std::invalid_argument(
        "coherent_two_mode: truncation too small, need |gamma|^2 <= n_max/4");
  }
  const auto [c1, tail1] = coherent_mode(gamma1, n_max);
  const auto [c2, tail2] = coherent_mode(gamma2, n_max);
  TwoModeState::Components comps;
  for (PhotonCount a = 0; a <= n_max; ++a) {
    for (PhotonCount b = 0; b <= n_max; ++b) {
      comps[{a, b}] = c1[a] * c2[b];
    }
  }
  return TwoModeState::from_components(std::move(comps), n_max,
                                       tail1 + tail2 - tail1 * tail2);
}

double coherent_passthrough_fidelity(Amplitude gamma1, Amplitude gamma2,
                                     const SymmetricSplitter& s,
                                     PhotonCount n_max) {
  const TwoModeState input = coherent_two_mode(gamma1, gamma2, n_max);
  const TwoModeState expected =
      coherent_two_mode(s.rho * gamma1 + s.tau * gamma2,
                        s.tau * gamma1 + s.rho * gamma2, n_max);
  const TwoModeState actual = apply_splitter(input, s);
  return std::norm(overlap(expected, actual));
}

std::vector<Amplitude> annihilation_cascade(PhotonCount n,
                                            const SymmetricSplitter& s,
                                            PhotonCount steps) {
  if (steps > n) {
    throw std::invalid_argument("annihilation_cascade: more steps than photons");
  }
  std::vector<Amplitude> amplitudes;
  amplitudes.reserve(steps);
  TwoModeState packet = TwoModeState::fock(n, 0);
  for (PhotonCount i = 0; i < steps; ++i) {
    const TwoModeState out = apply_splitter(packet, s);
    const PhotonCount remaining = n - i - 1;
    amplitudes.push_back(out.amplitude(1, remaining));
    packet = TwoModeState::fock(remaining, 0);
  }
  return amplitudes;
}

}  // namespace bsplit

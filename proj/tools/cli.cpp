#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsplit/feynman.hpp"
#include "bsplit/operator_oracle.hpp"
#include "bsplit/scenarios.hpp"
#include "bsplit/splitter.hpp"

namespace bsplit::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, csv };

double radians(double degrees) { return degrees * pi / 180.0; }

// Shortest representation that round-trips; locale independent.
std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json complex_json(Amplitude z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json quantity_json(const Quantity& q) {
  return std::visit(
      [](const auto& v) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
          return v;
        } else {
          return complex_json(v);
        }
      },
      q);
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct SplitterArgs {
  double rho_mag = std::sqrt(0.5);
  double rho_deg = 0.0;
  std::optional<double> tau_mag;
  std::optional<double> tau_deg;

  void attach(CLI::App* app) {
    app->add_option("--rho-mag", rho_mag, "reflection coefficient magnitude")
        ->capture_default_str();
    app->add_option("--rho-deg", rho_deg, "reflection phase in degrees")
        ->capture_default_str();
    app->add_option("--tau-mag", tau_mag,
                    "transmission magnitude [default: sqrt(1 - rho-mag^2)]");
    app->add_option("--tau-deg", tau_deg,
                    "transmission phase in degrees [default: rho-deg + 90]");
  }

  SymmetricSplitter splitter() const {
    const double tm = tau_mag.value_or(std::sqrt(std::max(0.0, 1.0 - rho_mag * rho_mag)));
    const double td = tau_deg.value_or(rho_deg + 90.0);
    return SymmetricSplitter::from_polar(rho_mag, radians(rho_deg), tm,
                                         radians(td));
  }

  json inputs() const {
    const auto s = splitter();
    return json{{"rho", complex_json(s.rho)}, {"tau", complex_json(s.tau)}};
  }
};

struct CommonArgs {
  std::string format = "json";
  double tol = default_construction_tolerance;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app->add_option("--tol", tol, "validation tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
};

json report_json(const ConstraintReport& report) {
  json residuals = json::object();
  json passes = json::object();
  for (const auto& c : report.checks()) {
    residuals[c.name] = c.residual;
    passes[c.name] = c.pass;
  }
  return json{{"tolerance", report.tolerance()},
              {"residuals", residuals},
              {"pass", passes},
              {"valid", report.passed()}};
}

void emit_report(std::ostream& out, const ConstraintReport& report,
                 const json& inputs, Format fmt) {
  if (fmt == Format::csv) {
    out << "constraint,residual,pass\n";
    for (const auto& c : report.checks()) {
      out << c.name << ',' << number(c.residual) << ','
          << (c.pass ? "true" : "false") << '\n';
    }
    return;
  }
  json j{{"inputs", inputs}};
  j.update(report_json(report));
  j["paper_refs"] = {"lossless symmetric splitter: unit norm and quadrature phases"};
  emit_json(out, j);
}

// Physics-invalid splitters stop every command except `validate`.
bool require_valid(const SplitterArgs& sa, const CommonArgs& ca,
                   std::ostream& err) {
  const auto report = validate_symmetric(sa.splitter(), ca.tol);
  if (report.passed()) return true;
  err << "error: splitter violates the lossless constraints\n";
  emit_report(err, report, sa.inputs(), ca.fmt());
  return false;
}

void emit_scenario(std::ostream& out, const ScenarioResult& r, Format fmt,
                   const json& extra = json::object()) {
  if (fmt == Format::csv) {
    out << "quantity,re,im\n";
    for (const auto& [name, q] : r.outputs) {
      const Amplitude z = std::visit([](auto v) { return Amplitude(v); }, q);
      out << name << ',' << number(z.real()) << ',' << number(z.imag()) << '\n';
    }
    return;
  }
  json inputs = json::object();
  for (const auto& [name, q] : r.inputs) inputs[name] = quantity_json(q);
  json outputs = json::object();
  for (const auto& [name, q] : r.outputs) outputs[name] = quantity_json(q);
  json j{{"scenario", r.id}, {"inputs", inputs}, {"outputs", outputs}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  j["paper_refs"] = r.references;
  emit_json(out, j);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Photon-number statistics of a lossless beam splitter", "bsplit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::function<int()> action;

  // validate
  SplitterArgs v_split;
  CommonArgs v_common;
  auto* validate = app.add_subcommand(
      "validate", "check |rho|^2 + |tau|^2 = 1 and the 90 degree phase rule");
  v_split.attach(validate);
  v_common.attach(validate);
  validate->callback([&] {
    action = [&] {
      const auto report = validate_symmetric(v_split.splitter(), v_common.tol);
      emit_report(out, report, v_split.inputs(), v_common.fmt());
      return report.passed() ? exit_ok : exit_invalid;
    };
  });

  // distribution
  SplitterArgs d_split;
  CommonArgs d_common;
  PhotonCount n1 = 0, n2 = 0;
  std::string method = "path";
  auto* distribution = app.add_subcommand(
      "distribution", "output photon-number distribution for |n1>|n2>");
  distribution->add_option("--n1", n1, "photons at port 1")->required();
  distribution->add_option("--n2", n2, "photons at port 2")->capture_default_str();
  distribution
      ->add_option("--method", method,
                   "path: log-space path counting; streamlined: product of "
                   "square-root binomials; operator: exact-integer creation "
                   "operator expansion (n1 + n2 <= 64)")
      ->check(CLI::IsMember({"path", "streamlined", "operator"}))
      ->capture_default_str();
  d_split.attach(distribution);
  d_common.attach(distribution);
  distribution->callback([&] {
    action = [&] {
      if (!require_valid(d_split, d_common, err)) return exit_invalid;
      const auto s = d_split.splitter();
      const FockPair pair{n1, n2};
      OutputDistribution dist;
      if (method == "operator") {
        const auto state = expand_output_state(pair, s);
        dist.total = pair.total();
        dist.amplitudes.resize(dist.total + 1);
        for (PhotonCount m = 0; m <= dist.total; ++m) {
          dist.amplitudes[m] = state.amplitude(m, dist.total - m);
        }
      } else if (method == "streamlined") {
        dist = two_input_distribution_streamlined(pair, s);
      } else {
        dist = two_input_distribution(pair, s);
      }
      const auto probs = dist.probabilities();
      if (d_common.fmt() == Format::csv) {
        out << "m,probability,re,im\n";
        for (PhotonCount m = 0; m <= dist.total; ++m) {
          out << m << ',' << number(probs[m]) << ','
              << number(dist.amplitudes[m].real()) << ','
              << number(dist.amplitudes[m].imag()) << '\n';
        }
        return exit_ok;
      }
      json inputs{{"n1", n1}, {"n2", n2}, {"method", method}};
      inputs.update(d_split.inputs());
      json amps = json::array();
      for (const auto& a : dist.amplitudes) amps.push_back(complex_json(a));
      emit_json(out, json{{"inputs", inputs},
                          {"probabilities", probs},
                          {"amplitudes", amps},
                          {"checks", {{"norm_residual", dist.norm_residual()}}},
                          {"paper_refs",
                           {method == "operator"
                                ? "creation-operator expansion of |n1>|n2>"
                                : "path-counting two-input amplitude"}}});
      return exit_ok;
    };
  });

  // hom-scan
  CommonArgs h_common;
  unsigned steps = 101;
  double h_rho_deg = 0.0;
  auto* hom = app.add_subcommand(
      "hom-scan", "|1>|1> coincidence probability across reflectance");
  hom->add_option("--steps", steps, "number of reflectance samples in [0, 1]")
      ->check(CLI::Range(2u, 1'000'000u))
      ->capture_default_str();
  hom->add_option("--rho-deg", h_rho_deg, "reflection phase in degrees")
      ->capture_default_str();
  h_common.attach(hom);
  hom->callback([&] {
    action = [&] {
      std::vector<std::pair<double, double>> rows;
      rows.reserve(steps);
      for (unsigned i = 0; i < steps; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(steps - 1);
        const auto s = SymmetricSplitter::from_reflectance(r, radians(h_rho_deg));
        rows.emplace_back(r, hom_coincidence_probability(s));
      }
      if (h_common.fmt() == Format::csv) {
        out << "rho_mag_sq,p11\n";
        for (const auto& [r, p] : rows) out << number(r) << ',' << number(p) << '\n';
        return exit_ok;
      }
      json jrows = json::array();
      for (const auto& [r, p] : rows) jrows.push_back({{"rho_mag_sq", r}, {"p11", p}});
      emit_json(out, json{{"inputs", {{"steps", steps}, {"rho_deg", h_rho_deg}}},
                          {"rows", jrows},
                          {"paper_refs", {"two-photon interference at a lossless splitter"}}});
      return exit_ok;
    };
  });

  // complete-family and michelson share the family construction.
  SplitterArgs f_split;
  CommonArgs f_common;
  std::optional<double> tau_prime_deg;
  std::string branch_name;
  double phi1_deg = 0.0, phi2_deg = 0.0;
  auto attach_family = [&](CLI::App* sub) {
    f_split.attach(sub);
    f_common.attach(sub);
    sub->add_option("--tau-prime-deg", tau_prime_deg,
                    "phase of tau' in degrees [default: tau phase]");
    sub->add_option("--branch", branch_name, "sign of the pi in the phase-sum rule")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->required();
  };
  auto family_inputs = [&] {
    const auto s = f_split.splitter();
    const double tp = tau_prime_deg ? radians(*tau_prime_deg) : phase_of(s.tau);
    const Branch b = branch_name == "plus" ? Branch::plus : Branch::minus;
    return std::tuple{s, tp, b};
  };

  auto* family = app.add_subcommand(
      "complete-family", "all eight coefficients implied by (rho, tau, tau')");
  attach_family(family);
  family->callback([&] {
    action = [&] {
      if (!require_valid(f_split, f_common, err)) return exit_invalid;
      const auto [s, tp, b] = family_inputs();
      const auto r = complete_family_scenario(s.rho, s.tau, tp, b, f_common.tol);
      const auto f = complete_family(s.rho, s.tau, tp, b, f_common.tol);
      emit_scenario(out, r, f_common.fmt(),
                    json{{"checks", report_json(validate_family(f))}});
      return exit_ok;
    };
  });

  auto* michelson = app.add_subcommand(
      "michelson", "channel amplitudes of a Michelson interferometer");
  attach_family(michelson);
  michelson->add_option("--phi1-deg", phi1_deg, "round-trip phase of arm 1")
      ->capture_default_str();
  michelson->add_option("--phi2-deg", phi2_deg, "round-trip phase of arm 2")
      ->capture_default_str();
  michelson->callback([&] {
    action = [&] {
      if (!require_valid(f_split, f_common, err)) return exit_invalid;
      const auto [s, tp, b] = family_inputs();
      const auto f = complete_family(s.rho, s.tau, tp, b, f_common.tol);
      emit_scenario(out, michelson_scenario(f, radians(phi1_deg), radians(phi2_deg)),
                    f_common.fmt());
      return exit_ok;
    };
  });

  // poisson-compare
  SplitterArgs p_split;
  CommonArgs p_common;
  PhotonCount p_n = 0;
  std::optional<PhotonCount> cutoff;
  auto* poisson = app.add_subcommand(
      "poisson-compare", "reflected-count distribution of |n> versus its Poisson limit");
  poisson->add_option("--n", p_n, "photons at port 1")->required();
  poisson->add_option("--cutoff", cutoff, "last m of the Poisson table [default: min(n, 64)]");
  p_split.attach(poisson);
  p_common.attach(poisson);
  poisson->callback([&] {
    action = [&] {
      if (!require_valid(p_split, p_common, err)) return exit_invalid;
      const auto s = p_split.splitter();
      const auto exact = single_input_distribution(p_n, s).probabilities();
      const auto ref = poisson_reference(
          p_n, s, cutoff.value_or(std::min<PhotonCount>(p_n, 64)));
      const double tv = total_variation_distance(exact, ref);
      const std::size_t rows = ref.probabilities.size();
      if (p_common.fmt() == Format::csv) {
        out << "m,exact,poisson\n";
        for (std::size_t m = 0; m < rows; ++m) {
          out << m << ',' << number(exact[m]) << ','
              << number(ref.probabilities[m]) << '\n';
        }
        return exit_ok;
      }
      json jrows = json::array();
      for (std::size_t m = 0; m < rows; ++m) {
        jrows.push_back({{"m", m}, {"exact", exact[m]}, {"poisson", ref.probabilities[m]}});
      }
      json inputs{{"n", p_n}, {"cutoff", rows - 1}};
      inputs.update(p_split.inputs());
      emit_json(out, json{{"inputs", inputs},
                          {"mean", ref.mean},
                          {"tv_distance", tv},
                          {"rows", jrows},
                          {"paper_refs", {"Poisson limit of weak reflection"}}});
      return exit_ok;
    };
  });

  // cascade
  SplitterArgs c_split;
  CommonArgs c_common;
  PhotonCount c_n = 0;
  auto* cascade = app.add_subcommand(
      "cascade", "single-photon annihilation/creation and the two-splitter cascade");
  cascade->add_option("--n", c_n, "photons in the incoming packet (>= 2)")
      ->required()
      ->check(CLI::Range(2u, default_max_photons - 1));
  c_split.attach(cascade);
  c_common.attach(cascade);
  cascade->callback([&] {
    action = [&] {
      if (!require_valid(c_split, c_common, err)) return exit_invalid;
      emit_scenario(out, cascade_scenario(c_n, c_split.splitter()), c_common.fmt());
      return exit_ok;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; everything else prints usage and exits 2
    return app.exit(e, out, err) == 0 ? exit_ok : exit_invalid;
  }

  try {
    return action ? action() : exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_invalid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv{"bsplit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bsplit::cli

// Command-line front end: every verification and exploration as a subcommand
// with machine-readable output (JSON with sorted keys, CSV with '.' decimals).
//
// Exit codes: 0 success, 2 validation/usage error, 3 numerical non-convergence.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptpu/complex_format.hpp"
#include "ptpu/contour.hpp"
#include "ptpu/errors.hpp"
#include "ptpu/fock.hpp"
#include "ptpu/jet_polynomial.hpp"
#include "ptpu/kernel.hpp"
#include "ptpu/pu_transform.hpp"
#include "ptpu/qft.hpp"

namespace {

using ptpu::Complex;
using json = nlohmann::json;

json complex_json(const Complex& z) { return json{{"im", z.imag()}, {"re", z.real()}}; }

json conventions_block() {
  return json{
      {"charge_conjugation", "C = i*gamma2*gamma0 (Dirac representation)"},
      {"contour_phase", "theta = -arg(mass*omega)/2 (principal)"},
      {"frequency_root", "principal square root"},
      {"metric_signature", "(+,-,-,-)"},
      {"retardation", "kernels evaluated for dt >= 0; causal spectra need Im(omega) < 0"},
      {"rho_branch", "rho = sqrt(|mass*omega|/hbar)*s, rho >= 0 for s >= 0"},
  };
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
  file << text;
  if (text.empty() || text.back() != '\n') file << '\n';
}

void emit_json(const std::string& out_path, json j) {
  j["conventions"] = conventions_block();
  emit(out_path, j.dump(2));
}

// complex flags are collected as strings ("a", "a+bi", "a-bi") and parsed on use
struct ComplexFlag {
  std::string text;
  Complex value(const Complex& fallback = Complex(0.0)) const {
    return text.empty() ? fallback : ptpu::parse_complex(text);
  }
};

void add_complex_option(CLI::App* cmd, const std::string& name, ComplexFlag& flag,
                        const std::string& desc, bool required = false) {
  CLI::Option* opt = cmd->add_option(name, flag.text, desc);
  if (required) opt->required();
}

struct SpectrumArgs {
  ComplexFlag omega1, omega2;
  double hbar = 1.0;
  int max = 2;
  bool holomorphic_only = false;
  std::string out;
};

int run_spectrum(const SpectrumArgs& args) {
  ptpu::TwoOscillatorParams params;
  params.omega1 = args.omega1.value(Complex(1.0));
  params.omega2 = args.omega2.value(Complex(2.0));
  params.hbar = args.hbar;
  params.validate();

  json out;
  if (args.holomorphic_only) {
    json arr = json::array();
    for (int m1 = 0; m1 <= args.max; ++m1) {
      for (int m2 = 0; m2 <= args.max; ++m2) {
        Complex e = ptpu::holomorphic_energy(params, m1, m2);
        arr.push_back(json{{"im", e.imag()}, {"label", {m1, m2}}, {"re", e.real()}});
      }
    }
    out["spectrum"] = arr;
  } else {
    out["spectrum"] = json::parse(ptpu::spectrum_json(params, args.max));
  }
  emit_json(args.out, out);
  return 0;
}

struct PuConvertArgs {
  ComplexFlag m1, m2, omega1, omega2;
  std::string out;
};

int run_pu_convert(const PuConvertArgs& args) {
  ptpu::TwoOscillatorParams params;
  params.mass1 = args.m1.value(Complex(1.0));
  params.mass2 = args.m2.value(Complex(1.0));
  params.omega1 = args.omega1.value(Complex(1.0));
  params.omega2 = args.omega2.value(Complex(2.0));
  params.validate();

  ptpu::DerivativePolynomial direct = ptpu::pu_lagrangian(params);
  ptpu::DerivativePolynomial partial = ptpu::pu_lagrangian_partial_integrated(params);
  double tol = 1e-12 * std::max(1.0, direct.max_abs_coefficient());

  json out;
  out["pu_lagrangian"] = json::parse(direct.to_json());
  out["partial_integrated"] = json::parse(partial.to_json());
  out["equivalent_up_to_total_derivative"] =
      ptpu::equivalent_up_to_total_derivative(direct, partial, tol);

  ptpu::ElFactorization fact = ptpu::pu_el_factorization(params);
  json quotient = json::array();
  for (const Complex& c : fact.quotient) quotient.push_back(complex_json(c));
  json remainder = json::array();
  for (const Complex& c : fact.remainder) remainder.push_back(complex_json(c));
  out["factorization"] = json{{"quotient", quotient},
                              {"remainder", remainder},
                              {"remainder_magnitude", fact.remainder_magnitude}};

  double mass_scale = std::max(std::abs(params.mass1), std::abs(params.mass2));
  if (std::abs(params.mass1 + params.mass2) <= 1e-12 * mass_scale) {
    ptpu::BenderMannheimForm bm = ptpu::bender_mannheim(params);
    out["bender_mannheim"] = json{{"gamma", complex_json(bm.gamma)},
                                  {"lagrangian", json::parse(bm.lagrangian.to_json())}};
  }
  emit_json(args.out, out);
  return 0;
}

struct ClassicalArgs {
  ComplexFlag omega1, omega2, q0, q1, q2, q3;
  double t_end = 10.0;
  double dt = 1e-3;
  std::string csv;
  std::string out;
};

int run_classical(const ClassicalArgs& args) {
  ptpu::TwoOscillatorParams params;
  params.omega1 = args.omega1.value(Complex(1.0));
  params.omega2 = args.omega2.value(Complex(2.0));
  params.validate();

  ptpu::ClassicalState init;
  init.jets = {args.q0.value(Complex(1.0)), args.q1.value(), args.q2.value(), args.q3.value()};

  ptpu::TrajectoryReport report = ptpu::integrate_classical(params, init, args.t_end, args.dt);
  if (!args.csv.empty()) emit(args.csv, report.to_csv());

  double slope = 0.0;
  bool have_slope = false;
  std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
  try {
    slope = ptpu::trajectory_convergence_slope(params, init, args.t_end, dts);
    have_slope = true;
  } catch (const ptpu::StepSizeRejected&) {
    // probe steps too coarse for these frequencies; summary still valid
  } catch (const std::invalid_argument&) {
    // zero trajectories have no measurable slope
  }

  json out;
  out["max_devs"] = json{{"q", report.max_dev_q},
                         {"qddot", report.max_dev_qddot},
                         {"qdddot", report.max_dev_qdddot},
                         {"qdot", report.max_dev_qdot}};
  out["convergence_slope"] = have_slope ? json(slope) : json(nullptr);
  emit_json(args.out, out);
  return 0;
}

struct BiorthoArgs {
  ComplexFlag mass, omega;
  double hbar = 1.0;
  int max = 3;
  int nodes = 64;
  ComplexFlag mass2, omega2;
  std::string wavefunction_csv;
  int wavefunction_index = 0;
  std::string out;
};

int run_biortho(const BiorthoArgs& args) {
  ptpu::SingleOscillatorParams params{args.mass.value(Complex(1.0)),
                                      args.omega.value(Complex(1.0)), args.hbar};
  params.validate();

  if (!args.wavefunction_csv.empty()) {
    ptpu::EigenfunctionSpec spec{params, args.wavefunction_index, ptpu::Side::right};
    std::string csv = "s,Re(phi),Im(phi)\n";
    char line[128];
    for (int i = 0; i <= 160; ++i) {
      double s = -4.0 + 0.05 * i;
      Complex phi = ptpu::eval_eigenfunction(spec, s);
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", s, phi.real(), phi.imag());
      csv += line;
    }
    emit(args.wavefunction_csv, csv);
  }

  json table = json::array();
  for (int m = 0; m <= args.max; ++m) {
    for (int mp = 0; mp <= args.max; ++mp) {
      Complex v = ptpu::biortho_inner(params, m, mp, args.nodes);
      table.push_back(json{{"converged", true},
                           {"m", m},
                           {"mprime", mp},
                           {"nodes", 2 * args.nodes},
                           {"value_im", v.imag()},
                           {"value_re", v.real()}});
    }
  }
  json out;
  out["table"] = table;

  if (!args.mass2.text.empty() || !args.omega2.text.empty()) {
    ptpu::TwoOscillatorParams pair;
    pair.mass1 = params.mass;
    pair.omega1 = params.omega;
    pair.mass2 = args.mass2.value(Complex(1.0));
    pair.omega2 = args.omega2.value(Complex(2.0));
    pair.hbar = args.hbar;
    Complex norm = ptpu::ground_state_norm(pair, args.nodes);
    out["ground_state_norm"] = json{{"converged", true},
                                    {"nodes", 2 * args.nodes},
                                    {"value_im", norm.imag()},
                                    {"value_re", norm.real()}};
  }
  emit_json(args.out, out);
  return 0;
}

struct KernelArgs {
  ComplexFlag mass, omega;
  double hbar = 1.0;
  double dt = 0.7;
  int m_max = 60;
  int nodes = 64;
  int slice_nodes = 320;
  std::string csv;
  std::string out;
};

int run_kernel_check(const KernelArgs& args) {
  ptpu::SingleOscillatorParams params{args.mass.value(Complex(1.0)),
                                      args.omega.value(Complex(1.0, -1.0)), args.hbar};
  params.validate();
  ptpu::KernelRequest req{params, args.dt, args.m_max, 1};

  double max_dev = 0.0;
  for (double s_to = -3.0; s_to <= 3.0 + 1e-12; s_to += 0.5) {
    for (double s_from = -3.0; s_from <= 3.0 + 1e-12; s_from += 0.5) {
      Complex a = ptpu::spectral_kernel(req, s_to, s_from);
      Complex b = ptpu::closed_form_kernel(req, s_to, s_from);
      max_dev = std::max(max_dev, std::abs(a - b));
    }
  }

  double semigroup_dev = 0.0;
  {
    double d1 = 0.55 * args.dt, d2 = 0.45 * args.dt;
    for (double s_to : {-2.0, -0.5, 0.5, 2.0}) {
      for (double s_from : {-2.0, -0.5, 0.5, 2.0}) {
        Complex composed =
            ptpu::compose_closed_form(params, d1, d2, s_to, s_from, args.nodes);
        ptpu::KernelRequest whole{params, d1 + d2, args.m_max, 1};
        semigroup_dev =
            std::max(semigroup_dev, std::abs(composed - ptpu::closed_form_kernel(whole, s_to, s_from)));
      }
    }
  }

  std::vector<int> counts{8, 16, 32, 64};
  ptpu::KernelRequest slice_req{params, 1.0 / std::abs(params.omega), args.m_max, 1};
  ptpu::SliceConvergence conv = ptpu::slice_convergence(slice_req, counts, args.slice_nodes);

  json sup_norms = json::array();
  for (double factor : {1.0, 2.0, 4.0, 8.0}) {
    ptpu::KernelRequest probe{params, args.dt * factor, args.m_max, 1};
    sup_norms.push_back(json{{"dt", probe.dt}, {"sup", ptpu::kernel_sup_norm(probe)}});
  }

  if (!args.csv.empty()) {
    std::string csv = "s,s',Re(K),Im(K)\n";
    char line[160];
    for (double s_from = -3.0; s_from <= 3.0 + 1e-12; s_from += 0.5) {
      for (double s_to = -3.0; s_to <= 3.0 + 1e-12; s_to += 0.5) {
        Complex k = ptpu::closed_form_kernel(req, s_to, s_from);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", s_from, s_to, k.real(),
                      k.imag());
        csv += line;
      }
    }
    emit(args.csv, csv);
  }

  json out;
  out["spectral_vs_closed"] = json{{"m_max", args.m_max}, {"max_dev", max_dev}, {"window", 3.0}};
  out["semigroup"] = json{{"dev", semigroup_dev}, {"nodes", args.nodes}};
  out["slice_convergence"] = json::parse(conv.to_json());
  out["sup_norms"] = sup_norms;
  emit_json(args.out, out);
  return 0;
}

struct PropagatorArgs {
  ComplexFlag g1, z1, m1sq;
  ComplexFlag g2, z2, m2sq;
  int points = 40;
  double decades = 3.5;
  std::string out;
};

std::vector<ptpu::ScalarChannel> build_channels(const PropagatorArgs& args) {
  std::vector<ptpu::ScalarChannel> channels;
  channels.push_back({args.z1.value(Complex(1.0)), std::sqrt(args.m1sq.value(Complex(1.0))),
                      args.g1.value(Complex(1.0))});
  if (!args.m2sq.text.empty()) {
    channels.push_back({args.z2.value(Complex(1.0)), std::sqrt(args.m2sq.value(Complex(4.0))),
                        args.g2.value(Complex(1.0))});
  }
  return channels;
}

int run_propagator(const PropagatorArgs& args) {
  std::vector<ptpu::ScalarChannel> channels = build_channels(args);
  for (const ptpu::ScalarChannel& ch : channels) {
    if (!ptpu::causal_mass_convention(ch)) {
      std::cerr << "warning: channel mass has Im(M) > 0 (anti-causal convention)\n";
    }
  }
  std::vector<Complex> grid = ptpu::geometric_psq_grid(channels, args.points, args.decades);
  std::string csv = "p_sq,Re(K),Im(K)\n";
  char line[160];
  for (const Complex& p_sq : grid) {
    ptpu::AmplitudeKernel k = ptpu::combined_amplitude_kernel(channels, p_sq);
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p_sq.real(), k.sum.real(),
                  k.sum.imag());
    csv += line;
  }
  emit(args.out, csv);
  return 0;
}

struct PvSolveArgs {
  ComplexFlag g1, z1, z2, m1sq, m2sq;
  std::string out;
};

int run_pv_solve(const PvSolveArgs& args) {
  ptpu::ScalarChannel ch1{args.z1.value(Complex(1.0)), std::sqrt(args.m1sq.value(Complex(1.0))),
                          args.g1.value(Complex(1.0))};
  Complex z2 = args.z2.value(Complex(1.0));
  Complex m2 = std::sqrt(args.m2sq.value(Complex(4.0)));
  Complex g2_squared = ptpu::pauli_villars_solve(ch1, z2, m2);
  ptpu::ScalarChannel ch2{z2, m2, std::sqrt(g2_squared)};

  std::vector<ptpu::ScalarChannel> constrained{ch1, ch2};
  std::vector<Complex> grid = ptpu::geometric_psq_grid(constrained);
  double slope = ptpu::falloff_exponent(constrained, grid);

  // breaking the solved weight restores the generic single-pole falloff
  ptpu::ScalarChannel ch2_off{z2, m2, std::sqrt(g2_squared + ch1.g * ch1.g * 0.5)};
  std::vector<ptpu::ScalarChannel> unconstrained{ch1, ch2_off};
  double slope_unconstrained = ptpu::falloff_exponent(unconstrained, grid);

  ptpu::DoubleConstraintReport report = ptpu::double_constraint_check(ch1, ch2);

  json out;
  out["g2_squared"] = complex_json(g2_squared);
  out["constraint1"] = complex_json(report.constraint1);
  out["constraint2"] = complex_json(report.constraint2);
  out["slope"] = slope;
  out["slope_unconstrained"] = slope_unconstrained;
  out["vanishes"] = report.vanishes;
  emit_json(args.out, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-completed oscillator pair / fourth-order oscillator toolkit"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "energy labels and eigenvalues");
  add_complex_option(spectrum, "--omega1", spectrum_args.omega1, "first frequency (a+bi)");
  add_complex_option(spectrum, "--omega2", spectrum_args.omega2, "second frequency (a+bi)");
  spectrum->add_option("--hbar", spectrum_args.hbar, "hbar (default 1)");
  spectrum->add_option("--max", spectrum_args.max, "largest quantum number per index (default 2)");
  spectrum->add_flag("--holomorphic", spectrum_args.holomorphic_only,
                     "emit only the holomorphic-sector spectrum");
  spectrum->add_option("--out", spectrum_args.out, "write output to FILE");

  PuConvertArgs pu_args;
  CLI::App* pu = app.add_subcommand("pu-convert",
                                    "fourth-order Lagrangian forms and equivalence verdicts");
  add_complex_option(pu, "--m1", pu_args.m1, "first mass (a+bi)");
  add_complex_option(pu, "--m2", pu_args.m2, "second mass (a+bi)");
  add_complex_option(pu, "--omega1", pu_args.omega1, "first frequency");
  add_complex_option(pu, "--omega2", pu_args.omega2, "second frequency");
  pu->add_option("--out", pu_args.out, "write output to FILE");

  ClassicalArgs classical_args;
  CLI::App* classical =
      app.add_subcommand("classical-check", "trajectory equivalence of the two descriptions");
  add_complex_option(classical, "--omega1", classical_args.omega1, "first frequency");
  add_complex_option(classical, "--omega2", classical_args.omega2, "second frequency");
  add_complex_option(classical, "--q0", classical_args.q0, "initial Q (default 1)");
  add_complex_option(classical, "--q1", classical_args.q1, "initial Qdot");
  add_complex_option(classical, "--q2", classical_args.q2, "initial Qddot");
  add_complex_option(classical, "--q3", classical_args.q3, "initial Qdddot");
  classical->add_option("--t-end", classical_args.t_end, "integration horizon (default 10)");
  classical->add_option("--dt", classical_args.dt, "step size (default 1e-3)");
  classical->add_option("--csv", classical_args.csv, "write trajectory CSV to FILE");
  classical->add_option("--out", classical_args.out, "write JSON summary to FILE");

  BiorthoArgs biortho_args;
  CLI::App* biortho = app.add_subcommand("biortho", "left/right inner-product table");
  add_complex_option(biortho, "--mass", biortho_args.mass, "oscillator mass (a+bi)");
  add_complex_option(biortho, "--omega", biortho_args.omega, "oscillator frequency (a+bi)");
  biortho->add_option("--hbar", biortho_args.hbar, "hbar (default 1)");
  biortho->add_option("--max", biortho_args.max, "largest index in the table (default 3)");
  biortho->add_option("--nodes", biortho_args.nodes, "quadrature nodes (default 64)");
  add_complex_option(biortho, "--mass2", biortho_args.mass2,
                     "second mass: also emit the ground-state norm");
  add_complex_option(biortho, "--omega2", biortho_args.omega2, "second frequency");
  biortho->add_option("--wavefunction-csv", biortho_args.wavefunction_csv,
                      "write on-contour samples of one eigenfunction to FILE");
  biortho->add_option("--wf-index", biortho_args.wavefunction_index,
                      "eigenfunction index for the sample CSV (default 0)");
  biortho->add_option("--out", biortho_args.out, "write output to FILE");

  KernelArgs kernel_args;
  CLI::App* kernel = app.add_subcommand(
      "kernel-check", "spectral vs closed-form vs sliced evolution kernels");
  add_complex_option(kernel, "--mass", kernel_args.mass, "oscillator mass");
  add_complex_option(kernel, "--omega", kernel_args.omega, "frequency (default 1-1i)");
  kernel->add_option("--hbar", kernel_args.hbar, "hbar (default 1)");
  kernel->add_option("--dt", kernel_args.dt, "kernel time interval (default 0.7)");
  kernel->add_option("--m-max", kernel_args.m_max, "spectral truncation (default 60)");
  kernel->add_option("--nodes", kernel_args.nodes, "composition quadrature nodes (default 64)");
  kernel->add_option("--slice-nodes", kernel_args.slice_nodes,
                     "slice-composition grid size (default 320)");
  kernel->add_option("--csv", kernel_args.csv, "write kernel grid CSV to FILE");
  kernel->add_option("--out", kernel_args.out, "write JSON report to FILE");

  PropagatorArgs propagator_args;
  CLI::App* propagator = app.add_subcommand("propagator", "combined exchange-kernel scan");
  add_complex_option(propagator, "--g1", propagator_args.g1, "first coupling");
  add_complex_option(propagator, "--z1", propagator_args.z1, "first field renormalization");
  add_complex_option(propagator, "--m1sq", propagator_args.m1sq, "first mass squared", true);
  add_complex_option(propagator, "--g2", propagator_args.g2, "second coupling");
  add_complex_option(propagator, "--z2", propagator_args.z2, "second field renormalization");
  add_complex_option(propagator, "--m2sq", propagator_args.m2sq, "second mass squared");
  propagator->add_option("--points", propagator_args.points, "grid points (default 40)");
  propagator->add_option("--decades", propagator_args.decades, "grid span in decades");
  propagator->add_option("--out", propagator_args.out, "write CSV to FILE");

  PvSolveArgs pv_args;
  CLI::App* pv = app.add_subcommand("pv-solve", "cancellation constraint and falloff slopes");
  add_complex_option(pv, "--g1", pv_args.g1, "first coupling");
  add_complex_option(pv, "--z1", pv_args.z1, "first field renormalization");
  add_complex_option(pv, "--z2", pv_args.z2, "second field renormalization");
  add_complex_option(pv, "--m1sq", pv_args.m1sq, "first mass squared");
  add_complex_option(pv, "--m2sq", pv_args.m2sq, "second mass squared");
  pv->add_option("--out", pv_args.out, "write output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(spectrum_args);
    if (pu->parsed()) return run_pu_convert(pu_args);
    if (classical->parsed()) return run_classical(classical_args);
    if (biortho->parsed()) return run_biortho(biortho_args);
    if (kernel->parsed()) return run_kernel_check(kernel_args);
    if (propagator->parsed()) return run_propagator(propagator_args);
    if (pv->parsed()) return run_pv_solve(pv_args);
  } catch (const ptpu::QuadratureUnderresolved& e) {
    std::cerr << "numerical non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const ptpu::GridUnderresolved& e) {
    std::cerr << "numerical non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

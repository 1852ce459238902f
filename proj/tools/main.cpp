// Command-line surface: analytic states and measurements, the tradeoff curve
// and figure datasets as CSV/JSON, the Monte Carlo simulator, and the
// self-verification suite.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqc/json_io.hpp"
#include "sqc/measure.hpp"
#include "sqc/simulate.hpp"
#include "sqc/states.hpp"
#include "sqc/tradeoff.hpp"
#include "sqc/verify.hpp"

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SQC_SEED")) return std::strtoull(env, nullptr, 10);
  return 12345;
}

void print_matrix_csv(const sqc::ComplexMatrix& m, const std::string& context) {
  std::cout << "# schema=1\n# " << context << "\nrow,col,re,im\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::cout << i << ',' << j << ',' << fmt(m(i, j).real()) << ',' << fmt(m(i, j).imag())
                << '\n';
}

int cmd_states(const std::string& label_arg, const std::string& basis_arg,
               const std::string& format) {
  const sqc::HypothesisLabel label(label_arg);
  const sqc::Basis basis =
      basis_arg == "computational" ? sqc::Basis::Computational : sqc::Basis::Schur;
  const sqc::DensityOperator rho = sqc::to_basis(sqc::analytic_state(label), basis);
  if (format == "json") {
    std::cout << sqc::density_to_json(rho, label.pattern()).dump(2) << '\n';
  } else {
    print_matrix_csv(rho.matrix(), "state label=" + label.pattern() +
                                       " basis=" + sqc::to_string(basis) +
                                       " dim=" + std::to_string(rho.dim()));
  }
  return 0;
}

int cmd_povm(const std::string& family, const sqc::WeakParams& params,
             sqc::FirstOutcome outcome, const std::string& format) {
  sqc::Povm povm;
  if (family == "optimal2") {
    povm = sqc::optimal_two_qubit_povm();
  } else if (family == "optimal3") {
    povm = sqc::optimal_three_qubit_povm();
  } else if (family == "weak") {
    povm = sqc::weak_two_qubit_povm(params);
  } else {
    povm = sqc::second_povm(params, outcome);
  }
  if (format == "json") {
    std::cout << sqc::povm_to_json(povm, family).dump(2) << '\n';
    return 0;
  }
  std::cout << "# schema=1\n# povm family=" << family << " dim=" << povm.dim
            << " basis=" << sqc::to_string(povm.basis) << "\nelement,row,col,re,im\n";
  for (const sqc::PovmElement& e : povm.elements)
    for (std::size_t i = 0; i < e.op.dim(); ++i)
      for (std::size_t j = 0; j < e.op.dim(); ++j)
        std::cout << e.label << ',' << i << ',' << j << ',' << fmt(e.op.matrix()(i, j).real())
                  << ',' << fmt(e.op.matrix()(i, j).imag()) << '\n';
  return 0;
}

int cmd_tradeoff(std::size_t points, const std::string& format, bool full) {
  const std::vector<sqc::TradeoffPoint> rows = sqc::sweep(points);
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const sqc::TradeoffPoint& p : rows) out.push_back(sqc::tradeoff_point_to_json(p));
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (full) {
    std::cout << "# schema=1\np_first,p_second_closed,p_second_general,alpha,beta\n";
    for (const sqc::TradeoffPoint& p : rows)
      std::cout << fmt(p.p_first) << ',' << fmt(p.p_second) << ',' << fmt(p.p_second_general)
                << ',' << fmt(p.alpha) << ',' << fmt(p.beta) << '\n';
  } else {
    std::cout << "# schema=1\np_first,p_second,alpha,beta\n";
    for (const sqc::TradeoffPoint& p : rows)
      std::cout << fmt(p.p_first) << ',' << fmt(p.p_second) << ',' << fmt(p.alpha) << ','
                << fmt(p.beta) << '\n';
  }
  return 0;
}

int cmd_figure1(const sqc::WeakParams& params, sqc::FirstOutcome outcome,
                const std::string& format) {
  const auto rows = sqc::path_components(params, outcome);
  const double a = sqc::mirror_geometry(params, outcome).a;
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const sqc::PathComponent& c : rows) out.push_back(sqc::path_component_to_json(c));
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "# schema=1\n# figure1 alpha=" << fmt(params.alpha) << " beta="
            << fmt(params.beta) << " outcome=" << sqc::to_string(outcome) << " a=" << fmt(a)
            << "\nkind,label,c0,c1,weight,omitted\n";
  for (const sqc::PathComponent& c : rows)
    std::cout << c.kind << ',' << c.label << ',' << fmt(c.c0) << ',' << fmt(c.c1) << ','
              << fmt(c.weight) << ',' << (c.omitted ? 1 : 0) << '\n';
  return 0;
}

int cmd_simulate(const sqc::WeakParams& params, bool curve, std::size_t points, std::size_t n,
                 std::uint64_t seed) {
  if (curve) {
    const auto summaries = sqc::estimate_curve(points, n, seed);
    for (const sqc::RunSummary& s : summaries) {
      nlohmann::json j = sqc::summary_to_json(s);
      j["p1_analytic"] = sqc::p_first(s.params.alpha);
      j["p2_analytic"] = sqc::p_second_closed(s.params);
      std::cout << j.dump() << '\n';
    }
    return 0;
  }
  const sqc::RunSummary s = sqc::run_trajectories(params, n, seed);
  nlohmann::json j = sqc::summary_to_json(s);
  j["p1_analytic"] = sqc::p_first(params.alpha);
  j["p2_analytic"] = sqc::p_second_closed(params);
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_verify(const sqc::VerifyOptions& options, const std::string& format) {
  const sqc::VerifyReport report = sqc::run_verification(options);
  if (format == "text") {
    for (const sqc::CheckResult& c : report.checks) {
      std::printf("%s  criterion %d  %-62s  observed %.17g  (tol %.3g, expected %s)\n",
                  c.pass ? "PASS" : "FAIL", c.criterion, c.name.c_str(), c.observed,
                  c.tolerance, c.expected.c_str());
    }
  } else {
    nlohmann::json checks = nlohmann::json::array();
    for (const sqc::CheckResult& c : report.checks)
      checks.push_back({{"name", c.name},
                        {"criterion", c.criterion},
                        {"pass", c.pass},
                        {"observed", c.observed},
                        {"expected", c.expected},
                        {"tolerance", c.tolerance}});
    nlohmann::json timings;
    for (const auto& [criterion, seconds] : report.criterion_seconds)
      timings[std::to_string(criterion)] = seconds;
    nlohmann::json out{{"pass", report.all_pass()},
                       {"checks", checks},
                       {"criterion_seconds", timings}};
    std::cout << out.dump(2) << '\n';
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential two- and three-qubit unsupervised classification toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  const std::map<std::string, sqc::FirstOutcome> outcome_map{
      {"plus", sqc::FirstOutcome::Plus}, {"minus", sqc::FirstOutcome::Minus}};

  // states
  std::string state_label, state_basis = "schur", state_format = "csv";
  auto* states = app.add_subcommand("states", "print an analytic averaged state");
  states->add_option("--label", state_label, "hypothesis pattern (00, 01, 000, 001, 010, 011)")
      ->required();
  states->add_option("--basis", state_basis)->check(CLI::IsMember({"schur", "computational"}));
  states->add_option("--format", state_format)->check(CLI::IsMember({"csv", "json"}));
  states->callback([&] { exit_code = cmd_states(state_label, state_basis, state_format); });

  // povm
  std::string povm_family, povm_format = "csv";
  sqc::WeakParams povm_params;
  sqc::FirstOutcome povm_outcome = sqc::FirstOutcome::Minus;
  auto* povm = app.add_subcommand("povm", "print a measurement family");
  povm->add_option("--family", povm_family)
      ->required()
      ->check(CLI::IsMember({"optimal2", "optimal3", "weak", "second"}));
  povm->add_option("--alpha", povm_params.alpha);
  povm->add_option("--beta", povm_params.beta);
  povm->add_option("--outcome", povm_outcome, "first outcome conditioning the second POVM")
      ->transform(CLI::CheckedTransformer(outcome_map, CLI::ignore_case));
  povm->add_option("--format", povm_format)->check(CLI::IsMember({"csv", "json"}));
  povm->callback(
      [&] { exit_code = cmd_povm(povm_family, povm_params, povm_outcome, povm_format); });

  // tradeoff
  std::size_t tradeoff_points = 101;
  std::string tradeoff_format = "csv";
  auto* tradeoff = app.add_subcommand("tradeoff", "analytic tradeoff curve dataset");
  tradeoff->add_option("--points", tradeoff_points)->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  tradeoff->add_option("--format", tradeoff_format)->check(CLI::IsMember({"csv", "json"}));
  tradeoff->callback([&] { exit_code = cmd_tradeoff(tradeoff_points, tradeoff_format, false); });

  // figure1
  sqc::WeakParams fig1_params;
  sqc::FirstOutcome fig1_outcome = sqc::FirstOutcome::Minus;
  std::string fig1_format = "csv";
  auto* figure1 = app.add_subcommand("figure1", "path-plane state/measurement directions");
  figure1->add_option("--alpha", fig1_params.alpha)->required();
  figure1->add_option("--beta", fig1_params.beta)->required();
  figure1->add_option("--outcome", fig1_outcome)
      ->transform(CLI::CheckedTransformer(outcome_map, CLI::ignore_case));
  figure1->add_option("--format", fig1_format)->check(CLI::IsMember({"csv", "json"}));
  figure1->callback([&] { exit_code = cmd_figure1(fig1_params, fig1_outcome, fig1_format); });

  // figure2
  std::size_t fig2_points = 101;
  std::string fig2_format = "csv";
  auto* figure2 = app.add_subcommand(
      "figure2", "tradeoff sweep with both second-rate evaluations (closed and general)");
  figure2->add_option("--points", fig2_points)->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  figure2->add_option("--format", fig2_format)->check(CLI::IsMember({"csv", "json"}));
  figure2->callback([&] { exit_code = cmd_tradeoff(fig2_points, fig2_format, true); });

  // simulate
  sqc::WeakParams sim_params;
  bool sim_curve = false;
  std::size_t sim_points = 9, sim_n = 100000;
  std::uint64_t sim_seed = default_seed();
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo protocol runs (JSON lines)");
  simulate->add_option("--alpha", sim_params.alpha);
  simulate->add_option("--beta", sim_params.beta);
  simulate->add_flag("--curve", sim_curve, "sweep the optimal-beta locus instead of one point");
  simulate->add_option("--points", sim_points)->check(CLI::Range(std::size_t{2}, std::size_t{10000}));
  simulate->add_option("--n", sim_n, "trajectories per estimate")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000000}));
  simulate->add_option("--seed", sim_seed, "RNG seed (default from SQC_SEED, else 12345)");
  simulate->callback(
      [&] { exit_code = cmd_simulate(sim_params, sim_curve, sim_points, sim_n, sim_seed); });

  // verify
  sqc::VerifyOptions verify_options;
  std::string verify_format = "json";
  std::uint64_t verify_seed = default_seed();
  auto* verify = app.add_subcommand("verify", "run the self-verification suite");
  verify->add_flag("--with-mc", verify_options.with_mc, "include the Monte Carlo gates");
  verify->add_option("--n", verify_options.mc_trajectories, "trajectories per MC gate");
  verify->add_option("--samples", verify_options.mc_state_samples, "samples per MC state");
  verify->add_option("--seed", verify_seed);
  verify->add_option("--grid", verify_options.grid, "identity-check grid resolution")
      ->check(CLI::Range(11, 201));
  auto* fault = verify->add_flag("--inject-fault", verify_options.inject_fault,
                                 "testing aid: corrupt one checkpoint to force failure");
  fault->group("");  // hidden
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "text"}));
  verify->callback([&] {
    verify_options.mc_seeds = {verify_seed};
    exit_code = cmd_verify(verify_options, verify_format);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}

#pragma once

#include <string>

#include <json.hpp>

#include "sqc/linalg.hpp"
#include "sqc/measure.hpp"
#include "sqc/simulate.hpp"
#include "sqc/states.hpp"
#include "sqc/tradeoff.hpp"

namespace sqc {

/// Shared matrix encoding: row-major entries as [re, im] pairs.
inline nlohmann::json entries_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return entries;
}

inline nlohmann::json density_to_json(const DensityOperator& rho, const std::string& label) {
  return {{"label", label},
          {"basis", to_string(rho.basis())},
          {"dim", rho.dim()},
          {"entries", entries_to_json(rho.matrix())}};
}

inline nlohmann::json povm_to_json(const Povm& povm, const std::string& name) {
  nlohmann::json elements = nlohmann::json::array();
  for (const PovmElement& e : povm.elements)
    elements.push_back({{"label", e.label}, {"entries", entries_to_json(e.op.matrix())}});
  return {{"name", name},
          {"basis", to_string(povm.basis)},
          {"dim", povm.dim},
          {"elements", elements}};
}

inline nlohmann::json report_to_json(const PovmReport& report) {
  nlohmann::json elements = nlohmann::json::array();
  for (const ElementPositivity& e : report.element_positivity)
    elements.push_back({{"label", e.label}, {"min_eigenvalue", e.min_eigenvalue}});
  return {{"element_positivity", elements},
          {"completeness_residual", report.completeness_residual},
          {"tolerance", report.tolerance},
          {"pass", report.pass}};
}

inline nlohmann::json summary_to_json(const RunSummary& s) {
  return {{"n", s.n_trajectories},
          {"p1_hat", s.p1_hat},
          {"p1_se", s.p1_se},
          {"p2_hat", s.p2_hat},
          {"p2_se", s.p2_se},
          {"alpha", s.params.alpha},
          {"beta", s.params.beta},
          {"seed", s.seed}};
}

inline nlohmann::json tradeoff_point_to_json(const TradeoffPoint& p) {
  return {{"p_first", p.p_first},
          {"p_second", p.p_second},
          {"alpha", p.alpha},
          {"beta", p.beta},
          {"p_second_general", p.p_second_general}};
}

inline nlohmann::json path_component_to_json(const PathComponent& c) {
  return {{"kind", c.kind}, {"label", c.label},     {"c0", c.c0},
          {"c1", c.c1},     {"weight", c.weight},   {"omitted", c.omitted}};
}

}  // namespace sqc

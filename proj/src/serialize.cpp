#include "splice/serialize.hpp"

#include <cstdio>

#include "splice/free_boundary.hpp"
#include "splice/variational.hpp"

namespace splice {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json to_json(const SolveReport& r) {
  return {
      {"kind", std::string(to_string(r.kind))},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"self_consistent", r.self_consistent},
      {"classification", std::string(to_string(r.classification))},
      {"equivalent_radius", r.equivalent_radius},
      {"quiescent_radius", r.quiescent_radius},
      {"final_region_cells", r.final_region.count()},
      {"final_region_area", r.final_region.area()},
      {"residual_history", r.residual_history},
      {"region_area_history", r.region_area_history},
  };
}

nlohmann::json to_json(const FunctionalBreakdown& b) {
  return {{"q", b.q}, {"A", b.A}, {"Q", b.Q}, {"I", b.I}};
}

}  // namespace splice

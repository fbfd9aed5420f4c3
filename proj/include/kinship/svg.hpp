#pragma once

#include <string>
#include <vector>

#include "kinship/plmap.hpp"
#include "kinship/plrelation.hpp"

namespace kinship {

struct PlotPanel {
  std::string title;
  PLRelation graph;
};

/// Side-by-side boxed unit-square panels, each with a dashed diagonal and
/// dashed guides at the interior breakpoint abscissae.
[[nodiscard]] std::string render_svg(const std::vector<PlotPanel>& panels);

}  // namespace kinship

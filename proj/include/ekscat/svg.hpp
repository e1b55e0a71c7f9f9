#pragma once

#include <iosfwd>
#include <string>

#include "ekscat/statistics.hpp"

namespace ekscat {

struct SvgPlotOptions {
  int width = 800;
  int height = 500;
  std::string title;
  std::string x_label;
  bool normal_overlay = true;
};

/// Standalone SVG: density bars, optional standard normal density curve,
/// axes with ticks and labels. No external assets.
void render_histogram_svg(std::ostream& os, const HistogramBins& bins,
                          const SvgPlotOptions& options);

std::string xml_escape(const std::string& text);

}  // namespace ekscat

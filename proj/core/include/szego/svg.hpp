#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace szego {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x, y;  // only strictly positive finite points are drawn
};

// Minimal self-contained log-log line plot.
void write_loglog_svg(std::ostream& out, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series,
                      const std::string& config);

}  // namespace szego

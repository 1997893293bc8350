#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace brw::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Multi-series line chart (SVG 1.1, hand-rolled axes and legend).
// Output bytes depend only on the inputs.
void line_chart(const std::filesystem::path& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<Series>& series);

struct BarPanel {
  std::string title;
  std::vector<double> values;
  std::vector<bool> dimmed;     // drawn hollow (e.g. trimmed away)
  double reference_line = 0.0;  // horizontal marker (e.g. the mean)
  bool has_reference = false;
};

// Two side-by-side bar panels sharing a y-scale per panel.
void bar_panels(const std::filesystem::path& path, const std::string& title,
                const std::string& y_label, const BarPanel& left,
                const BarPanel& right);

}  // namespace brw::svg

#pragma once

#include <filesystem>

namespace brw {

// Renders the SVG report from the CSV artifacts in out_dir. Pure function of
// the CSV bytes, so re-rendering existing outputs is byte-idempotent.
// Produces quenched_t<snapshot>.svg per snapshot time (bar panels, full vs
// trimmed), annealed_m1.svg, and log_gap.svg.
void render_reports(const std::filesystem::path& out_dir,
                    double trim_fraction = 0.01);

}  // namespace brw

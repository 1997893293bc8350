#include "brw/report.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "brw/csv.hpp"
#include "brw/svg.hpp"

namespace brw {

namespace {

std::string trim_zeroes(double v) { return csv::format_number(v); }

void render_quenched_bars(const std::filesystem::path& out_dir,
                          const csv::Table& moments, double snapshot,
                          double trim_fraction) {
  const int ct = moments.column("t");
  const int cm = moments.column("medium_id");
  const int cn = moments.column("n");
  const int cv = moments.column("m_hat");
  std::vector<std::pair<double, std::int64_t>> vals;  // (value, medium)
  for (std::size_t r = 0; r < moments.rows.size(); ++r) {
    if (moments.number(r, cn) != 1.0) continue;
    if (std::fabs(moments.number(r, ct) - snapshot) > 1e-9) continue;
    vals.emplace_back(moments.number(r, cv),
                      static_cast<std::int64_t>(moments.number(r, cm)));
  }
  if (vals.empty()) return;
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  const auto m1 = vals.size();
  const int cut = trim_fraction > 0.0
                      ? static_cast<int>(std::ceil(
                            trim_fraction * static_cast<double>(m1) / 2.0))
                      : 0;

  svg::BarPanel left, right;
  left.title = "all media";
  double sum = 0.0;
  for (std::size_t i = 0; i < m1; ++i) {
    left.values.push_back(vals[i].first);
    const bool dim = i < static_cast<std::size_t>(cut) ||
                     i >= m1 - static_cast<std::size_t>(cut);
    left.dimmed.push_back(dim);
    sum += vals[i].first;
  }
  left.reference_line = sum / static_cast<double>(m1);
  left.has_reference = true;

  right.title = "after trimming";
  double trimmed_sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(cut);
       i < m1 - static_cast<std::size_t>(cut); ++i) {
    right.values.push_back(vals[i].first);
    right.dimmed.push_back(false);
    trimmed_sum += vals[i].first;
  }
  if (!right.values.empty()) {
    right.reference_line =
        trimmed_sum / static_cast<double>(right.values.size());
    right.has_reference = true;
  }

  svg::bar_panels(out_dir / ("quenched_t" + trim_zeroes(snapshot) + ".svg"),
                  "quenched first-moment estimates at t = " +
                      trim_zeroes(snapshot),
                  "m1 estimate", left, right);
}

}  // namespace

void render_reports(const std::filesystem::path& out_dir,
                    double trim_fraction) {
  const csv::Table moments = csv::read(out_dir / "moments.csv");
  const csv::Table annealed = csv::read(out_dir / "annealed.csv");
  const csv::Table diagnostics = csv::read(out_dir / "diagnostics.csv");
  const csv::Table normality = csv::read(out_dir / "normality.csv");

  // One bar figure per snapshot time listed in normality.csv.
  const int nt = normality.column("t");
  for (std::size_t r = 0; r < normality.rows.size(); ++r)
    render_quenched_bars(out_dir, moments, normality.number(r, nt),
                         trim_fraction);

  {
    const int ct = annealed.column("t");
    const int cp = annealed.column("p");
    const int ca = annealed.column("annealed");
    const int ctr = annealed.column("trimmed");
    svg::Series full{"log10 annealed m1", {}, {}};
    svg::Series trimmed{"log10 trimmed", {}, {}};
    for (std::size_t r = 0; r < annealed.rows.size(); ++r) {
      if (annealed.number(r, cp) != 1.0) continue;
      const double t = annealed.number(r, ct);
      const double a = annealed.number(r, ca);
      const double tr = annealed.number(r, ctr);
      if (a > 0.0 && std::isfinite(a)) {
        full.x.push_back(t);
        full.y.push_back(std::log10(a));
      }
      if (tr > 0.0 && std::isfinite(tr)) {
        trimmed.x.push_back(t);
        trimmed.y.push_back(std::log10(tr));
      }
    }
    svg::line_chart(out_dir / "annealed_m1.svg",
                    "annealed first moment of the total particle count", "t",
                    "log10 m1", {full, trimmed});
  }

  {
    const int ct = diagnostics.column("t");
    const int cg = diagnostics.column("gap");
    svg::Series gap{"log10<m1^2> - 2 log10<m1>", {}, {}};
    for (std::size_t r = 0; r < diagnostics.rows.size(); ++r) {
      const double g = diagnostics.number(r, cg);
      if (!std::isfinite(g)) continue;
      gap.x.push_back(diagnostics.number(r, ct));
      gap.y.push_back(g);
    }
    svg::line_chart(out_dir / "log_gap.svg",
                    "irregularity of annealed moment growth", "t",
                    "log10 gap", {gap});
  }
}

}  // namespace brw

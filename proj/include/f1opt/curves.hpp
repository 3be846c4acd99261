#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace f1opt {

// Which metric-versus-count slice to tabulate. The first two vary tp with
// one curve per fixed fp; the third varies tn with one curve per fixed fn.
enum class SurfaceKind {
    f1_vs_tp,
    accuracy_vs_tp,
    f1_vs_tn,
};

struct CurveTable {
    std::string name;                      // figure identifier for the CSV header
    std::vector<std::string> columns;      // first column is the varying count
    std::vector<std::vector<double>> rows;
};

// Tabulates the selected slice for a problem with `actual_positives`
// positive instances out of `total`. The varying count sweeps its full
// valid range in `points` uniform steps.
CurveTable f1_surface(SurfaceKind kind, const std::vector<double>& fixed_values,
                      double actual_positives, double total,
                      std::size_t points = 101);

// Max expected F1 of an uninformative classifier, 2b/(1+b), per base rate.
CurveTable uninformative_limit_curve(const std::vector<double>& base_rates);

// "# figure: <name>" comment, then a column-header row, then the data.
void write_curve_csv(std::ostream& out, const CurveTable& table);

}  // namespace f1opt

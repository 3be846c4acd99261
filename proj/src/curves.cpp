#include "f1opt/curves.hpp"

#include <ostream>
#include <stdexcept>

#include "f1opt/analytic.hpp"
#include "f1opt/confusion.hpp"
#include "f1opt/csv.hpp"

namespace f1opt {

namespace {

std::string count_label(const char* name, double value) {
    return std::string(name) + "=" + format_double(value);
}

}  // namespace

CurveTable f1_surface(SurfaceKind kind, const std::vector<double>& fixed_values,
                      double actual_positives, double total, std::size_t points) {
    if (fixed_values.empty()) {
        throw std::invalid_argument("need at least one fixed count value");
    }
    if (points < 2) {
        throw std::invalid_argument("need at least two sweep points");
    }
    if (actual_positives < 0.0 || total < actual_positives) {
        throw std::invalid_argument("need 0 <= actual positives <= total");
    }

    const bool varies_tp = kind != SurfaceKind::f1_vs_tn;
    const double range_max = varies_tp ? actual_positives : total - actual_positives;
    for (double v : fixed_values) {
        if (v < 0.0) {
            throw std::invalid_argument("fixed counts must be non-negative");
        }
        if (varies_tp && actual_positives + v > total) {
            throw std::invalid_argument("fixed fp exceeds the negative pool");
        }
        if (!varies_tp && v > actual_positives) {
            throw std::invalid_argument("fixed fn exceeds the positive pool");
        }
    }

    CurveTable table;
    const char* fixed_name = varies_tp ? "fp" : "fn";
    switch (kind) {
        case SurfaceKind::f1_vs_tp:
            table.name = "f1-vs-tp";
            table.columns.push_back("tp");
            break;
        case SurfaceKind::accuracy_vs_tp:
            table.name = "accuracy-vs-tp";
            table.columns.push_back("tp");
            break;
        case SurfaceKind::f1_vs_tn:
            table.name = "f1-vs-tn";
            table.columns.push_back("tn");
            break;
    }
    for (double v : fixed_values) {
        table.columns.push_back(count_label(fixed_name, v));
    }

    for (std::size_t i = 0; i < points; ++i) {
        const double x =
            range_max * static_cast<double>(i) / static_cast<double>(points - 1);
        std::vector<double> row;
        row.reserve(fixed_values.size() + 1);
        row.push_back(x);
        for (double v : fixed_values) {
            switch (kind) {
                case SurfaceKind::f1_vs_tp:
                    row.push_back(f1_score(x, v, actual_positives - x));
                    break;
                case SurfaceKind::accuracy_vs_tp:
                    // tn = total - actual - fp regardless of tp, so the
                    // curve is linear in tp with slope 1/total.
                    row.push_back((x + (total - actual_positives - v)) / total);
                    break;
                case SurfaceKind::f1_vs_tn:
                    row.push_back(f1_score(actual_positives - v,
                                           total - actual_positives - x, v));
                    break;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CurveTable uninformative_limit_curve(const std::vector<double>& base_rates) {
    const std::vector<double> values = uninformative_curve(base_rates);
    CurveTable table;
    table.name = "uninformative-max-f1";
    table.columns = {"base_rate", "max_expected_f1"};
    for (std::size_t i = 0; i < base_rates.size(); ++i) {
        table.rows.push_back({base_rates[i], values[i]});
    }
    return table;
}

void write_curve_csv(std::ostream& out, const CurveTable& table) {
    out << "# figure: " << table.name << '\n';
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) {
            out << ',';
        }
        out << table.columns[j];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) {
                out << ',';
            }
            out << format_double(row[j]);
        }
        out << '\n';
    }
}

}  // namespace f1opt

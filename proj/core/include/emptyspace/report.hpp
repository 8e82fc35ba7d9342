#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "emptyspace/analytic.hpp"
#include "emptyspace/estimator.hpp"
#include "emptyspace/orderings.hpp"
#include "emptyspace/verdict.hpp"

namespace emptyspace {

//! %.10g, or "NA" for NaN.
std::string format_number(double x);

/*!
 * Hazard table, one row per (t, column), t major:
 * t,sector,F,F_se,f,r,r_se,masked,method
 */
void write_hazard_csv(std::ostream& os, HazardCurve const& curve);
std::string hazard_csv(HazardCurve const& curve);

//! {order, lawA, lawB, verdict, margin, witness, method, ...} as JSON text.
std::string verdict_json(OrderingVerdict const& v);

std::string asymptotics_json(AsymptoticLimits const& lim);

//---------------------------------------------------------------------------//
struct PlotSeries
{
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

//! Self-contained SVG line plot; NaN points break the line.
std::string svg_line_plot(std::vector<PlotSeries> const& series,
                          std::string const& title,
                          std::string const& x_label,
                          std::string const& y_label);

//! Total hazard of each curve, masked cells dropped.
std::vector<PlotSeries> hazard_series(std::vector<HazardCurve> const& curves,
                                      std::vector<std::string> const& names);

void write_text_file(std::string const& path, std::string const& text);

}  // namespace emptyspace

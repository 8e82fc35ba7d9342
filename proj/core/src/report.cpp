#include "emptyspace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace emptyspace {
namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(double x)
{
    if (std::isfinite(x))
        return x;
    return nullptr;
}

std::string escape_xml(std::string const& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

char const* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string format_number(double x)
{
    if (std::isnan(x))
        return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void write_hazard_csv(std::ostream& os, HazardCurve const& curve)
{
    os << "t,sector,F,F_se,f,r,r_se,masked,method\n";
    auto at = [](std::vector<std::vector<double>> const& m, std::size_t c,
                 std::size_t k) {
        if (c >= m.size() || k >= m[c].size())
            return std::nan("");
        return m[c][k];
    };
    for (std::size_t k = 0; k < curve.t.size(); ++k)
    {
        for (std::size_t c = 0; c < curve.labels.size(); ++c)
        {
            os << format_number(curve.t[k]) << ',' << curve.labels[c] << ','
               << format_number(at(curve.F, c, k)) << ','
               << format_number(at(curve.F_se, c, k)) << ','
               << format_number(at(curve.f, c, k)) << ','
               << format_number(at(curve.r, c, k)) << ','
               << format_number(at(curve.r_se, c, k)) << ','
               << (k < curve.masked.size() && curve.masked[k] ? 1 : 0) << ','
               << curve.method << '\n';
        }
    }
}

std::string hazard_csv(HazardCurve const& curve)
{
    std::ostringstream os;
    write_hazard_csv(os, curve);
    return os.str();
}

std::string verdict_json(OrderingVerdict const& v)
{
    ordered_json j;
    j["order"] = v.order;
    j["lawA"] = v.law_a;
    j["lawB"] = v.law_b;
    j["verdict"] = to_string(v.ordered);
    j["margin"] = number_or_null(v.margin);
    if (v.witness.empty())
    {
        j["witness"] = nullptr;
    }
    else
    {
        ordered_json w;
        w["location"] = v.location;
        if (v.sector >= 0)
            w["sector"] = v.sector;
        w["values"] = v.witness;
        j["witness"] = w;
    }
    j["method"] = to_string(v.method);
    j["location"] = number_or_null(v.location);
    j["tested_range_only"] = v.tested_range_only;
    if (!v.note.empty())
        j["note"] = v.note;
    return j.dump(2) + "\n";
}

std::string asymptotics_json(AsymptoticLimits const& lim)
{
    ordered_json j;
    j["method"] = lim.method;
    j["small_t_scaled"] = lim.small_scaled;
    ordered_json cols = ordered_json::array();
    for (std::size_t c = 0; c < lim.labels.size(); ++c)
    {
        ordered_json e;
        e["sector"] = lim.labels[c];
        e["nu"] = lim.nu[c];
        e["small_t"] = lim.small_t[c];
        e["small_t_se"] = lim.small_se[c];
        e["large_t"] = lim.large_t[c];
        e["large_t_se"] = lim.large_se[c];
        cols.push_back(e);
    }
    j["columns"] = cols;
    return j.dump(2) + "\n";
}

//---------------------------------------------------------------------------//
std::string svg_line_plot(std::vector<PlotSeries> const& series,
                          std::string const& title,
                          std::string const& x_label,
                          std::string const& y_label)
{
    constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (auto const& s : series)
    {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x1 >= x0))
    {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    y0 = std::min(y0, 0.0);
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0)
        y1 = y0 + 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" font-family=\"sans-serif\" "
          "font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
          "font-size=\"14\">"
       << escape_xml(title) << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R
       << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L
       << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i)
    {
        double const xv = x0 + (x1 - x0) * i / 4;
        double const yv = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16
           << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\">" << format_number(yv) << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (T + H - B) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s)
    {
        char const* color = kPalette[s % std::size(kPalette)];
        std::ostringstream d;
        bool pen = false;
        auto const& sr = series[s];
        for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i)
        {
            if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i]))
            {
                pen = false;
                continue;
            }
            d << (pen ? " L" : " M") << px(sr.x[i]) << ' ' << py(sr.y[i]);
            pen = true;
        }
        os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << L + 10 << "\" y=\"" << T + 14 + 16 * s
           << "\" fill=\"" << color << "\">" << escape_xml(sr.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<PlotSeries> hazard_series(std::vector<HazardCurve> const& curves,
                                      std::vector<std::string> const& names)
{
    std::vector<PlotSeries> out;
    for (std::size_t i = 0; i < curves.size(); ++i)
    {
        auto const& h = curves[i];
        PlotSeries s;
        s.name = i < names.size() ? names[i] : "curve " + std::to_string(i);
        s.x = h.t;
        s.y = h.r.empty() ? std::vector<double>(h.t.size(), NAN) : h.r[0];
        for (std::size_t k = 0; k < s.y.size() && k < h.masked.size(); ++k)
            if (h.masked[k])
                s.y[k] = NAN;
        out.push_back(std::move(s));
    }
    return out;
}

void write_text_file(std::string const& path, std::string const& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + path);
    os << text;
    if (!os)
        throw std::runtime_error("write failed for " + path);
}

}  // namespace emptyspace

#include "emptyspace/orderings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace emptyspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(double s)
{
    if (!(s >= 0 && s <= 1))
        throw std::domain_error("pgf argument must lie in [0, 1]");
}

void require_nonneg(double s)
{
    if (!(s >= 0))
        throw std::domain_error("Laplace argument must be >= 0");
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

OrderingVerdict closed_yes(OrderingVerdict v, std::string note)
{
    v.ordered = Ordered::yes;
    v.method = VerdictMethod::closed_form_condition;
    v.tested_range_only = false;
    v.note = std::move(note);
    return v;
}

OrderingVerdict closed_no(OrderingVerdict v, double at, double va, double vb,
                          std::string note)
{
    v.ordered = Ordered::no;
    v.method = VerdictMethod::closed_form_condition;
    v.location = at;
    v.margin = va - vb;
    v.witness = {va, vb};
    v.note = std::move(note);
    return v;
}

//! Scan diff(x) = fa(x) - fb(x); "no" if it drops below -tol.
template<class Fa, class Fb>
void grid_scan(OrderingVerdict& v, std::vector<double> const& xs, Fa&& fa,
               Fb&& fb, double tol)
{
    v.margin = kInf;
    for (double x : xs)
    {
        double const a = fa(x);
        double const b = fb(x);
        if (a - b < v.margin)
        {
            v.margin = a - b;
            v.location = x;
            v.witness = {a, b};
        }
    }
    v.ordered = v.margin < -tol ? Ordered::no : Ordered::yes;
    if (v.ordered == Ordered::yes)
        v.witness.clear();
}

std::vector<double> uniform_points(double lo, double hi, int n)
{
    if (n < 2)
        throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[i] = lo + (hi - lo) * i / (n - 1);
    xs.back() = hi;
    return xs;
}

}  // namespace

std::string to_string(Ordered o)
{
    switch (o)
    {
        case Ordered::yes:
            return "yes";
        case Ordered::no:
            return "no";
        case Ordered::undetermined:
            return "undetermined";
    }
    return "undetermined";
}

std::string to_string(VerdictMethod m)
{
    switch (m)
    {
        case VerdictMethod::closed_form_condition:
            return "closed-form-condition";
        case VerdictMethod::grid_check:
            return "grid-check";
        case VerdictMethod::empirical:
            return "empirical";
    }
    return "grid-check";
}

double pgf(CountingLaw const& law, double s)
{
    require_unit(s);
    return law.pgf(s);
}

double pgf_derivative(CountingLaw const& law, double s)
{
    require_unit(s);
    return law.pgf_derivative(s);
}

//---------------------------------------------------------------------------//
OrderingVerdict lg_order_check(CountingLaw const& a, CountingLaw const& b,
                               LgOptions const& opts)
{
    using namespace counting;
    double const ma = a.mean();
    double const mb = b.mean();
    if (!(ma > 0) || !(mb > 0))
        throw std::domain_error("l-g order needs positive means");

    OrderingVerdict v;
    v.order = "l-g";
    v.law_a = a.describe();
    v.law_b = b.describe();
    auto na = [&](double s) { return a.pgf_derivative(s) / ma; };
    auto nb = [&](double s) { return b.pgf_derivative(s) / mb; };

    // The grid margin is reported even when a shortcut decides.
    v.method = VerdictMethod::grid_check;
    grid_scan(v, uniform_points(0, 1, opts.grid), na, nb, opts.tolerance);
    v.tested_range_only = v.yes();
    if (!opts.shortcuts)
        return v;

    auto const* da = a.get_if<Deterministic>();
    if (da && da->k == 1)
        return closed_yes(v, "eta = 1 has the largest normalized pgf "
                             "derivative");
    auto const* pa = a.get_if<counting::Poisson>();
    auto const* pb = b.get_if<counting::Poisson>();
    if (pa && pb)
    {
        if (pa->mean <= pb->mean)
            return closed_yes(v, "Poisson: c <= c~");
        return closed_no(v, 0.0, na(0.0), nb(0.0), "Poisson: c > c~");
    }
    auto const* ba = a.get_if<Binomial>();
    auto const* bb = b.get_if<Binomial>();
    if (ba && bb && ba->n == bb->n && ba->p <= bb->p)
        return closed_yes(v, "binomial: equal n and p <= p~");
    auto const* nba = a.get_if<NegativeBinomial>();
    auto const* nbb = b.get_if<NegativeBinomial>();
    if (nba && nbb && nba->r == nbb->r && nba->p >= nbb->p)
        return closed_yes(v, "negative binomial: equal r and p >= p~");
    return v;
}

//---------------------------------------------------------------------------//
double laplace(IntensityLaw const& law, double s)
{
    using namespace scalar;
    require_nonneg(s);
    if (auto const* d = law.get_if<Degenerate>())
        return std::exp(-s * d->value);
    if (auto const* g = law.get_if<Gamma>())
        return std::pow(g->rate / (g->rate + s), g->shape);
    if (auto const* tp = law.get_if<TwoPoint>())
        return tp->prob_lo * std::exp(-s * tp->value_lo)
               + (1 - tp->prob_lo) * std::exp(-s * tp->value_hi);
    throw std::invalid_argument("Laplace transform is available for "
                                "Degenerate, Gamma and TwoPoint laws");
}

double laplace_ratio(IntensityLaw const& law, double s)
{
    using namespace scalar;
    require_nonneg(s);
    if (auto const* d = law.get_if<Degenerate>())
        return d->value;
    if (auto const* g = law.get_if<Gamma>())
        return g->shape / (g->rate + s);
    if (auto const* tp = law.get_if<TwoPoint>())
    {
        // Factor out exp(-s a) so large s does not underflow both terms.
        double const q = tp->prob_lo;
        double const e = std::exp(-s * (tp->value_hi - tp->value_lo));
        return (q * tp->value_lo + (1 - q) * tp->value_hi * e)
               / (q + (1 - q) * e);
    }
    throw std::invalid_argument("Laplace transform is available for "
                                "Degenerate, Gamma and TwoPoint laws");
}

double laplace_ratio_limit(IntensityLaw const& law)
{
    using namespace scalar;
    if (auto const* d = law.get_if<Degenerate>())
        return d->value;
    if (law.get_if<Gamma>())
        return 0.0;
    if (auto const* tp = law.get_if<TwoPoint>())
        return tp->prob_lo > 0 ? tp->value_lo : tp->value_hi;
    throw std::invalid_argument("Laplace transform is available for "
                                "Degenerate, Gamma and TwoPoint laws");
}

OrderingVerdict cum_order_check(IntensityLaw const& a, IntensityLaw const& b,
                                CumOptions const& opts)
{
    using namespace scalar;
    if (!(opts.s_max > 0))
        throw std::invalid_argument("s_max must be positive");

    OrderingVerdict v;
    v.order = "cum";
    v.law_a = a.describe();
    v.law_b = b.describe();
    auto ra = [&](double s) { return laplace_ratio(a, s); };
    auto rb = [&](double s) { return laplace_ratio(b, s); };

    v.method = VerdictMethod::grid_check;
    grid_scan(v, uniform_points(0, opts.s_max, opts.grid), ra, rb,
              opts.tolerance);
    v.tested_range_only = v.yes();
    if (!opts.shortcuts)
        return v;

    auto const* ga = a.get_if<Gamma>();
    auto const* gb = b.get_if<Gamma>();
    if (ga && gb)
    {
        double const at0 = ga->shape * gb->rate - gb->shape * ga->rate;
        if (ga->shape >= gb->shape && at0 >= 0)
            return closed_yes(v, "Gamma: alpha >= alpha~ and alpha/beta >= "
                                 "alpha~/beta~");
        if (at0 < 0)
            return closed_no(v, 0.0, ra(0.0), rb(0.0),
                             "Gamma: alpha/beta < alpha~/beta~");
        // Ratios cross where at0 + (alpha - alpha~) s = 0.
        double const cross = at0 / (gb->shape - ga->shape);
        double const s = 2 * cross + 1;
        return closed_no(v, s, ra(s), rb(s),
                         "Gamma: alpha < alpha~, ratios cross at s = "
                             + fmt(cross));
    }
    if (auto const* da = a.get_if<Degenerate>())
    {
        double const mb = b.mean();
        if (mb <= da->value * (1 + 1e-12))
            return closed_yes(v, "degenerate law against a law with mean "
                                 "not above it");
        return closed_no(v, 0.0, ra(0.0), rb(0.0),
                         "mean of the second law exceeds the degenerate "
                         "value");
    }
    return v;
}

//---------------------------------------------------------------------------//
namespace {

template<class Law, class Check, class Opts>
VarianceReport variance_report(Law const& a, Law const& b, Check&& check,
                               Opts const& opts)
{
    VarianceReport rep;
    rep.var_a = a.variance();
    rep.var_b = b.variance();
    double const ma = a.mean();
    double const mb = b.mean();
    if (std::abs(ma - mb) > 1e-9 * std::max(std::abs(ma), std::abs(mb)))
    {
        rep.note = "not applicable: means differ";
        return rep;
    }
    rep.applicable = true;
    rep.a_below_b = check(a, b, opts).ordered;
    rep.b_below_a = check(b, a, opts).ordered;
    double const tol = 1e-9 * (1 + std::max(rep.var_a, rep.var_b));
    if (rep.a_below_b == Ordered::yes && rep.var_a > rep.var_b + tol)
        rep.consistent = false;
    if (rep.b_below_a == Ordered::yes && rep.var_b > rep.var_a + tol)
        rep.consistent = false;
    rep.note = rep.consistent ? "consistent" : "order contradicts variances";
    return rep;
}

}  // namespace

VarianceReport variance_consistency(CountingLaw const& a, CountingLaw const& b,
                                    LgOptions const& opts)
{
    return variance_report(
        a, b,
        [](CountingLaw const& x, CountingLaw const& y, LgOptions const& o) {
            return lg_order_check(x, y, o);
        },
        opts);
}

VarianceReport variance_consistency(IntensityLaw const& a,
                                    IntensityLaw const& b,
                                    CumOptions const& opts)
{
    return variance_report(
        a, b,
        [](IntensityLaw const& x, IntensityLaw const& y, CumOptions const& o) {
            return cum_order_check(x, y, o);
        },
        opts);
}

//---------------------------------------------------------------------------//
OrderingVerdict stochastic_scaling_order(ScaleLaw const& smaller,
                                         ScaleLaw const& larger, int grid)
{
    bool const smooth = smaller.get_if<scalar::Gamma>()
                        || larger.get_if<scalar::Gamma>();
    std::vector<double> xs = smaller.breakpoints();
    for (double x : larger.breakpoints())
        xs.push_back(x);
    if (smooth)
    {
        double hi = 0;
        for (auto const* law : {&smaller, &larger})
            hi = std::max(hi, std::isfinite(law->sup())
                                  ? law->sup()
                                  : law->quantile(1 - 1e-12));
        for (double x : uniform_points(0, hi, grid))
            xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // Survival differences at right limits P(X > x) and left limits P(X >= x).
    auto worst = [&](ScaleLaw const& lo, ScaleLaw const& hi_law,
                     OrderingVerdict& v) {
        v.margin = kInf;
        for (double x : xs)
        {
            for (int side = 0; side < 2; ++side)
            {
                double const s_lo
                    = side == 0 ? lo.survival(x) : lo.survival_left(x);
                double const s_hi
                    = side == 0 ? hi_law.survival(x) : hi_law.survival_left(x);
                if (s_hi - s_lo < v.margin)
                {
                    v.margin = s_hi - s_lo;
                    v.location = x;
                    v.witness = {s_lo, s_hi};
                }
            }
        }
        v.ordered = v.margin < -1e-12 ? Ordered::no : Ordered::yes;
        if (v.yes())
            v.witness.clear();
    };

    OrderingVerdict v;
    v.order = "st";
    v.law_a = smaller.describe();
    v.law_b = larger.describe();
    v.method = smooth ? VerdictMethod::grid_check
                      : VerdictMethod::closed_form_condition;
    worst(smaller, larger, v);
    v.tested_range_only = smooth && v.yes();
    if (v.no())
    {
        OrderingVerdict rev;
        worst(larger, smaller, rev);
        v.note = rev.no() ? "survival functions cross; reverse order fails "
                            "at x = " + fmt(rev.location)
                          : "reverse order holds";
    }
    return v;
}

}  // namespace emptyspace

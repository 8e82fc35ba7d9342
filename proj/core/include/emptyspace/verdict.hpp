#pragma once

#include <string>
#include <vector>

namespace emptyspace {

enum class Ordered
{
    yes,
    no,
    undetermined
};

enum class VerdictMethod
{
    closed_form_condition,
    grid_check,
    empirical
};

//---------------------------------------------------------------------------//
/*!
 * Outcome of a stochastic-order check.
 *
 * `no` is only issued with a witness: `location` is the s (or t) value where
 * the violation was observed and `witness` holds the two compared values.
 * Grid checks that find no violation set `tested_range_only`.
 */
struct OrderingVerdict
{
    Ordered ordered = Ordered::undetermined;
    double margin = 0;
    double location = 0;
    int sector = -1;
    VerdictMethod method = VerdictMethod::grid_check;
    bool tested_range_only = false;
    std::vector<double> witness;
    std::string order;
    std::string law_a;
    std::string law_b;
    std::string note;

    bool yes() const { return ordered == Ordered::yes; }
    bool no() const { return ordered == Ordered::no; }
};

std::string to_string(Ordered o);
std::string to_string(VerdictMethod m);

}  // namespace emptyspace

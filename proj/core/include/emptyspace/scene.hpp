#pragma once

#include <cstddef>
#include <vector>

#include "emptyspace/vec.hpp"

namespace emptyspace {

//---------------------------------------------------------------------------//
/*!
 * Realized germ-grain configuration on the periodic box [0, side)^dim.
 *
 * Grain k is the closed ball of radius `radii[k]` centered at `germs[k]`;
 * radius zero is a point grain. `cluster_id[k]` is the index of the parent
 * that produced germ k (germ index itself for Poisson germs).
 */
struct GermGrainScene
{
    int dim = 2;
    double side = 0;
    std::vector<Vec> germs;
    std::vector<double> radii;
    std::vector<int> cluster_id;
    double realized_lambda = 0;
    std::size_t parent_count = 0;

    std::size_t size() const { return germs.size(); }
    bool empty() const { return germs.empty(); }
    double max_radius() const
    {
        double r = 0;
        for (double x : radii)
            r = x > r ? x : r;
        return r;
    }
};

//! Minimum-image displacement b - a on the torus of the given side.
inline Vec torus_delta(Vec const& a, Vec const& b, double side, int dim)
{
    Vec z = b - a;
    for (int i = 0; i < dim; ++i)
        z[i] -= side * std::nearbyint(z[i] / side);
    return z;
}

}  // namespace emptyspace

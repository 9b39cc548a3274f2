#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maoa/rng.hpp"

namespace maoa {

struct NelderMeadOptions
{
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double tolerance = 1e-10;  // stop when the simplex value spread falls below this
    std::uint64_t max_evaluations = 10'000;
    double initial_step = 0.1;  // per coordinate, scaled by `scale`
};

struct NelderMeadResult
{
    std::vector<double> x;
    double value;
    std::uint64_t evaluations;
    bool converged;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Minimises f from x0. `scale` sets the initial simplex edge per coordinate
/// (empty: all ones).
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const std::vector<double>& scale = {},
                             const NelderMeadOptions& opts = {});

struct MultistartOptions
{
    std::uint64_t starts = 500;
    std::uint64_t refine = 3;  // best starts handed to Nelder-Mead
    NelderMeadOptions nm;
};

struct MultistartResult
{
    NelderMeadResult best;
    std::vector<NelderMeadResult> refined;  // in order of their starting value
};

/// Evaluates `starts` random points from `draw`, refines the best `refine`
/// with Nelder-Mead and returns the best result (ties: lowest start index).
MultistartResult multistart_minimise(const Objective& f,
                                     const std::function<std::vector<double>(Rng&)>& draw,
                                     const std::vector<double>& scale, Rng& rng,
                                     const MultistartOptions& opts = {});

}  // namespace maoa

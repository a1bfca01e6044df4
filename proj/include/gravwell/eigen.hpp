#pragma once

#include <functional>
#include <vector>

#include "gravwell/scales.hpp"

namespace gravwell {

enum class StateKind
{
    gravitational,
    square_well
};

char const* to_string(StateKind k);

/// Which boundary conditions the ladder was solved with.
enum class WellModel
{
    infinite,
    finite
};

/// One bound level. The interior wave function in units of l0^{-1/2} is
/// psi(s) = ai_coef * Ai(s - lambda) + bi_coef * Bi(s - lambda); a and S follow
/// the convention psi = sqrt(a) [Ai - S Bi].
struct BoundState
{
    int n = 0;
    double lambda = 0;
    double S = 0;
    double a = 0;
    double log_b = 0; // ln of 0.3 l0^3 psi'(h)^2
    double log_c = 0; // ln of 0.3 l0^3 psi'(0)^2
    double beta = 0;
    StateKind kind = StateKind::gravitational;
    double ai_coef = 0;
    double bi_coef = 0;
    double residual = 0;
};

struct LevelLadder
{
    std::vector<BoundState> states;
    WellConfig config;
    WellModel model = WellModel::infinite;
    int total_expected = 0;
};

/// Infinite walls at s = 0 and s = h. Returns the n_max lowest states with
/// beta filled from config.e when that is set (zero otherwise).
std::vector<BoundState> solve_infinite_well(double h, int n_max, double e = 0);

/// Roots of Ai(-lambda) = 0 (mirror only).
std::vector<double> solve_single_wall(int n_max);

/// Semiclassical single-wall seed ((3 pi / 4)(2 n - 1/2))^{2/3}.
double single_wall_seed(int n);

struct FiniteWellOptions
{
    bool tail_normalization = false; // add the exterior tails to the norm
};

/// Barrier uc on both sides. n_max is clipped to the number of bound states.
LevelLadder solve_finite_well(WellConfig const& config, int n_max,
                              FiniteWellOptions const& options = {});

/// Ladder of the requested model; n_max <= 0 selects min(estimate, 200).
LevelLadder solve_ladder(WellConfig const& config, WellModel model, int n_max);

struct WallCoefficients
{
    double log_b = 0;
    double log_c = 0;
};

WallCoefficients wall_coefficients(BoundState const& state, WellConfig const& config);

/// l0 psi^2 on either wall of a symmetric square-well level; DomainError if lambda >= uc.
double square_well_wall_value(double lambda, WellConfig const& config);

/// Deep-level limit (2/h)(lambda/uc) of the same quantity.
double square_well_wall_value_deep(double lambda, WellConfig const& config);

struct PerturbativeShift
{
    double d_lambda = 0;
    double d_S = 0;
};

/// First-order shift of an infinite-well level when the walls become finite.
PerturbativeShift perturbative_shift(BoundState const& infinite_state, double h, double uc);

/// Estimate (h/pi) sqrt(uc) of the number of bound levels.
int level_count_estimate(double h, double uc);

/// Wave function value at s (units l0^{-1/2}); outside [0, h] the finite-well
/// exponential tails are used when uc > 0, zero otherwise.
double wave_function(BoundState const& state, double s, double h, double uc = 0);

/// Normalized secular functions whose zeros are the levels.
double infinite_well_secular(double lambda, double h);
double finite_well_secular(double lambda, double h, double uc);

namespace detail {

/// Brackets and bisects the n_max lowest zeros of f on [lo, hi). index_of
/// returns the semiclassical level index at lambda, used as a consistency check.
std::vector<double> find_ladder(std::function<double(double)> const& f,
                                std::function<double(double)> const& step_of,
                                std::function<double(double)> const& index_of, double lo,
                                double hi, int n_max);

} // namespace detail

} // namespace gravwell

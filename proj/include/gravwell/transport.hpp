#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gravwell/roughness.hpp"

namespace gravwell {

struct InitialDistribution
{
    enum class Kind
    {
        uniform,    // N_j(0) = total / Z
        equilibrium // N_j(0) proportional to beta_j
    };
    Kind kind = Kind::uniform;
    double total = 1.0;
};

/// Populations at the requested times.
struct PopulationState
{
    std::vector<double> N;
    double t = 0;
};

struct EvolveOptions
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-14; // relative to the initial total
    double prune_threshold = 50.0; // levels with t/tau_j^(0) above this start empty
};

/// Initial populations for a system.
std::vector<double> initial_populations(RateSystem const& rates, InitialDistribution const& init);

/// dN_j/dt = sum_j' K_jj' (N_j'/beta_j' - N_j/beta_j) - N_j / tau_j^(0), integrated
/// with an adaptive implicit Rosenbrock scheme. Returns one state per sample time
/// (ascending, all >= 0).
std::vector<PopulationState> evolve(RateSystem const& rates, std::vector<double> const& N0,
                                    std::vector<double> const& times,
                                    EvolveOptions const& options = {});

PopulationState evolve(RateSystem const& rates, InitialDistribution const& init, double t_final,
                       EvolveOptions const& options = {});

/// Generator matrix M with dN/dt = M N.
Eigen::MatrixXd rate_matrix(RateSystem const& rates);

struct RelaxationSpectrum
{
    std::vector<double> decay_rates;   // ascending, s^-1
    Eigen::MatrixXd modes;             // column i: right eigenvector of M for -decay_rates[i]
    Eigen::MatrixXd left_modes;        // column i: matching left eigenvector, left^T right = 1
};

/// The k slowest decay modes of M.
RelaxationSpectrum relaxation_spectrum(RateSystem const& rates, std::size_t k);

/// N(t) = sum_i modes_i (left_i . N0) exp(-rate_i t) over all returned modes.
std::vector<double> reconstruct(RelaxationSpectrum const& spectrum, std::vector<double> const& N0,
                                double t);

} // namespace gravwell

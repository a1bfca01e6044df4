#include "gravwell/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/ublas/matrix.hpp>
#include <boost/numeric/ublas/vector.hpp>

#include "gravwell/errors.hpp"

namespace gravwell {
namespace {

namespace ode = boost::numeric::odeint;
namespace ublas = boost::numeric::ublas;

using Vec = ublas::vector<double>;
using Mat = ublas::matrix<double>;

void check_rates(RateSystem const& rates)
{
    std::size_t const n = rates.size();
    if (static_cast<std::size_t>(rates.interstate.rows()) != n
        || static_cast<std::size_t>(rates.interstate.cols()) != n || rates.betas.size() != n)
        throw ValidationError("rate system: inconsistent sizes");
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!std::isfinite(rates.direct[i]) || rates.direct[i] < 0)
            throw ValidationError("rate system: direct rate of level " + std::to_string(i + 1)
                                  + " is not finite and >= 0");
        if (!(rates.betas[i] > 0))
            throw ValidationError("rate system: beta of level " + std::to_string(i + 1)
                                  + " must be > 0");
        for (std::size_t k = 0; k < n; ++k)
            if (!std::isfinite(rates.interstate(i, k)) || rates.interstate(i, k) < 0)
                throw ValidationError("rate system: interstate rate is not finite and >= 0");
    }
}

} // namespace

Eigen::MatrixXd rate_matrix(RateSystem const& rates)
{
    std::size_t const n = rates.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double out = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k == j)
                continue;
            m(j, k) = rates.interstate(j, k) / rates.betas[k];
            out += rates.interstate(j, k);
        }
        m(j, j) = -out / rates.betas[j] - rates.direct[j];
    }
    return m;
}

std::vector<double> initial_populations(RateSystem const& rates, InitialDistribution const& init)
{
    std::size_t const n = rates.size();
    std::vector<double> N(n, 0.0);
    if (n == 0)
        return N;
    if (init.kind == InitialDistribution::Kind::uniform)
        std::fill(N.begin(), N.end(), init.total / static_cast<double>(n));
    else
    {
        double const sum = std::accumulate(rates.betas.begin(), rates.betas.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            N[j] = init.total * rates.betas[j] / sum;
    }
    return N;
}

std::vector<PopulationState> evolve(RateSystem const& rates, std::vector<double> const& N0,
                                    std::vector<double> const& times, EvolveOptions const& options)
{
    check_rates(rates);
    std::size_t const n = rates.size();
    if (N0.size() != n)
        throw ValidationError("evolve: initial population size mismatch");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] >= 0) || (i > 0 && times[i] < times[i - 1]))
            throw ValidationError("evolve: sample times must be >= 0 and ascending");

    // Levels emptied within the flight time are dropped; their couplings stay as losses.
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
        if (!(rates.t_over_tau.size() == n && rates.t_over_tau[j] > options.prune_threshold))
            keep.push_back(j);

    Eigen::MatrixXd const full = rate_matrix(rates);
    std::size_t const m = keep.size();
    Mat M(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            M(a, b) = full(keep[a], keep[b]);

    double const total0 = std::accumulate(N0.begin(), N0.end(), 0.0);
    std::vector<PopulationState> out;
    out.reserve(times.size());
    Vec x(m);
    for (std::size_t a = 0; a < m; ++a)
        x(a) = N0[keep[a]];

    auto system = [&M](Vec const& y, Vec& dydt, double) { dydt = ublas::prod(M, y); };
    auto jacobian = [&M](Vec const&, Mat& J, double, Vec& dfdt) {
        J = M;
        dfdt.clear();
    };
    double const scale = total0 > 0 ? total0 : 1.0;
    auto stepper = ode::make_dense_output(options.abs_tol * scale, options.rel_tol,
                                          ode::rosenbrock4<double>());

    double t = 0;
    double dt = 1e-6;
    if (!times.empty() && times.back() > 0)
        dt = std::min(dt, times.back() * 1e-3);
    for (double target : times)
    {
        if (target > t && m > 0)
        {
            try
            {
                ode::integrate_adaptive(stepper, std::make_pair(system, jacobian), x, t, target, dt);
            }
            catch (std::exception const& ex)
            {
                throw ConvergenceError(std::string("evolve: integration failed: ") + ex.what());
            }
            t = target;
        }
        PopulationState ps;
        ps.t = target;
        ps.N.assign(n, 0.0);
        for (std::size_t a = 0; a < m; ++a)
        {
            double v = x(a);
            if (!std::isfinite(v))
                throw ConvergenceError("evolve: non-finite population at level "
                                       + std::to_string(keep[a] + 1));
            // Round-off can leave values a hair below zero.
            if (v < 0 && v > -1e-12 * scale)
                v = 0;
            ps.N[keep[a]] = v;
        }
        out.push_back(std::move(ps));
    }
    return out;
}

PopulationState evolve(RateSystem const& rates, InitialDistribution const& init, double t_final,
                       EvolveOptions const& options)
{
    if (!(t_final >= 0))
        throw ValidationError("evolve: t_final must be >= 0");
    auto states = evolve(rates, initial_populations(rates, init), {t_final}, options);
    return states.front();
}

RelaxationSpectrum relaxation_spectrum(RateSystem const& rates, std::size_t k)
{
    check_rates(rates);
    std::size_t const n = rates.size();
    if (n > 200)
        throw ValidationError("relaxation_spectrum: system size must be <= 200");
    if (k > n)
        throw ValidationError("relaxation_spectrum: k must not exceed the system size");
    // B^{-1/2} M B^{1/2} is symmetric, so the decay rates are real and >= 0.
    Eigen::VectorXd sq(n);
    for (std::size_t j = 0; j < n; ++j)
        sq(j) = std::sqrt(rates.betas[j]);
    Eigen::MatrixXd const M = rate_matrix(rates);
    Eigen::MatrixXd A(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            A(j, i) = -M(j, i) * sq(i) / sq(j);
    A = 0.5 * (A + A.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("relaxation_spectrum: eigen-decomposition did not converge");
    RelaxationSpectrum out;
    out.modes.resize(n, k);
    out.left_modes.resize(n, k);
    for (std::size_t i = 0; i < k; ++i)
    {
        out.decay_rates.push_back(std::max(solver.eigenvalues()(i), 0.0));
        Eigen::VectorXd const u = solver.eigenvectors().col(i);
        out.modes.col(i) = sq.cwiseProduct(u);
        out.left_modes.col(i) = u.cwiseQuotient(sq);
    }
    return out;
}

std::vector<double> reconstruct(RelaxationSpectrum const& spectrum, std::vector<double> const& N0,
                                double t)
{
    std::size_t const n = N0.size();
    Eigen::Map<Eigen::VectorXd const> n0(N0.data(), n);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < spectrum.decay_rates.size(); ++i)
        acc += spectrum.modes.col(i) * (spectrum.left_modes.col(i).dot(n0)
                                        * std::exp(-spectrum.decay_rates[i] * t));
    return {acc.data(), acc.data() + n};
}

} // namespace gravwell

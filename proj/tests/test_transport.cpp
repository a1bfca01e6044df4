#include <doctest.h>

#include "gravwell/errors.hpp"
#include "gravwell/transport.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace gravwell;

namespace {

RateSystem random_system(std::mt19937_64& rng, std::size_t n, double loss_scale,
                         double coupling_scale = 400.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RateSystem s;
    s.flight_time = 2e-2;
    s.interstate = Eigen::MatrixXd::Zero(n, n);
    s.direct.resize(n);
    s.betas.resize(n);
    s.t_over_tau.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        s.betas[i] = 300 + 600 * u(rng);
        s.direct[i] = loss_scale * u(rng) * u(rng);
        s.t_over_tau[i] = s.flight_time * s.direct[i];
        for (std::size_t k = 0; k < i; ++k)
            s.interstate(i, k) = s.interstate(k, i) = coupling_scale * s.betas[i] * u(rng) * u(rng);
    }
    return s;
}

double total(std::vector<double> const& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0);
}

} // namespace

TEST_CASE("no rates, nothing moves")
{
    std::mt19937_64 rng(1);
    auto s = random_system(rng, 6, 0.0, 0.0);
    std::vector<double> const N0{0.1, 0.3, 0.05, 0.2, 0.15, 0.2};
    auto const out = evolve(s, N0, {0.0, 0.01, 0.02});
    REQUIRE(out.size() == 3);
    for (auto const& st : out)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(st.N[j] == doctest::Approx(N0[j]).epsilon(1e-12));
}

TEST_CASE("single level decays exponentially")
{
    RateSystem s;
    s.flight_time = 2e-2;
    s.interstate = Eigen::MatrixXd::Zero(1, 1);
    s.direct = {100.0};
    s.betas = {500.0};
    s.t_over_tau = {2.0};
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i)
        times.push_back(1e-3 * i);
    auto const out = evolve(s, {1.0}, times);
    for (auto const& st : out)
        CHECK(std::fabs(st.N[0] - std::exp(-100.0 * st.t)) <= 1e-8 * std::exp(-100.0 * st.t));
}

TEST_CASE("scattering alone conserves the population")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial)
    {
        auto s = random_system(rng, 9, 0.0);
        std::vector<double> N0(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& v : N0)
            v = u(rng);
        double const t0 = total(N0);
        auto const out = evolve(s, N0, {0.005, 0.02});
        for (auto const& st : out)
            CHECK(std::fabs(total(st.N) - t0) <= 1e-9 * t0);
        // the flow relaxes toward N_j proportional to beta_j
        double const ratio0 = out.back().N[0] / s.betas[0];
        for (std::size_t j = 1; j < 9; ++j)
            CHECK(out.back().N[j] / s.betas[j] == doctest::Approx(ratio0).epsilon(0.05));
    }
}

TEST_CASE("equilibrium start is stationary without absorption")
{
    std::mt19937_64 rng(3);
    auto s = random_system(rng, 12, 0.0);
    auto const N0 = initial_populations(s, {InitialDistribution::Kind::equilibrium, 12.0});
    CHECK(total(N0) == doctest::Approx(12.0).epsilon(1e-14));
    auto const out = evolve(s, N0, {0.02});
    for (std::size_t j = 0; j < 12; ++j)
        CHECK(std::fabs(out[0].N[j] - N0[j]) <= 1e-9 * N0[j]);
    auto const uni = initial_populations(s, {InitialDistribution::Kind::uniform, 6.0});
    for (double v : uni)
        CHECK(v == 0.5);
}

TEST_CASE("loss balance")
{
    // dN/dt = -sum_j direct_j N_j, checked by finite differences of the solution
    std::mt19937_64 rng(4);
    auto s = random_system(rng, 8, 100.0);
    auto const N0 = initial_populations(s, {});
    double const t = 0.01, dt = 1e-5;
    auto const out = evolve(s, N0, {t - dt, t, t + dt});
    double const slope = (total(out[2].N) - total(out[0].N)) / (2 * dt);
    double loss = 0;
    for (std::size_t j = 0; j < 8; ++j)
        loss += s.direct[j] * out[1].N[j];
    CHECK(slope == doctest::Approx(-loss).epsilon(1e-4));
}

TEST_CASE("generator matrix")
{
    std::mt19937_64 rng(5);
    auto s = random_system(rng, 5, 50.0);
    auto const M = rate_matrix(s);
    for (int j = 0; j < 5; ++j)
    {
        double off = 0;
        for (int k = 0; k < 5; ++k)
            if (k != j)
            {
                CHECK(M(j, k) == doctest::Approx(s.interstate(j, k) / s.betas[k]).epsilon(1e-15));
                off += s.interstate(j, k);
            }
        CHECK(M(j, j) == doctest::Approx(-off / s.betas[j] - s.direct[j]).epsilon(1e-14));
    }
}

TEST_CASE("spectrum: uncoupled levels")
{
    std::mt19937_64 rng(6);
    auto s = random_system(rng, 7, 80.0, 0.0);
    auto const sp = relaxation_spectrum(s, 7);
    auto sorted = s.direct;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(sp.decay_rates[i] == doctest::Approx(sorted[i]).epsilon(1e-12));
}

TEST_CASE("spectrum: two levels")
{
    RateSystem s;
    s.flight_time = 2e-2;
    s.interstate = Eigen::MatrixXd::Zero(2, 2);
    s.interstate(0, 1) = s.interstate(1, 0) = 3e4;
    s.direct = {0.0, 0.0};
    s.betas = {400.0, 600.0};
    s.t_over_tau = {0.0, 0.0};
    auto const sp = relaxation_spectrum(s, 2);
    CHECK(std::fabs(sp.decay_rates[0]) < 1e-10);
    CHECK(sp.decay_rates[1] == doctest::Approx(3e4 * (1 / 400.0 + 1 / 600.0)).epsilon(1e-12));
    // slowest mode is the equilibrium
    CHECK(sp.modes(1, 0) / sp.modes(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("spectrum against a general eigensolver")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial)
    {
        std::size_t const n = 3 + trial * 17 % 18;
        auto s = random_system(rng, n, 120.0);
        auto const sp = relaxation_spectrum(s, n);
        Eigen::EigenSolver<Eigen::MatrixXd> es(rate_matrix(s));
        std::vector<double> ref;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        {
            CHECK(std::fabs(es.eigenvalues()[i].imag()) < 1e-8 * es.eigenvalues().cwiseAbs().maxCoeff());
            ref.push_back(-es.eigenvalues()[i].real());
        }
        std::sort(ref.begin(), ref.end());
        double const scale = ref.back();
        for (std::size_t i = 0; i < n; ++i)
        {
            CHECK(sp.decay_rates[i] >= 0);
            CHECK(std::fabs(sp.decay_rates[i] - ref[i]) < 1e-9 * scale);
        }
        // M v = -rate v and left^T right = identity
        auto const M = rate_matrix(s);
        for (std::size_t i = 0; i < n; ++i)
        {
            Eigen::VectorXd const v = sp.modes.col(i);
            CHECK((M * v + sp.decay_rates[i] * v).norm() < 1e-9 * scale * v.norm());
        }
        Eigen::MatrixXd const id = sp.left_modes.transpose() * sp.modes;
        CHECK((id - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-9);
    }
}

TEST_CASE("mode reconstruction matches integration")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 6; ++trial)
    {
        std::size_t const n = 4 + 3 * trial;
        auto s = random_system(rng, n, 100.0);
        auto const N0 = initial_populations(s, {});
        auto const sp = relaxation_spectrum(s, n);
        for (double t : {0.002, 0.02})
        {
            auto const a = evolve(s, N0, {t})[0].N;
            auto const b = reconstruct(sp, N0, t);
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::fabs(a[j] - b[j]) <= 1e-6 * std::max(std::fabs(a[j]), 1e-6 * total(a)));
        }
    }
}

TEST_CASE("populations stay non-negative")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial)
    {
        auto s = random_system(rng, 15, 2000.0, 4000.0);
        std::vector<double> N0(15, 0.0);
        N0[trial] = 1.0;
        std::vector<double> times;
        for (int i = 1; i <= 40; ++i)
            times.push_back(5e-4 * i);
        for (auto const& st : evolve(s, N0, times))
            for (double v : st.N)
                CHECK(v >= -1e-12);
    }
}

TEST_CASE("coupling never raises the survival from equilibrium")
{
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto coupled = random_system(rng, 2 + trial % 10, 300.0);
        auto bare = coupled;
        bare.interstate.setZero();
        InitialDistribution const eq{InitialDistribution::Kind::equilibrium, 1.0};
        double const with = total(evolve(coupled, eq, 0.02).N);
        double const without = total(evolve(bare, eq, 0.02).N);
        CHECK(with <= without * (1 + 1e-9));
    }
}

TEST_CASE("pruned levels start empty and options are validated")
{
    RateSystem s;
    s.flight_time = 2e-2;
    s.interstate = Eigen::MatrixXd::Zero(2, 2);
    s.direct = {10.0, 1e5};
    s.betas = {500.0, 500.0};
    s.t_over_tau = {0.2, 2e3};
    auto const out = evolve(s, {0.5, 0.5}, {0.0, 0.02});
    CHECK(out[0].N[1] == 0.0);
    CHECK(out[1].N[0] == doctest::Approx(0.5 * std::exp(-0.2)).epsilon(1e-8));
    CHECK_THROWS_AS(evolve(s, {1.0}, {0.01}), ValidationError);
    CHECK_THROWS_AS(evolve(s, {0.5, 0.5}, {0.02, 0.01}), ValidationError);
    CHECK_THROWS_AS(relaxation_spectrum(s, 3), ValidationError);
    s.direct[0] = -1;
    CHECK_THROWS_AS(evolve(s, {0.5, 0.5}, {0.01}), ValidationError);
}

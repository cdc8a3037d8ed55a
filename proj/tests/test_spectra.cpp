#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "heunlab/kernels.hpp"
#include "heunlab/sampling.hpp"
#include "heunlab/spectra.hpp"
#include "oracles.hpp"

using namespace heun;

namespace {

constexpr double kPi = 3.14159265358979323846;

EllipticParams unit_params() { return lattice_constants(1.0, 1.0, 1e-12); }

} // namespace

TEST_CASE("trig basis: flat-weight case reproduces the cosine system") {
    const double r = 1.0;
    const double norm = std::sqrt(4.0 * r / kPi);
    for (double x : {0.2, 0.7, 1.3}) {
        CHECK(trig_basis(0, 0, 0, x, r) == doctest::Approx(norm / std::sqrt(2.0)).epsilon(1e-12));
        for (int n : {1, 2, 5})
            CHECK(trig_basis(0, 0, n, x, r) == doctest::Approx(norm * std::cos(2.0 * n * r * x)).epsilon(1e-11));
    }
}

TEST_CASE("trig basis: mixed case starts from the odd fundamental") {
    const double r = 1.0;
    const double norm = std::sqrt(4.0 * r / kPi);
    for (double x : {0.3, 0.8, 1.4}) {
        CHECK(trig_basis(1, 0, 0, x, r) == doctest::Approx(norm * std::sin(r * x)).epsilon(1e-12));
        CHECK(trig_basis(1, 0, 1, x, r) == doctest::Approx(norm * std::sin(3.0 * r * x)).epsilon(1e-11));
        CHECK(trig_basis(1, 1, 0, x, r) ==
              doctest::Approx(norm * std::sin(2.0 * r * x)).epsilon(1e-11));
        CHECK(trig_basis(0, 1, 0, x, r) == doctest::Approx(norm * std::cos(r * x)).epsilon(1e-12));
    }
}

TEST_CASE("trig basis: domain checks") {
    CHECK_THROWS_AS(trig_basis(-0.6, 0.0, 0, 0.4, 1.0), domain_error);
    CHECK_THROWS_AS(trig_basis(0.0, -0.5, 0, 0.4, 1.0), domain_error);
    CHECK_THROWS_AS(trig_basis(0.5, 0.5, -1, 0.4, 1.0), domain_error);
}

TEST_CASE("trig basis: orthonormal under the plain measure") {
    const double g0 = 0.7, g1 = 0.2, r = 1.0;
    const int m = 16;
    const QuadratureRule rule = jacobi_rule(m + 8, g0 - 0.5, g1 - 0.5, r);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    // assemble with the weight-absorbing rule: divide out the absorbed part
    for (int i = 0; i < rule.order; ++i) {
        const double x = rule.nodes[static_cast<size_t>(i)];
        const double wt = std::pow(std::sin(r * x), 2.0 * g0) * std::pow(std::cos(r * x), 2.0 * g1);
        const double v = rule.weights[static_cast<size_t>(i)] / (2.0 * r * std::pow(2.0, g0 + g1) * wt);
        Eigen::VectorXd phi(m);
        for (int k = 0; k < m; ++k) phi[k] = trig_basis(g0, g1, k, x, r);
        gram += v * phi * phi.transpose();
    }
    CHECK((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("heun matrix: diagonal at vanishing-potential couplings") {
    const EllipticParams par = unit_params();
    {
        const DiscretizedOperator op = heun_matrix({{0, 0, 1, 1}}, 12, par);
        for (int m = 0; m < 12; ++m) {
            for (int n = 0; n < 12; ++n) {
                const double expect = m == n ? 4.0 * m * m : 0.0;
                CHECK(std::abs(op.matrix(m, n) - expect) < 1e-12 * std::max(1.0, expect));
            }
        }
    }
    {
        const DiscretizedOperator op = heun_matrix({{1, 1, 0, 0}}, 10, par);
        for (int m = 0; m < 10; ++m)
            CHECK(op.matrix(m, m) == doctest::Approx((2.0 * m + 2) * (2.0 * m + 2)).epsilon(1e-12));
    }
}

TEST_CASE("heun matrix: symmetric and tagged") {
    const EllipticParams par = unit_params();
    const DiscretizedOperator op = heun_matrix({{1.5, 0.5, 0.5, 0.5}}, 48, par);
    const double denom = op.matrix.norm();
    CHECK((op.matrix - op.matrix.transpose()).norm() < 1e-13 * denom);
    CHECK(op.size == 48);
    CHECK(op.basis_tag.find("jacobi") == 0);
    CHECK_THROWS_AS(heun_matrix({{-0.6, 0.5, 0.5, 0.5}}, 16, par), domain_error);
}

TEST_CASE("heun spectrum: the three nontrivial closed-form ladders") {
    const EllipticParams par = unit_params();
    struct Case {
        CouplingVector g;
        double offset; // E_n = (2n + offset)^2
    };
    for (const Case& c : {Case{{{1.5, 0.5, 0.5, 0.5}}, 2.0}, Case{{{0.5, 0.5, 0.5, 1.5}}, 1.0},
                          Case{{{0.5, 0.5, -0.5, 0.5}}, 1.0}}) {
        // these potentials are genuinely nonzero
        CHECK(std::abs(potential(c.g, 0.7, par)) > 0.1);
        const SpectrumResult sp = heun_spectrum(c.g, 48, par);
        REQUIRE(sp.converged_count >= 7);
        for (int n = 0; n <= 6; ++n) {
            const double ref = (2.0 * n + c.offset) * (2.0 * n + c.offset);
            CHECK(oracle::rel_err(sp.eigenvalues[static_cast<size_t>(n)], ref) < 1e-8);
        }
    }
}

TEST_CASE("heun spectrum: converged eigenvalues are simple and ordered") {
    const EllipticParams par = unit_params();
    const SpectrumResult sp = heun_spectrum({{0.9, 0.8, 0.7, 0.6}}, 40, par);
    REQUIRE(sp.converged_count > 8);
    for (int n = 1; n < sp.converged_count; ++n)
        CHECK(sp.eigenvalues[static_cast<size_t>(n)] - sp.eigenvalues[static_cast<size_t>(n - 1)] > 1e-6);
}

TEST_CASE("heun spectrum: an unreachable tolerance reports zero converged, loudly") {
    const EllipticParams par = unit_params();
    const SpectrumResult sp = heun_spectrum({{0.9, 0.8, 0.7, 0.6}}, 8, par, 1e-30);
    CHECK(sp.converged_count == 0);
    CHECK(sp.eigenvalues.size() == 8); // values still reported
    CHECK(sp.tolerance == 1e-30);
}

TEST_CASE("heun spectrum: eigenvalue growth follows the free ladder") {
    const EllipticParams par = unit_params();
    const SpectrumResult sp = heun_spectrum({{1.2, 0.7, 0.9, 0.3}}, 64, par);
    REQUIRE(sp.converged_count > 20);
    for (int m = 10; m < sp.converged_count; ++m) {
        const double ratio = sp.eigenvalues[static_cast<size_t>(m)] / (4.0 * m * m);
        CHECK(std::abs(ratio - 1.0) < 5.0 / m);
    }
}

TEST_CASE("spectral duality at seeded couplings") {
    const EllipticParams par = unit_params();
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 3; ++rep) {
        const CouplingVector g = sample_pi_r(rng);
        const SpectrumResult a = heun_spectrum(g, 48, par);
        const SpectrumResult b = heun_spectrum(dual(g), 48, par);
        const int k = std::min({6, a.converged_count, b.converged_count});
        REQUIRE(k >= 6);
        for (int n = 0; n < k; ++n)
            CHECK(std::abs(a.eigenvalues[static_cast<size_t>(n)] - b.eigenvalues[static_cast<size_t>(n)]) <
                  1e-8 * std::max(1.0, std::abs(b.eigenvalues[static_cast<size_t>(n)])));
    }
}

TEST_CASE("hs matrix and svd: closed-form ladders") {
    const EllipticParams par = unit_params();
    const double ra = par.r * par.alpha;
    struct Case {
        CouplingVector g;
        std::function<double(int)> nu;
    };
    const std::vector<Case> cases = {
        {{{0, 0, 1, 1}}, [&](int n) { return kPi / (par.p * std::cosh(n * ra)); }},
        {{{1, 1, 0, 0}}, [&](int n) { return kPi * std::exp(ra) / (par.p * std::cosh((n + 1) * ra)); }},
        {{{1, 1, 1, 1}},
         [&](int n) { return 2.0 * kPi * (n + 1) * std::exp(ra) / (par.p * par.p * std::sinh((n + 1) * ra)); }},
        {{{1, 0, 0, 1}}, [&](int n) { return kPi * std::exp(0.5 * ra) / (par.p * std::cosh((n + 0.5) * ra)); }},
        {{{1, 0, 1, 0}}, [&](int n) { return kPi * std::exp(0.5 * ra) / (par.p * std::sinh((n + 0.5) * ra)); }},
    };
    for (const auto& c : cases) {
        const SvdResult svd = hs_svd(c.g, 48, par);
        REQUIRE(svd.converged_count >= 9);
        for (int n = 0; n <= 8; ++n)
            CHECK(oracle::rel_err(svd.singular_values[static_cast<size_t>(n)], c.nu(n)) < 1e-8);
        // sign convention: analytic cofactor positive at the left endpoint
        Eigen::VectorXd pone(48);
        std::vector<double> buf(48);
        jacobi_orthonormal(48, c.g[0] - 0.5, c.g[1] - 0.5, 1.0, buf.data());
        for (int k = 0; k < 48; ++k) pone[k] = buf[static_cast<size_t>(k)];
        for (int n = 0; n < svd.converged_count; ++n)
            CHECK(svd.left_coeff.col(n).dot(pone) > 0.0);
    }
}

TEST_CASE("hs svd: refusals outside the admissible set") {
    const EllipticParams par = unit_params();
    CHECK_THROWS_AS(hs_svd({{0, 0, 0, 1}}, 16, par), domain_error);       // kernel not square integrable
    CHECK_THROWS_AS(hs_svd({{0.2, 0.2, -0.5, -0.5}}, 16, par), domain_error); // negative half-sum
    CHECK_THROWS_AS(hs_matrix({{0, 0, 0, 1}}, 16, par), domain_error);
}

TEST_CASE("hs svd: rank-one path at vanishing half-sum") {
    const EllipticParams par = unit_params();
    const CouplingVector g{{0.4, 0.3, 0.1, -0.8}};
    const SvdResult svd = hs_svd(g, 48, par);
    CHECK(svd.rank_one);
    REQUIRE(svd.singular_values.size() == 1);
    const double ix = oracle::integrate([&](double x) { return weight(g, x, par); }, 0.0, par.omega1());
    const double iy =
        oracle::integrate([&](double y) { return weight(dual(g), y, par); }, 0.0, par.omega1());
    CHECK(svd.singular_values[0] == doctest::Approx(std::sqrt(ix * iy)).epsilon(1e-9));
    CHECK(svd.signed_mu[0] == svd.singular_values[0]);
}

TEST_CASE("parseval: converged square sum approaches the kernel norm") {
    const EllipticParams par = unit_params();
    for (const CouplingVector& g : {CouplingVector{{0, 0, 1, 1}}, CouplingVector{{1, 1, 0, 1}}}) {
        const SvdResult svd = hs_svd(g, 48, par);
        double sum = 0.0;
        for (int n = 0; n < svd.converged_count; ++n) {
            const double nu = svd.singular_values[static_cast<size_t>(n)];
            sum += nu * nu;
        }
        const HsNormResult hs = hs_norm_finite(g, par);
        // geometric tail bound from the last two converged values
        const double last = svd.singular_values[static_cast<size_t>(svd.converged_count - 1)];
        const double prev = svd.singular_values[static_cast<size_t>(svd.converged_count - 2)];
        const double rho2 = std::pow(last / prev, 2);
        const double tail = last * last * rho2 / (1.0 - rho2);
        CHECK(sum <= hs.estimate * (1.0 + 1e-10));
        CHECK(hs.estimate <= sum + tail + 1e-10 * hs.estimate);
        CHECK(hs.estimate == doctest::Approx(sum).epsilon(1e-8));
    }
}

TEST_CASE("transport: dual images are dual eigenfunctions with positive couplings") {
    const EllipticParams par = unit_params();
    {
        // dual partner has the shifted even ladder; the ground state sits at 4 r^2
        const CouplingVector g{{1, 1, 0, 1}};
        const TransportResult t = eigenfunction_transport(g, 0, 48, 48, par);
        CHECK(oracle::rel_err(t.energy, 4.0) < 1e-10);
        CHECK(t.mu > 0.0);
        CHECK(t.eigen_residual < 1e-8);
        CHECK(t.projection_defect < 1e-10);
        CHECK(!t.ambiguous);
    }
    for (int m = 0; m <= 5; ++m) {
        const TransportResult t = eigenfunction_transport({{1, 0, 1, 1}}, m, 48, 48, par);
        CHECK(t.eigen_residual < 1e-8);
        CHECK(t.mu > 0.0);
    }
    // self-adjoint case: transport coefficients are the singular values
    const SvdResult svd = hs_svd({{0, 0, 1, 1}}, 48, par);
    for (int m = 0; m <= 5; ++m) {
        const TransportResult t = eigenfunction_transport({{0, 0, 1, 1}}, m, 48, 48, par);
        CHECK(t.mu > 0.0);
        CHECK(oracle::rel_err(std::abs(t.mu), svd.singular_values[static_cast<size_t>(m)]) < 1e-9);
    }
    CHECK_THROWS_AS(eigenfunction_transport({{0, 0, 0, 0}}, 0, 32, 32, par), domain_error);
    CHECK_THROWS_AS(eigenfunction_transport({{1, 1, 0, 1}}, 0, 16, 32, par), domain_error);
    CHECK_THROWS_AS(eigenfunction_transport({{1, 1, 0, 1}}, 32, 32, 32, par), domain_error);
}

TEST_CASE("rank one: zero couplings") {
    const EllipticParams par = unit_params();
    const RankOneResult ro = rank_one_case({{0, 0, 0, 0}}, par);
    CHECK(ro.ground_energy == 0.0);
    CHECK(ro.ground_energy_dual == 0.0);
    CHECK(std::abs(ro.identity_value) < 1e-14);
    CHECK(ro.identity_residual < 1e-14);
    CHECK(std::abs(ro.galerkin_energy) < 1e-10);
    // the residual floor is machine noise amplified by the operator norm 4M^2
    CHECK(ro.eigen_residual < 1e-8);
}

TEST_CASE("rank one: alternating couplings agree across all routes") {
    const EllipticParams par = unit_params();
    // outside the square-integrable region: only the evaluation routes exist
    const RankOneResult ro = rank_one_case({{1, -1, 1, -1}}, par);
    const double scale = std::max(1.0, std::abs(ro.ground_energy));
    CHECK(std::abs(ro.ground_energy - ro.ground_energy_dual) < 1e-10 * scale);
    CHECK(std::abs(ro.identity_value - ro.ground_energy) < 1e-8 * scale);
    CHECK(std::isnan(ro.galerkin_energy));
    // expected value: -e1 + 3 e2 - e3 from the coefficient pattern
    const double expect = -par.e[0] + 3.0 * par.e[1] - par.e[2];
    CHECK(ro.ground_energy == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("rank one: scaled alternating family keeps the identity flat") {
    const EllipticParams par = unit_params();
    const double t = 0.3;
    const RankOneResult ro = rank_one_case({{t, -t, t, -t}}, par);
    CHECK(ro.identity_residual < 1e-10);
    CHECK(std::abs(ro.ground_energy - ro.ground_energy_dual) < 1e-12);
}

TEST_CASE("rank one: interior sample with every route live") {
    const EllipticParams par = unit_params();
    std::mt19937_64 rng(71);
    const CouplingVector g = sample_rank_one(rng);
    REQUIRE(std::abs(g.s_g()) < 1e-14);
    const RankOneResult ro = rank_one_case(g, par);
    const double scale = std::max(1.0, std::abs(ro.ground_energy));
    CHECK(ro.identity_residual < 1e-10);
    CHECK(std::abs(ro.ground_energy_dual - ro.ground_energy) < 1e-8 * scale);
    CHECK(std::abs(ro.identity_value - ro.ground_energy) < 1e-8 * scale);
    CHECK(std::abs(ro.galerkin_energy - ro.ground_energy) < 1e-8 * scale);
    CHECK(ro.eigen_residual < 1e-8);
    CHECK_THROWS_AS(rank_one_case({{1, 0, 0, 0}}, par), domain_error);
}

TEST_CASE("commutation: the kernel-square matrix commutes with the resolvent in the limit") {
    // slow nome: at alpha = 1 the commutator hits the roundoff floor already
    // at the smallest size, leaving nothing to decrease
    const EllipticParams par = lattice_constants(1.0, 0.35, 1e-12);
    const CouplingVector g{{1, 1, 0, 1}};
    auto commutator_norm = [&](int m) {
        const int n = 2 * m;
        const DiscretizedOperator hs = hs_matrix(g, n, par);
        const QuadratureRule rule = jacobi_rule(n, g[0] - 0.5, g[1] - 0.5, par.r);
        Eigen::MatrixXd u(n, m);
        std::vector<double> buf(static_cast<size_t>(m));
        for (int i = 0; i < n; ++i) {
            jacobi_orthonormal(m, g[0] - 0.5, g[1] - 0.5, rule.y_nodes[static_cast<size_t>(i)], buf.data());
            for (int k = 0; k < m; ++k)
                u(i, k) = std::sqrt(rule.weights[static_cast<size_t>(i)]) * buf[static_cast<size_t>(k)];
        }
        const Eigen::MatrixXd that = u.transpose() * hs.matrix * hs.matrix.transpose() * u;
        const Eigen::MatrixXd b = heun_matrix(g, m, par).matrix;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
        const double shift = 1.0 + std::max(0.0, -es.eigenvalues()[0]);
        const Eigen::MatrixXd res =
            (b + shift * Eigen::MatrixXd::Identity(m, m)).ldlt().solve(Eigen::MatrixXd::Identity(m, m));
        return (res * that - that * res).norm();
    };
    const double c16 = commutator_norm(16);
    const double c24 = commutator_norm(24);
    const double c32 = commutator_norm(32);
    CHECK(c24 < c16);
    CHECK(c32 < c24);
}

TEST_CASE("pairing probe: explicit ladders confirm ordering and identity pairing") {
    const EllipticParams par = unit_params();
    {
        const PairingProbe p = pairing_probe({{0, 0, 1, 1}}, 48, par);
        REQUIRE(p.converged >= 8);
        CHECK(p.nu_strictly_decreasing);
        CHECK(p.mu_all_positive);
        CHECK(p.tau_identity);
    }
    {
        const PairingProbe p = pairing_probe({{1, 1, 1, 1}}, 48, par);
        REQUIRE(p.converged >= 8);
        CHECK(p.nu_strictly_decreasing);
        // ratio test on the closed form: nu_{n+1}/nu_n < 1 throughout
        for (size_t n = 1; n < p.nu.size(); ++n) CHECK(p.nu[n] / p.nu[n - 1] < 1.0);
    }
}

// End-to-end verification suite.  Runs every advertised guarantee of the
// library at the default desk scale (r = 1, alpha = 1, M = N = 48) and
// prints one PASS/FAIL line per criterion.  Exit status: number of failures.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "heunlab/kernels.hpp"
#include "heunlab/reference.hpp"
#include "heunlab/sampling.hpp"
#include "heunlab/spectra.hpp"

using namespace heun;
using cx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;
int failures = 0;

void report(int id, const char* name, bool pass, double worst, double tol) {
    std::printf("[%s] %d. %-34s max dev %.3e  (tol %.0e)\n", pass ? "PASS" : "FAIL", id, name,
                worst, tol);
    if (!pass) ++failures;
}

// ------------------------------------------------------------------ 1
void criterion_elliptic_identities(const EllipticParams& par) {
    double worst = 0.0;
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> ur(0.0, kPi / par.r);
    std::uniform_real_distribution<double> ui(-0.2 * par.alpha, 0.2 * par.alpha);
    const double om1 = par.omega1();

    for (int i = 0; i < 20; ++i) {
        const cx z(ur(rng), ui(rng));
        // duplication
        const cx lhs = r_function(2.0 * z, par);
        const cx rhs = r_function(z + cx(0, 0.25 * par.alpha), par) *
                       r_function(z + om1 + cx(0, 0.25 * par.alpha), par) *
                       r_function(z - cx(0, 0.25 * par.alpha), par) *
                       r_function(z + om1 - cx(0, 0.25 * par.alpha), par);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        // quasi-periodicity for both functions
        const cx fac = -std::exp(par.r * par.alpha - cx(0, 2.0 * par.r) * z);
        worst = std::max(worst, std::abs(r_function(z + cx(0, par.alpha), par) - fac * r_function(z, par)) /
                                    std::abs(fac * r_function(z, par)));
        worst = std::max(worst, std::abs(s_function(z + cx(0, par.alpha), par) - fac * s_function(z, par)) /
                                    std::abs(fac * s_function(z, par)));
        // half-shift relation between R and s
        const cx srel = r_function(z + cx(0, 0.5 * par.alpha), par) /
                        (cx(0, par.p) * std::exp(cx(0, -par.r) * z));
        worst = std::max(worst, std::abs(srel - s_function(z, par)) /
                                    std::max(1.0, std::abs(s_function(z, par))));
    }
    // product vs Fourier on the strip grid
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 8; ++j) {
            const cx z(kPi / par.r * i / 31.0, 0.9 * par.alpha * (j / 7.0 - 0.5));
            const cx a = r_function(z, par, RForm::product);
            const cx b = r_function(z, par, RForm::fourier);
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
    }
    const bool id_pass = worst < 1e-12;

    // certifications
    double cert = std::abs(par.e[0] + par.e[1] + par.e[2]) / std::abs(par.e[1]);
    for (double x : {1e-3, 1e-4})
        cert = std::max(cert, std::abs(x * x * wp(x, par) - 1.0));
    const bool cert_pass = cert < 1e-10;

    report(1, "elliptic identity suite", id_pass, worst, 1e-12);
    report(1, "elliptic certifications", cert_pass, cert, 1e-10);
}

// ------------------------------------------------------------------ 2
void criterion_singular_values(const EllipticParams& par) {
    double worst = 0.0;
    bool ok = true;
    for (const char* name : {"0011", "1100", "1111", "1001", "1010"}) {
        const CouplingVector g = [&] {
            if (std::string(name) == "0011") return CouplingVector{{0, 0, 1, 1}};
            if (std::string(name) == "1100") return CouplingVector{{1, 1, 0, 0}};
            if (std::string(name) == "1111") return CouplingVector{{1, 1, 1, 1}};
            if (std::string(name) == "1001") return CouplingVector{{1, 0, 0, 1}};
            return CouplingVector{{1, 0, 1, 0}};
        }();
        const auto closed = closed_form_singular_values(g, par);
        const SvdResult svd = hs_svd(g, 48, par);
        if (svd.converged_count < 9) {
            ok = false;
            continue;
        }
        for (int n = 0; n <= 8; ++n) {
            const double ref = closed->value(n);
            worst = std::max(worst, std::abs(svd.singular_values[static_cast<size_t>(n)] - ref) / ref);
        }
    }
    report(2, "closed-form singular values", ok && worst < 1e-8, worst, 1e-8);
}

// ------------------------------------------------------------------ 3
void criterion_eigenvalues(const EllipticParams& par) {
    double worst = 0.0;
    bool ok = true;
    struct Case {
        CouplingVector g;
        double offset;
    };
    for (const Case& c : {Case{{{1.5, 0.5, 0.5, 0.5}}, 2.0}, Case{{{0.5, 0.5, 0.5, 1.5}}, 1.0},
                          Case{{{0.5, 0.5, -0.5, 0.5}}, 1.0}}) {
        if (std::abs(potential(c.g, 0.4 * par.omega1(), par)) < 1e-3) ok = false; // must be nontrivial
        const SpectrumResult sp = heun_spectrum(c.g, 48, par);
        if (sp.converged_count < 7) {
            ok = false;
            continue;
        }
        for (int n = 0; n <= 6; ++n) {
            const double ref = std::pow((2.0 * n + c.offset) * par.r, 2);
            worst = std::max(worst, std::abs(sp.eigenvalues[static_cast<size_t>(n)] - ref) / ref);
        }
    }
    report(3, "closed-form eigenvalue ladders", ok && worst < 1e-8, worst, 1e-8);
}

// ------------------------------------------------------------------ 4
void criterion_duality(const EllipticParams& par) {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    bool ok = true;
    for (int rep = 0; rep < 10; ++rep) {
        const CouplingVector g = sample_pi_r(rng);
        const SpectrumResult a = heun_spectrum(g, 48, par);
        const SpectrumResult b = heun_spectrum(dual(g), 48, par);
        if (a.converged_count < 6 || b.converged_count < 6) {
            ok = false;
            continue;
        }
        for (int n = 0; n < 6; ++n)
            worst = std::max(worst, std::abs(a.eigenvalues[static_cast<size_t>(n)] - b.eigenvalues[static_cast<size_t>(n)]) /
                                        std::max(1.0, std::abs(b.eigenvalues[static_cast<size_t>(n)])));
    }
    report(4, "dual-coupling isospectrality", ok && worst < 1e-8, worst, 1e-8);
}

// ------------------------------------------------------------------ 5
void criterion_orbit(const EllipticParams& par) {
    std::mt19937_64 rng(3033);
    double worst = 0.0;
    bool ok = true;
    for (int rep = 0; rep < 5; ++rep) {
        const CouplingVector g = sample_pi_g(rng);
        std::vector<std::vector<double>> spectra;
        for (const OrbitPoint& pt : s4_orbit(g)) {
            const SpectrumResult sp = heun_spectrum(pt.g, 48, par);
            if (sp.converged_count < 6) {
                ok = false;
                break;
            }
            spectra.emplace_back(sp.eigenvalues.begin(), sp.eigenvalues.begin() + 6);
        }
        if (spectra.size() != 24) {
            ok = false;
            continue;
        }
        for (size_t a = 0; a < spectra.size(); ++a)
            for (size_t b = a + 1; b < spectra.size(); ++b)
                for (int n = 0; n < 6; ++n)
                    worst = std::max(worst, std::abs(spectra[a][static_cast<size_t>(n)] - spectra[b][static_cast<size_t>(n)]) /
                                                std::max(1.0, std::abs(spectra[a][static_cast<size_t>(n)])));
    }
    report(5, "24-element orbit isospectrality", ok && worst < 1e-8, worst, 1e-8);
}

// ------------------------------------------------------------------ 6
void criterion_rank_one(const EllipticParams& par) {
    std::mt19937_64 rng(4044);
    double worst = 0.0;
    double worst_resid = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const CouplingVector g = sample_rank_one(rng);
        const RankOneResult ro = rank_one_case(g, par);
        const double scale = std::max(1.0, std::abs(ro.ground_energy));
        worst_resid = std::max(worst_resid, ro.identity_residual);
        worst = std::max({worst, std::abs(ro.ground_energy_dual - ro.ground_energy) / scale,
                          std::abs(ro.identity_value - ro.ground_energy) / scale,
                          std::abs(ro.galerkin_energy - ro.ground_energy) / scale});
    }
    report(6, "rank-one ground state routes", worst < 1e-8 && worst_resid < 1e-10,
           std::max(worst, worst_resid), 1e-8);
}

// ------------------------------------------------------------------ 7
double endpoint_exponent_probe(const CouplingVector& g, const EllipticParams& par, int which) {
    // measured growth exponent of the kernel near one of its four edges
    const double om1 = par.omega1();
    const double y0 = 0.43 * om1;
    const double t1 = 1e-4 * om1, t2 = 1e-6 * om1;
    auto psi_at = [&](double t) {
        switch (which) {
        case 0: return psi_kernel(g, t, y0, par);         // x -> 0
        case 1: return psi_kernel(g, om1 - t, y0, par);   // x -> om1
        case 2: return psi_kernel(g, y0, t, par);         // y -> 0
        default: return psi_kernel(g, y0, om1 - t, par);  // y -> om1
        }
    };
    return std::log(psi_at(t1) / psi_at(t2)) / std::log(t1 / t2);
}

void criterion_structure(const EllipticParams& par) {
    bool ok = true;
    double worst = 0.0;
    const double om1 = par.omega1();

    // Parseval with a geometric tail allowance
    {
        const CouplingVector g{{1, 1, 0, 1}};
        const SvdResult svd = hs_svd(g, 48, par);
        double sum = 0.0;
        for (int n = 0; n < svd.converged_count; ++n)
            sum += std::pow(svd.singular_values[static_cast<size_t>(n)], 2);
        const HsNormResult hs = hs_norm_finite(g, par);
        const double dev = std::abs(sum - hs.estimate) / hs.estimate;
        worst = std::max(worst, dev);
        if (dev > 1e-8) ok = false;
    }
    // adjoint symmetry of the kernel
    {
        std::mt19937_64 rng(5055);
        std::uniform_real_distribution<double> u(0.02 * om1, 0.98 * om1);
        const CouplingVector g{{0.9, 0.8, 0.7, 0.6}};
        const CouplingVector gd = dual(g);
        double dev = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double x = u(rng), y = u(rng);
            const double a = psi_kernel(g, x, y, par);
            dev = std::max(dev, std::abs(a - psi_kernel(gd, y, x, par)) / std::abs(a));
        }
        worst = std::max(worst, dev);
        if (dev > 1e-12) ok = false;
    }
    // rank-one minors at vanishing half-sum
    {
        std::mt19937_64 rng(6066);
        const CouplingVector g = sample_rank_one(rng);
        std::uniform_real_distribution<double> u(0.05 * om1, 0.95 * om1);
        double dev = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double x1 = u(rng), x2 = u(rng), y1 = u(rng), y2 = u(rng);
            const double minor = psi_kernel(g, x1, y1, par) * psi_kernel(g, x2, y2, par) -
                                 psi_kernel(g, x1, y2, par) * psi_kernel(g, x2, y1, par);
            dev = std::max(dev, std::abs(minor) / (psi_kernel(g, x1, y1, par) * psi_kernel(g, x2, y2, par)));
        }
        worst = std::max(worst, dev);
        if (dev > 1e-11) ok = false;
    }
    // membership <-> measured square integrability on a straddling grid
    {
        std::mt19937_64 rng(7077);
        int misclassified = 0;
        for (int i = 0; i < 100; ++i) {
            const bool inside = i % 2 == 0;
            const CouplingVector g = sample_pi_boundary(rng, inside);
            bool measured_finite = true;
            for (int which = 0; which < 4; ++which) {
                // kernel edge exponent must exceed -1/2 for square integrability
                if (endpoint_exponent_probe(g, par, which) <= -0.5) measured_finite = false;
            }
            if (measured_finite != hs_norm_finite(g, par, 8).finite) ++misclassified;
        }
        if (misclassified > 0) ok = false;
        worst = std::max(worst, static_cast<double>(misclassified));
    }
    // eigenvalue asymptotics at a generic coupling
    {
        const SpectrumResult sp = heun_spectrum({{1.2, 0.7, 0.9, 0.3}}, 64, par);
        for (int m = 10; m < sp.converged_count; ++m) {
            const double dev = std::abs(sp.eigenvalues[static_cast<size_t>(m)] / (4.0 * par.r * par.r * m * m) - 1.0);
            if (dev >= 5.0 / m) ok = false;
        }
        if (sp.converged_count <= 10) ok = false;
    }
    report(7, "structural properties", ok, worst, 1e-8);
}

// ------------------------------------------------------------------ 8
void criterion_transport(const EllipticParams& par) {
    double worst = 0.0;
    bool ok = true;
    for (const CouplingVector& g :
         {CouplingVector{{1, 1, 0, 1}}, CouplingVector{{1, 0, 1, 1}}, CouplingVector{{1, 0, 0, 0}}}) {
        for (int m = 0; m <= 5; ++m) {
            const TransportResult t = eigenfunction_transport(g, m, 48, 48, par);
            worst = std::max(worst, t.eigen_residual);
            if (!(t.mu > 0.0)) ok = false;
        }
    }
    report(8, "eigenfunction transport", ok && worst < 1e-8, worst, 1e-8);
}

} // namespace

int main() {
    const EllipticParams par = lattice_constants(1.0, 1.0, 1e-12);
    std::printf("verification at r = 1, alpha = 1, M = N = 48\n");
    criterion_elliptic_identities(par);
    criterion_singular_values(par);
    criterion_eigenvalues(par);
    criterion_duality(par);
    criterion_orbit(par);
    criterion_rank_one(par);
    criterion_structure(par);
    criterion_transport(par);
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}

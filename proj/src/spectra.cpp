#include "heunlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heunlab/kernels.hpp"

namespace heun {

namespace {

// Vandermonde of orthonormal Jacobi polynomials: row i = node, column k = degree.
Eigen::MatrixXd orthonormal_vandermonde(int count, double a, double b, const std::vector<double>& y) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(y.size()), count);
    std::vector<double> buf(static_cast<size_t>(count));
    for (size_t i = 0; i < y.size(); ++i) {
        jacobi_orthonormal(count, a, b, y[i], buf.data());
        for (int k = 0; k < count; ++k) out(static_cast<Eigen::Index>(i), k) = buf[static_cast<size_t>(k)];
    }
    return out;
}

// Quadrature padding for the bounded-multiplier matrix elements: the
// multiplier's cosine coefficients decay like q^m, so the aliasing tail
// beyond degree 2*pad must be pushed below roundoff.
int vd_padding(const EllipticParams& par) {
    return std::max(16, static_cast<int>(std::ceil(22.0 / (par.r * par.alpha))) + 4);
}

void require_tilde_pi(const CouplingVector& g, const char* who) {
    if (!(g[0] > -0.5) || !(g[1] > -0.5))
        throw domain_error(std::string(who) + ": basis needs g0, g1 > -1/2");
}

struct NystromSide {
    QuadratureRule rule;
    std::vector<double> ratio; // analytic cofactor of w^{1/2} at the nodes
};

NystromSide make_side(const CouplingVector& g, int n, const EllipticParams& par) {
    NystromSide side;
    side.rule = jacobi_rule(n, g[0] - 0.5, g[1] - 0.5, par.r);
    side.ratio.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        side.ratio[static_cast<size_t>(i)] = weight_ratio_sqrt(g, side.rule.nodes[static_cast<size_t>(i)], par);
    return side;
}

// sqrt-weighted sample matrix entries sqrt(w_i w_j) psi-analytic, equal to
// sqrt(v_i) Psi(x_i, y_j) sqrt(v_j) with the effective dx-weights v.
Eigen::MatrixXd assemble_hs(const CouplingVector& g, const NystromSide& sx, const NystromSide& sy,
                            const EllipticParams& par) {
    const int nx = sx.rule.order, ny = sy.rule.order;
    const double sg = g.s_g();
    const double norm = 1.0 / (2.0 * par.r * std::pow(2.0, g[0] + g[1]));
    Eigen::MatrixXd a(nx, ny);
    for (int i = 0; i < nx; ++i) {
        const double fx = std::sqrt(sx.rule.weights[static_cast<size_t>(i)]) * sx.ratio[static_cast<size_t>(i)];
        for (int j = 0; j < ny; ++j) {
            const double fy = std::sqrt(sy.rule.weights[static_cast<size_t>(j)]) * sy.ratio[static_cast<size_t>(j)];
            a(i, j) = fx * s_kernel(sg, sx.rule.nodes[static_cast<size_t>(i)], sy.rule.nodes[static_cast<size_t>(j)], par) * fy * norm;
        }
    }
    return a;
}

Eigen::MatrixXd heun_matrix_raw(const CouplingVector& g, int m, const EllipticParams& par) {
    const double a = g[0] - 0.5, b = g[1] - 0.5;
    const int quad = m + vd_padding(par);
    const QuadratureRule rule = jacobi_rule(quad, a, b, par.r);
    Eigen::MatrixXd pv = orthonormal_vandermonde(m, a, b, rule.y_nodes); // quad x m
    Eigen::VectorXd vd(quad);
    for (int i = 0; i < quad; ++i)
        vd[i] = potential_diff(g, rule.nodes[static_cast<size_t>(i)], par) * rule.weights[static_cast<size_t>(i)];

    Eigen::MatrixXd mat(m, m);
    for (int mm = 0; mm < m; ++mm) {
        for (int nn = mm; nn < m; ++nn) {
            double acc = 0.0;
            for (int i = 0; i < quad; ++i) acc += pv(i, mm) * pv(i, nn) * vd[i];
            mat(mm, nn) = -acc;
            mat(nn, mm) = -acc;
        }
        const double ht = par.r * (g[0] + g[1] + 2.0 * mm);
        mat(mm, mm) += ht * ht;
    }
    return mat;
}

// Longest prefix where coarse and fine solves agree.  Eigenvalues are
// compared on a unit-floored scale (they grow like m^2); singular values,
// which decay geometrically, demand plain relative agreement so that
// roundoff-dominated entries are never certified.
int converged_prefix(const std::vector<double>& coarse, const std::vector<double>& fine, double tol,
                     bool relative_only = false) {
    int n = 0;
    const size_t limit = std::min(coarse.size(), fine.size());
    while (static_cast<size_t>(n) < limit) {
        const double mag = std::abs(fine[static_cast<size_t>(n)]);
        const double scale = relative_only ? std::max(mag, 1e-300) : std::max(1.0, mag);
        if (std::abs(coarse[static_cast<size_t>(n)] - fine[static_cast<size_t>(n)]) > tol * scale) break;
        ++n;
    }
    return n;
}

std::vector<double> eigenvalues_of(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<size_t>(i)] = es.eigenvalues()[i];
    return out;
}

// Sign convention: the analytic cofactor of the basis expansion must be
// positive at x = 0, i.e. sum_k c_k P_k(1) > 0.
void fix_sign(Eigen::Ref<Eigen::VectorXd> coeff, const Eigen::VectorXd& p_at_one) {
    if (coeff.dot(p_at_one) < 0.0) coeff = -coeff;
}

Eigen::VectorXd p_at_one_vector(int count, double a, double b) {
    Eigen::VectorXd out(count);
    std::vector<double> buf(static_cast<size_t>(count));
    jacobi_orthonormal(count, a, b, 1.0, buf.data());
    for (int k = 0; k < count; ++k) out[k] = buf[static_cast<size_t>(k)];
    return out;
}

struct EigenBasisSolve {
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors; // columns, sign-fixed
};

EigenBasisSolve solve_heun(const CouplingVector& g, int m, const EllipticParams& par) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(heun_matrix_raw(g, m, par));
    EigenBasisSolve out;
    out.energies = es.eigenvalues();
    out.vectors = es.eigenvectors();
    const Eigen::VectorXd pone = p_at_one_vector(m, g[0] - 0.5, g[1] - 0.5);
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_sign(out.vectors.col(k), pone);
    return out;
}

// integral of w(g;x) dx by the adapted rule
double weight_integral(const CouplingVector& g, int n, const EllipticParams& par) {
    const NystromSide s = make_side(g, n, par);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += s.rule.weights[static_cast<size_t>(i)] * s.ratio[static_cast<size_t>(i)] * s.ratio[static_cast<size_t>(i)];
    return acc / (2.0 * par.r * std::pow(2.0, g[0] + g[1]));
}

} // namespace

double trig_basis(double g0, double g1, int m, double x, double r) {
    if (!(g0 > -0.5) || !(g1 > -0.5))
        throw domain_error("trig_basis: needs g0, g1 > -1/2");
    if (m < 0) throw domain_error("trig_basis: mode index must be nonnegative");
    std::vector<double> buf(static_cast<size_t>(m + 1));
    jacobi_orthonormal(m + 1, g0 - 0.5, g1 - 0.5, std::cos(2.0 * r * x), buf.data());
    const double norm = std::sqrt(2.0 * r * std::pow(2.0, g0 + g1));
    return norm * std::pow(std::sin(r * x), g0) * std::pow(std::cos(r * x), g1) * buf[static_cast<size_t>(m)];
}

DiscretizedOperator heun_matrix(const CouplingVector& g, int basis_size, const EllipticParams& par) {
    require_tilde_pi(g, "heun_matrix");
    if (basis_size < 2) throw domain_error("heun_matrix: basis_size must be at least 2");
    DiscretizedOperator op;
    op.matrix = heun_matrix_raw(g, basis_size, par);
    op.size = basis_size;
    op.basis_tag = "jacobi(g0=" + std::to_string(g[0]) + ",g1=" + std::to_string(g[1]) + ")";
    return op;
}

SpectrumResult heun_spectrum(const CouplingVector& g, int basis_size, const EllipticParams& par, double tol) {
    require_tilde_pi(g, "heun_spectrum");
    if (basis_size < 2) throw domain_error("heun_spectrum: basis_size must be at least 2");
    const int fine_size = (3 * basis_size + 1) / 2;
    SpectrumResult out;
    out.eigenvalues = eigenvalues_of(heun_matrix_raw(g, basis_size, par));
    const std::vector<double> fine = eigenvalues_of(heun_matrix_raw(g, fine_size, par));
    out.converged_count = converged_prefix(out.eigenvalues, fine, tol);
    out.basis_size = basis_size;
    out.tolerance = tol;
    return out;
}

DiscretizedOperator hs_matrix(const CouplingVector& g, int size, const EllipticParams& par) {
    const MembershipFlags f = membership(g);
    if (!f.in_pi) throw domain_error("hs_matrix: kernel not square integrable for this coupling");
    if (size < 2) throw domain_error("hs_matrix: size must be at least 2");
    const CouplingVector gd = dual(g);
    DiscretizedOperator op;
    op.matrix = assemble_hs(g, make_side(g, size, par), make_side(gd, size, par), par);
    op.size = size;
    op.basis_tag = "nystrom(a=" + std::to_string(g[0] - 0.5) + ",b=" + std::to_string(g[1] - 0.5) +
                   " | a'=" + std::to_string(gd[0] - 0.5) + ",b'=" + std::to_string(gd[1] - 0.5) + ")";
    return op;
}

namespace {

// Shared machinery: SVD at one size plus transported eigenvectors.
struct SvdSolve {
    Eigen::VectorXd sv;
    Eigen::MatrixXd left_coeff, right_coeff;
    std::vector<double> mu;
    std::vector<int> pairing;
    Eigen::VectorXd energies;
};

SvdSolve svd_solve(const CouplingVector& g, int n, const EllipticParams& par) {
    const CouplingVector gd = dual(g);
    const NystromSide sx = make_side(g, n, par);
    const NystromSide sy = make_side(gd, n, par);
    const Eigen::MatrixXd a = assemble_hs(g, sx, sy, par);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);

    // Vandermondes scaled by sqrt-weights are orthogonal maps between node
    // samples and basis coefficients.
    const double ax = g[0] - 0.5, bx = g[1] - 0.5;
    const double ay = gd[0] - 0.5, by = gd[1] - 0.5;
    Eigen::MatrixXd u = orthonormal_vandermonde(n, ax, bx, sx.rule.y_nodes);
    Eigen::MatrixXd v = orthonormal_vandermonde(n, ay, by, sy.rule.y_nodes);
    for (int i = 0; i < n; ++i) {
        u.row(i) *= std::sqrt(sx.rule.weights[static_cast<size_t>(i)]);
        v.row(i) *= std::sqrt(sy.rule.weights[static_cast<size_t>(i)]);
    }

    SvdSolve out;
    out.sv = svd.singularValues();
    out.left_coeff = u.transpose() * svd.matrixU();
    out.right_coeff = v.transpose() * svd.matrixV();
    const Eigen::VectorXd pone_x = p_at_one_vector(n, ax, bx);
    const Eigen::VectorXd pone_y = p_at_one_vector(n, ay, by);
    for (Eigen::Index k = 0; k < out.left_coeff.cols(); ++k) {
        // fixing the left sign determines the right one; flip both together
        if (out.left_coeff.col(k).dot(pone_x) < 0.0) {
            out.left_coeff.col(k) = -out.left_coeff.col(k);
            out.right_coeff.col(k) = -out.right_coeff.col(k);
        }
    }

    // Transport: the adjoint matrix sends sqrt-weighted samples of an
    // H(g)-eigenvector to sqrt-weighted samples of its dual image.
    const EigenBasisSolve eg = solve_heun(g, n, par);
    const EigenBasisSolve ed = solve_heun(gd, n, par);
    out.energies = eg.energies;
    out.mu.resize(static_cast<size_t>(n));
    out.pairing.assign(static_cast<size_t>(n), -1);
    const Eigen::MatrixXd samples_g = u * eg.vectors;   // columns: sqrt-weighted samples
    const Eigen::MatrixXd transported = a.transpose() * samples_g;
    const Eigen::MatrixXd coeff_d = v.transpose() * transported;
    for (int m = 0; m < n; ++m) {
        out.mu[static_cast<size_t>(m)] = ed.vectors.col(m).dot(coeff_d.col(m));
        // candidate pairing by overlap with the svd right family
        Eigen::Index best = 0;
        double best_ov = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double ov = std::abs(out.right_coeff.col(k).dot(ed.vectors.col(m)));
            if (ov > best_ov) {
                best_ov = ov;
                best = k;
            }
        }
        out.pairing[static_cast<size_t>(m)] = static_cast<int>(best);
    }
    return out;
}

} // namespace

SvdResult hs_svd(const CouplingVector& g, int size, const EllipticParams& par, double tol) {
    const MembershipFlags f = membership(g);
    if (!f.in_pi) throw domain_error("hs_svd: kernel not square integrable for this coupling");
    const double sg_scale = 1.0 + std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]) + std::abs(g[3]);
    const bool zero_half_sum = std::abs(g.s_g()) <= 1e-13 * sg_scale;
    if (g.s_g() < 0.0 && !zero_half_sum)
        throw domain_error("hs_svd: negative coupling half-sum not supported");
    if (size < 2) throw domain_error("hs_svd: size must be at least 2");

    SvdResult out;
    out.size = size;
    out.tolerance = tol;

    if (zero_half_sum) {
        // separable kernel: single singular value |w(g)^{1/2}| |w(g')^{1/2}|
        const CouplingVector gd = dual(g);
        const double nx = weight_integral(g, size, par);
        const double ny = weight_integral(gd, size, par);
        out.rank_one = true;
        out.singular_values = {std::sqrt(nx * ny)};
        out.converged_count = 1;
        out.signed_mu = {std::sqrt(nx * ny)};
        out.pairing = {0};
        return out;
    }

    const SvdSolve coarse = svd_solve(g, size, par);
    const SvdSolve fine = svd_solve(g, (3 * size + 1) / 2, par);

    out.singular_values.assign(coarse.sv.data(), coarse.sv.data() + coarse.sv.size());
    std::vector<double> sv_fine(fine.sv.data(), fine.sv.data() + fine.sv.size());
    out.converged_count = converged_prefix(out.singular_values, sv_fine, tol, /*relative_only=*/true);
    out.left_coeff = coarse.left_coeff;
    out.right_coeff = coarse.right_coeff;
    out.signed_mu = coarse.mu;
    out.pairing = coarse.pairing;
    return out;
}

TransportResult eigenfunction_transport(const CouplingVector& g, int m, int quad_size, int basis_size,
                                        const EllipticParams& par) {
    const MembershipFlags f = membership(g);
    if (!f.in_pi_r) throw domain_error("eigenfunction_transport: coupling outside the admissible set");
    if (m < 0 || m >= basis_size) throw domain_error("eigenfunction_transport: mode index out of range");
    if (quad_size < basis_size) throw domain_error("eigenfunction_transport: quad_size must be >= basis_size");

    const CouplingVector gd = dual(g);
    const NystromSide sx = make_side(g, quad_size, par);
    const NystromSide sy = make_side(gd, quad_size, par);
    const Eigen::MatrixXd a = assemble_hs(g, sx, sy, par);

    Eigen::MatrixXd u = orthonormal_vandermonde(basis_size, g[0] - 0.5, g[1] - 0.5, sx.rule.y_nodes);
    Eigen::MatrixXd v = orthonormal_vandermonde(basis_size, gd[0] - 0.5, gd[1] - 0.5, sy.rule.y_nodes);
    for (int i = 0; i < quad_size; ++i) {
        u.row(i) *= std::sqrt(sx.rule.weights[static_cast<size_t>(i)]);
        v.row(i) *= std::sqrt(sy.rule.weights[static_cast<size_t>(i)]);
    }

    const EigenBasisSolve eg = solve_heun(g, basis_size, par);
    const EigenBasisSolve ed = solve_heun(gd, basis_size, par);

    const Eigen::VectorXd samples = u * eg.vectors.col(m); // sqrt-weighted at x-nodes
    const Eigen::VectorXd image = a.transpose() * samples; // sqrt-weighted at y-nodes
    const Eigen::VectorXd coeff = v.transpose() * image;

    TransportResult out;
    out.energy = eg.energies[m];
    out.mu = ed.vectors.col(m).dot(coeff);
    const Eigen::MatrixXd bd = heun_matrix_raw(gd, basis_size, par);
    out.eigen_residual =
        (bd * coeff - out.energy * coeff).norm() / std::max(coeff.norm(), 1e-300);
    out.projection_defect = (image - v * coeff).norm() / std::max(image.norm(), 1e-300);

    // a transported coefficient falling inside a degenerate singular-value
    // cluster cannot be attributed to a single mode
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
    double nearest = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        const double d = std::abs(sv[k] - std::abs(out.mu));
        if (d < nearest) {
            second = nearest;
            nearest = d;
        } else if (d < second) {
            second = d;
        }
    }
    out.ambiguous = second - nearest < 1e-9 * std::max(std::abs(out.mu), 1e-300);

    out.nodes = sy.rule.nodes;
    out.samples.resize(static_cast<size_t>(quad_size));
    for (int j = 0; j < quad_size; ++j)
        out.samples[static_cast<size_t>(j)] =
            image[j] / std::sqrt(sy.rule.weights[static_cast<size_t>(j)]); // unscaled values times sqrt(wt-ratio)
    return out;
}

RankOneResult rank_one_case(const CouplingVector& g, const EllipticParams& par, int basis_size) {
    const double scale = 1.0 + std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]) + std::abs(g[3]);
    if (std::abs(g.s_g()) > 1e-13 * scale)
        throw domain_error("rank_one_case: coupling half-sum must vanish");

    RankOneResult out;
    const CouplingVector gd = dual(g);
    auto closed_form = [&](const CouplingVector& h) {
        double acc = 0.0;
        for (int j = 1; j <= 3; ++j)
            acc += h[j] * par.e[static_cast<size_t>(j - 1)] * (h[j] + 2.0 * h[0]);
        return acc;
    };
    out.ground_energy = closed_form(g);
    out.ground_energy_dual = closed_form(gd);

    // The defining function sum_t g_t^2 wp(x+omega_t) - f(x)^2 with
    // f = (log w^{1/2})' must be constant; sample it over an interior grid.
    const double om1 = par.omega1();
    const int grid = 41;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double x = om1 * (0.1 + 0.8 * i / (grid - 1));
        const double fx = g[0] * s_log_derivative(x, par) - g[1] * s_log_derivative(om1 - x, par) +
                          g[2] * r_log_derivative(x, par) - g[3] * r_log_derivative(om1 - x, par);
        const double tot = g[0] * g[0] * wp(x, par) + g[1] * g[1] * wp(om1 - x, par) +
                           g[2] * g[2] * wp_tilde(x, par) + g[3] * g[3] * wp_tilde(om1 - x, par);
        const double val = tot - fx * fx;
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    out.identity_value = 0.5 * (lo + hi);
    out.identity_residual = hi - lo;

    const MembershipFlags f = membership(g);
    if (f.in_pi) {
        const EigenBasisSolve eg = solve_heun(g, basis_size, par);
        out.galerkin_energy = eg.energies[0];
        // residual of w^{1/2} itself: project its analytic cofactor on the basis
        const int quad = basis_size + vd_padding(par);
        const QuadratureRule rule = jacobi_rule(quad, g[0] - 0.5, g[1] - 0.5, par.r);
        const Eigen::MatrixXd pv = orthonormal_vandermonde(basis_size, g[0] - 0.5, g[1] - 0.5, rule.y_nodes);
        Eigen::VectorXd coeff = Eigen::VectorXd::Zero(basis_size);
        for (int i = 0; i < quad; ++i) {
            const double ratio = weight_ratio_sqrt(g, rule.nodes[static_cast<size_t>(i)], par);
            coeff += rule.weights[static_cast<size_t>(i)] * ratio * pv.row(i).transpose();
        }
        const Eigen::MatrixXd b = heun_matrix_raw(g, basis_size, par);
        out.eigen_residual =
            (b * coeff - out.ground_energy * coeff).norm() / std::max(coeff.norm(), 1e-300);
    } else {
        out.galerkin_energy = std::numeric_limits<double>::quiet_NaN();
        out.eigen_residual = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

PairingProbe pairing_probe(const CouplingVector& g, int size, const EllipticParams& par) {
    const SvdResult svd = hs_svd(g, size, par);
    PairingProbe out;
    out.converged = svd.converged_count;
    out.nu.assign(svd.singular_values.begin(),
                  svd.singular_values.begin() + svd.converged_count);
    out.mu.assign(svd.signed_mu.begin(),
                  svd.signed_mu.begin() + std::min<size_t>(svd.signed_mu.size(), static_cast<size_t>(svd.converged_count)));
    out.pairing.assign(svd.pairing.begin(),
                       svd.pairing.begin() + std::min<size_t>(svd.pairing.size(), static_cast<size_t>(svd.converged_count)));
    out.nu_strictly_decreasing = true;
    for (size_t i = 1; i < out.nu.size(); ++i)
        if (!(out.nu[i] < out.nu[i - 1])) out.nu_strictly_decreasing = false;
    out.mu_all_positive = !out.mu.empty();
    for (double m : out.mu)
        if (!(m > 0.0)) out.mu_all_positive = false;
    out.tau_identity = !out.pairing.empty();
    for (size_t i = 0; i < out.pairing.size(); ++i)
        if (out.pairing[i] != static_cast<int>(i)) out.tau_identity = false;
    return out;
}

} // namespace heun

#include "polyurn/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "polyurn/errors.hpp"

namespace polyurn {

Eigen::MatrixXd tangent_basis(int m) {
    // Helmert rows: (1,...,1,-j,0,...,0)/sqrt(j(j+1))
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m - 1, m);
    for (int j = 1; j < m; ++j) {
        double norm = std::sqrt(static_cast<double>(j) * (j + 1));
        for (int i = 0; i < j; ++i) q(j - 1, i) = 1.0 / norm;
        q(j - 1, j) = -static_cast<double>(j) / norm;
    }
    return q;
}

namespace {

double drift_residual(const Hypergraph& h, const SimplexPoint& w) {
    auto f = vector_field(h, w.coords());
    double r = 0;
    for (double c : f) r = std::max(r, std::abs(c));
    return r;
}

int numerical_rank(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double threshold = 1e-8 * std::max(1.0, sv(0));
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
    }
    return rank;
}

void count_signs(SpectrumReport& report) {
    report.n_negative = report.n_zero = report.n_positive = 0;
    for (double ev : report.eigenvalues) {
        if (ev < -report.zero_threshold) {
            ++report.n_negative;
        } else if (ev > report.zero_threshold) {
            ++report.n_positive;
        } else {
            ++report.n_zero;
        }
    }
}

}  // namespace

SpectrumReport restricted_spectrum(const Hypergraph& h, const SimplexPoint& w, bool interior,
                                   double residual_tol) {
    const int m = h.vertex_count();
    double residual = drift_residual(h, w);
    if (residual > residual_tol) {
        throw error(errc::not_an_equilibrium,
                    "drift residual " + std::to_string(residual) + " exceeds tolerance");
    }

    SpectrumReport report;
    report.point = w.coords();
    report.k_expected = tangent_kernel(h).dim();
    report.rank_incidence = rank(incidence_rational(h));

    Eigen::MatrixXd jf = field_jacobian(h, w.coords());
    report.zero_threshold = 1e-8 * std::max(1.0, jf.cwiseAbs().rowwise().sum().maxCoeff());
    report.rank_jf = numerical_rank(jf);

    if (interior) {
        for (double c : w.coords()) {
            if (!(c > 0)) {
                throw error(errc::not_interior, "interior spectrum path needs positive coordinates");
            }
        }
        Eigen::VectorXd sqrt_d(m);
        for (int i = 0; i < m; ++i) sqrt_d(i) = std::sqrt(w[i]);
        Eigen::MatrixXd sym =
            sqrt_d.asDiagonal() * lyapunov_hessian(h, w.coords()) * sqrt_d.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
        std::vector<double> all(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
        // drop the eigenvalue -1 contributed by the direction leaving the simplex
        auto drop = std::min_element(all.begin(), all.end(), [](double a, double b) {
            return std::abs(a + 1.0) < std::abs(b + 1.0);
        });
        if (std::abs(*drop + 1.0) > 1e-6) {
            throw error(errc::not_an_equilibrium,
                        "symmetric path found no eigenvalue -1; point is not an interior equilibrium");
        }
        all.erase(drop);
        report.eigenvalues = std::move(all);
    } else {
        Eigen::MatrixXd q = tangent_basis(m);
        Eigen::MatrixXd restricted = q * jf * q.transpose();
        Eigen::EigenSolver<Eigen::MatrixXd> solver(restricted);
        report.eigenvalues.resize(m - 1);
        for (int i = 0; i < m - 1; ++i) {
            report.eigenvalues[i] = solver.eigenvalues()(i).real();
            report.max_imaginary = std::max(report.max_imaginary,
                                            std::abs(solver.eigenvalues()(i).imag()));
        }
    }
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
    count_signs(report);
    return report;
}

RankIdentityReport rank_identities(const Hypergraph& h, const SimplexPoint& w,
                                   double residual_tol) {
    const int m = h.vertex_count();
    for (double c : w.coords()) {
        if (!(c > 0)) {
            throw error(errc::not_interior, "rank identities need an interior point");
        }
    }
    double residual = drift_residual(h, w);
    if (residual > residual_tol) {
        throw error(errc::not_an_equilibrium,
                    "drift residual " + std::to_string(residual) + " exceeds tolerance");
    }

    const int n = h.edge_count();
    Eigen::MatrixXd scaled = Eigen::MatrixXd::Zero(n, m);
    for (int e = 0; e < n; ++e) {
        double s = edge_sum(w.coords(), h.edge(e));
        for (int v : h.edge(e)) scaled(e, v) = 1.0 / s;
    }
    Eigen::MatrixXd reconstructed = -(scaled.transpose() * scaled) / n;
    Eigen::MatrixXd diff = lyapunov_hessian(h, w.coords()) - reconstructed;

    RankIdentityReport report;
    report.factorization_error = diff.cwiseAbs().maxCoeff();
    report.rank_jf = numerical_rank(field_jacobian(h, w.coords()));
    report.rank_incidence = rank(incidence_rational(h));
    report.ranks_match = report.rank_jf == report.rank_incidence;
    return report;
}

int boundary_rank(const Hypergraph& h, const SimplexPoint& w) {
    return numerical_rank(field_jacobian(h, w.coords()));
}

RationalMatrix field_jacobian_exact(const Hypergraph& h, const std::vector<Rational>& w) {
    const int m = h.vertex_count();
    const int n = h.edge_count();
    if (static_cast<int>(w.size()) != m) {
        throw error(errc::invalid_argument, "point dimension does not match the hypergraph");
    }
    std::vector<Rational> sums(n);
    for (int e = 0; e < n; ++e) {
        Rational s(0);
        for (int v : h.edge(e)) s += w[v];
        if (s.sign() <= 0) {
            throw error(errc::degenerate_edge_sum, "edge " + std::to_string(e) + " has nonpositive sum");
        }
        sums[e] = s;
    }
    const Rational inv_n(1, n);

    std::vector<Rational> grad(m, Rational(-1));
    for (int i = 0; i < m; ++i) {
        for (int e : h.star(i)) grad[i] += inv_n / sums[e];
    }

    RationalMatrix hess(m, m);
    for (int e = 0; e < n; ++e) {
        Rational weight = inv_n / (sums[e] * sums[e]);
        for (int i : h.edge(e)) {
            for (int j : h.edge(e)) {
                hess.at(i, j) -= weight;
            }
        }
    }

    RationalMatrix jf(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            jf.at(i, j) = w[i] * hess.at(i, j);
        }
        jf.at(i, i) += grad[i];
    }
    return jf;
}

int boundary_rank_exact(const Hypergraph& h, const std::vector<Rational>& w) {
    return rank(field_jacobian_exact(h, w));
}

}  // namespace polyurn

#include "polyurn/dynamics.hpp"

#include <cmath>
#include <string>

#include "polyurn/errors.hpp"

namespace polyurn {

SimplexPoint::SimplexPoint(std::vector<double> coords) : v_(std::move(coords)) {
    if (v_.empty()) {
        throw error(errc::invalid_argument, "SimplexPoint needs at least one coordinate");
    }
    double sum = 0;
    for (double& c : v_) {
        if (c < 0) {
            if (c < -1e-12) {
                throw error(errc::invalid_argument, "SimplexPoint coordinate is negative");
            }
            c = 0;
        }
        sum += c;
    }
    if (sum <= 0 || std::abs(sum - 1.0) > 1e-6) {
        throw error(errc::invalid_argument,
                    "SimplexPoint mass " + std::to_string(sum) + " too far from 1");
    }
    for (double& c : v_) c /= sum;
}

SimplexPoint SimplexPoint::uniform(int m) {
    return SimplexPoint(std::vector<double>(m, 1.0 / m));
}

SimplexPoint SimplexPoint::uniform_on(int m, const std::vector<int>& support) {
    if (support.empty()) {
        throw error(errc::invalid_argument, "empty support");
    }
    std::vector<double> v(m, 0.0);
    for (int i : support) {
        if (i < 0 || i >= m) {
            throw error(errc::vertex_out_of_range, "support vertex out of range");
        }
        v[i] = 1.0 / support.size();
    }
    return SimplexPoint(std::move(v));
}

TangentVector::TangentVector(std::vector<double> u) : u_(std::move(u)) {
    double sum = 0;
    for (double c : u_) sum += c;
    if (std::abs(sum) > 1e-10) {
        throw error(errc::invalid_argument, "TangentVector does not sum to zero");
    }
}

FlowDomain FlowDomain::half_margin(const Hypergraph& h) {
    return FlowDomain{1.0 / (2.0 * h.edge_count())};
}

FlowDomain FlowDomain::with_cutoff(const Hypergraph& h, double cutoff) {
    if (!(cutoff > 0) || !(cutoff < 1.0 / h.edge_count())) {
        throw error(errc::invalid_argument, "flow cutoff must satisfy 0 < c < 1/N");
    }
    return FlowDomain{cutoff};
}

double edge_sum(const std::vector<double>& v, const std::vector<int>& edge) {
    double s = 0;
    for (int i : edge) s += v[i];
    return s;
}

double edge_sum(const SimplexPoint& v, const std::vector<int>& edge) {
    return edge_sum(v.coords(), edge);
}

namespace {

// Edge sums with positivity check; index of the first degenerate edge in msg.
std::vector<double> positive_edge_sums(const Hypergraph& h, const std::vector<double>& v) {
    std::vector<double> sums(h.edge_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        sums[e] = edge_sum(v, h.edge(e));
        if (!(sums[e] > 0)) {
            throw error(errc::degenerate_edge_sum,
                        "edge " + std::to_string(e) + " has nonpositive sum");
        }
    }
    return sums;
}

}  // namespace

double lyapunov(const Hypergraph& h, const std::vector<double>& v) {
    auto sums = positive_edge_sums(h, v);
    double value = 0;
    for (double c : v) value -= c;
    double logs = 0;
    for (double s : sums) logs += std::log(s);
    return value + logs / h.edge_count();
}

double lyapunov(const Hypergraph& h, const SimplexPoint& v) { return lyapunov(h, v.coords()); }

std::vector<double> lyapunov_gradient(const Hypergraph& h, const std::vector<double>& v) {
    auto sums = positive_edge_sums(h, v);
    const double inv_n = 1.0 / h.edge_count();
    std::vector<double> g(v.size(), -1.0);
    for (size_t i = 0; i < v.size(); ++i) {
        for (int e : h.star(static_cast<int>(i))) {
            g[i] += inv_n / sums[e];
        }
    }
    return g;
}

std::vector<double> lyapunov_gradient(const Hypergraph& h, const SimplexPoint& v) {
    return lyapunov_gradient(h, v.coords());
}

Eigen::MatrixXd lyapunov_hessian(const Hypergraph& h, const std::vector<double>& v) {
    auto sums = positive_edge_sums(h, v);
    const int m = h.vertex_count();
    const double inv_n = 1.0 / h.edge_count();
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
    for (int e = 0; e < h.edge_count(); ++e) {
        double w = inv_n / (sums[e] * sums[e]);
        for (int i : h.edge(e)) {
            for (int j : h.edge(e)) {
                hess(i, j) -= w;
            }
        }
    }
    return hess;
}

Eigen::MatrixXd lyapunov_hessian(const Hypergraph& h, const SimplexPoint& v) {
    return lyapunov_hessian(h, v.coords());
}

std::vector<double> vector_field(const Hypergraph& h, const std::vector<double>& v) {
    auto sums = positive_edge_sums(h, v);
    const double inv_n = 1.0 / h.edge_count();
    std::vector<double> f(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        double acc = -v[i];
        for (int e : h.star(static_cast<int>(i))) {
            acc += inv_n * v[i] / sums[e];
        }
        f[i] = acc;
    }
    return f;
}

TangentVector vector_field(const Hypergraph& h, const SimplexPoint& v) {
    return TangentVector(vector_field(h, v.coords()));
}

Eigen::MatrixXd field_jacobian(const Hypergraph& h, const std::vector<double>& w) {
    const int m = h.vertex_count();
    Eigen::MatrixXd hess = lyapunov_hessian(h, w);
    std::vector<double> grad = lyapunov_gradient(h, w);
    Eigen::MatrixXd jf(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            jf(i, j) = w[i] * hess(i, j);
        }
        jf(i, i) += grad[i];
    }
    return jf;
}

Eigen::MatrixXd field_jacobian(const Hypergraph& h, const SimplexPoint& w) {
    return field_jacobian(h, w.coords());
}

std::vector<FlowSample> flow_integrate(const Hypergraph& h, const SimplexPoint& start,
                                       const FlowDomain& domain, double t_final, double dt) {
    if (!(dt > 0) || !(t_final >= 0)) {
        throw error(errc::invalid_argument, "flow_integrate needs dt > 0 and t_final >= 0");
    }
    const int m = h.vertex_count();

    auto check_domain = [&](const std::vector<double>& v) {
        for (int e = 0; e < h.edge_count(); ++e) {
            if (edge_sum(v, h.edge(e)) < domain.cutoff - 1e-12) {
                throw error(errc::domain_exit,
                            "edge sum " + std::to_string(e) + " fell below the cutoff");
            }
        }
    };

    std::vector<double> v = start.coords();
    check_domain(v);

    std::vector<FlowSample> out;
    double l_prev = lyapunov(h, v);
    out.push_back({0.0, SimplexPoint(v), l_prev});

    auto axpy = [m](const std::vector<double>& base, double scale, const std::vector<double>& dir) {
        std::vector<double> r(m);
        for (int i = 0; i < m; ++i) r[i] = base[i] + scale * dir[i];
        return r;
    };

    const long steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
    for (long s = 1; s <= steps; ++s) {
        auto k1 = vector_field(h, v);
        auto k2 = vector_field(h, axpy(v, dt / 2, k1));
        auto k3 = vector_field(h, axpy(v, dt / 2, k2));
        auto k4 = vector_field(h, axpy(v, dt, k3));
        double mass = 0;
        for (int i = 0; i < m; ++i) {
            v[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (v[i] < 0) v[i] = 0;
            mass += v[i];
        }
        for (int i = 0; i < m; ++i) v[i] /= mass;

        check_domain(v);
        double l_cur = lyapunov(h, v);
        if (l_cur < l_prev - 1e-6) {
            throw error(errc::step_too_large,
                        "Lyapunov value dropped by " + std::to_string(l_prev - l_cur) +
                            " in one step; reduce dt");
        }
        out.push_back({s * dt, SimplexPoint(v), l_cur});
        l_prev = l_cur;
    }
    return out;
}

}  // namespace polyurn

#include "polyurn/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyurn/errors.hpp"
#include "polyurn/rng.hpp"

namespace polyurn {

Support Support::full(int m) {
    Support s;
    s.members.resize(m);
    for (int i = 0; i < m; ++i) s.members[i] = i;
    return s;
}

Support Support::of(std::vector<int> members) {
    if (members.empty()) {
        throw error(errc::invalid_argument, "support must be nonempty");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Support{std::move(members)};
}

bool Support::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

namespace {

void require_edges_meet_support(const Hypergraph& h, const Support& face) {
    for (int e = 0; e < h.edge_count(); ++e) {
        bool hit = false;
        for (int v : h.edge(e)) {
            if (face.contains(v)) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            throw error(errc::edge_misses_support,
                        "edge " + std::to_string(e) + " has no vertex in the support");
        }
    }
}

double max_residual(const std::vector<double>& v, const std::vector<double>& grad) {
    double r = 0;
    for (size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(v[i] * grad[i]));
    return r;
}

Support effective_support(const std::vector<double>& v, double eps_zero) {
    std::vector<int> members;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= eps_zero) members.push_back(static_cast<int>(i));
    }
    if (members.empty()) members.push_back(0);  // cannot happen: coordinates sum to 1
    return Support{std::move(members)};
}

}  // namespace

EquilibriumRecord find_equilibrium(const Hypergraph& h, const Support& face,
                                   std::optional<SimplexPoint> start, const SolverOptions& opts) {
    require_edges_meet_support(h, face);
    const int m = h.vertex_count();

    std::vector<double> v(m, 0.0);
    if (start) {
        // restrict the start to the face and renormalize
        double mass = 0;
        for (int i : face.members) mass += (*start)[i];
        if (mass <= 0) {
            throw error(errc::invalid_argument, "start point has no mass on the support");
        }
        for (int i : face.members) v[i] = (*start)[i] / mass;
    } else {
        for (int i : face.members) v[i] = 1.0 / face.members.size();
    }

    auto grad = lyapunov_gradient(h, v);
    double l_cur = lyapunov(h, v);
    long iter = 0;
    bool converged = max_residual(v, grad) < opts.tolerance;

    std::vector<double> trace;
    if (opts.keep_trace) trace.push_back(l_cur);

    std::vector<double> candidate(m, 0.0);
    while (!converged && iter < opts.max_iterations) {
        ++iter;
        // multiplicative step: v + F(v) restricted to the face
        for (int i : face.members) candidate[i] = v[i] * (1.0 + grad[i]);
        bool accepted = false;
        double l_new = l_cur;
        bool feasible = true;
        for (int i : face.members) {
            if (!(candidate[i] > 0)) feasible = false;
        }
        if (feasible) {
            try {
                l_new = lyapunov(h, candidate);
                accepted = l_new >= l_cur - 1e-14 * std::max(1.0, std::abs(l_cur));
            } catch (const error&) {
                accepted = false;
            }
        }
        if (!accepted) {
            // projected gradient ascent on the face with backtracking
            double mean = 0;
            for (int i : face.members) mean += grad[i];
            mean /= face.members.size();
            double eta = 1.0;
            bool ok = false;
            while (eta > 1e-18) {
                feasible = true;
                for (int i : face.members) {
                    candidate[i] = v[i] + eta * (grad[i] - mean);
                    if (!(candidate[i] > 0)) feasible = false;
                }
                if (feasible) {
                    try {
                        l_new = lyapunov(h, candidate);
                        if (l_new >= l_cur) {
                            ok = true;
                            break;
                        }
                    } catch (const error&) {
                        // fell outside the domain; shrink
                    }
                }
                eta /= 2;
            }
            if (!ok) break;  // no ascent direction left at this scale
        }
        std::swap(v, candidate);
        std::fill(candidate.begin(), candidate.end(), 0.0);
        l_cur = l_new;
        if (opts.keep_trace) trace.push_back(l_cur);
        grad = lyapunov_gradient(h, v);
        converged = max_residual(v, grad) < opts.tolerance;
    }

    EquilibriumRecord rec{SimplexPoint(v), effective_support(v, opts.eps_zero), grad};
    rec.residual = max_residual(rec.point.coords(), rec.gradient);
    rec.converged = converged;
    rec.iterations = iter;
    rec.lyapunov_trace = std::move(trace);
    double mg = 0;
    for (int i : rec.support.members) mg = std::max(mg, std::abs(rec.gradient[i]));
    rec.max_support_gradient = mg;
    classify_equilibrium(h, rec, opts.eps_zero, opts.eps_gradient);
    return rec;
}

Stability classify_equilibrium(const Hypergraph&, EquilibriumRecord& rec, double eps_zero,
                               double eps_gradient) {
    rec.witness.reset();
    for (int i = 0; i < rec.point.dim(); ++i) {
        if (rec.point[i] < eps_zero && rec.gradient[i] > eps_gradient) {
            rec.witness = i;
            break;
        }
    }
    rec.classification = rec.witness ? Stability::unstable : Stability::non_unstable;
    return rec.classification;
}

bool same_coset(const EquilibriumRecord& a, const EquilibriumRecord& b, const KernelBasis& kernel,
                double tol) {
    const auto& pa = a.point.coords();
    const auto& pb = b.point.coords();
    std::vector<double> diff(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) diff[i] = pa[i] - pb[i];
    std::vector<double> origin(pa.size(), 0.0);
    return project_affine(diff, origin, kernel).distance < tol;
}

LimitCandidateSet limit_candidates(const Hypergraph& h, const SolverOptions& opts) {
    LimitCandidateSet out;
    out.kernel = tangent_kernel(h);
    EquilibriumRecord rec = find_equilibrium(h, Support::full(h.vertex_count()), std::nullopt, opts);
    bool interior = static_cast<int>(rec.support.members.size()) == h.vertex_count();
    out.base = rec;
    if (!rec.converged) {
        out.boundary_only = true;
        out.note = "full-support solve did not converge";
    } else if (!interior) {
        out.boundary_only = true;
        out.note = "no interior equilibrium; solver left the open face";
    }
    return out;
}

std::vector<PendantTriple> detect_pendants(const Hypergraph& h) {
    std::vector<PendantTriple> out;
    for (int e = 0; e < h.edge_count(); ++e) {
        for (int i : h.edge(e)) {
            if (h.star(i).size() != 1) continue;
            for (int j : h.edge(e)) {
                if (h.star(j).size() > 1) {
                    out.push_back({e, i, j});
                }
            }
        }
    }
    return out;
}

RadialCheckReport radial_minimum_check(const Hypergraph& h, const EquilibriumRecord& w, int samples,
                                       double chi, std::uint64_t seed) {
    const int m = h.vertex_count();
    const auto& wc = w.point.coords();
    double min_support_coord = 1.0;
    for (int i : w.support.members) min_support_coord = std::min(min_support_coord, wc[i]);
    if (!(chi > 0) || chi > min_support_coord) {
        throw error(errc::invalid_argument, "chi must lie in (0, min_{i in S} w_i]");
    }
    double base_mass = chi * static_cast<double>(w.support.members.size());
    if (base_mass > 1.0) {
        throw error(errc::invalid_argument, "chi too large: chi*|S| exceeds 1");
    }

    std::vector<double> edge_base(h.edge_count());
    for (int e = 0; e < h.edge_count(); ++e) edge_base[e] = edge_sum(wc, h.edge(e));

    auto f_value = [&](const std::vector<double>& v) {
        double acc = -1.0;
        for (int e = 0; e < h.edge_count(); ++e) {
            double ve = edge_sum(v, h.edge(e));
            if (!(ve > 0)) {
                throw error(errc::degenerate_edge_sum, "sampled point has nonpositive edge sum");
            }
            acc += edge_base[e] / (ve * h.edge_count());
        }
        return acc;
    };

    KernelBasis kernel = tangent_kernel(h);
    std::vector<double> origin(m, 0.0);
    auto kernel_distance = [&](const std::vector<double>& v) {
        std::vector<double> diff(m);
        for (int i = 0; i < m; ++i) diff[i] = v[i] - wc[i];
        return project_affine(diff, origin, kernel).distance;
    };

    RadialCheckReport report;
    report.f_at_base = f_value(wc);
    report.min_f = report.max_f = report.f_at_base;
    report.min_transverse_f = std::numeric_limits<double>::infinity();

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        // chi floor on the support plus a random simplex point for the rest
        std::vector<double> u(m);
        double mass = 0;
        for (int i = 0; i < m; ++i) {
            u[i] = -std::log(1.0 - rng.uniform());
            mass += u[i];
        }
        std::vector<double> v(m, 0.0);
        for (int i : w.support.members) v[i] = chi;
        for (int i = 0; i < m; ++i) v[i] += (1.0 - base_mass) * u[i] / mass;

        RadialSample sample{v, f_value(v), kernel_distance(v)};
        report.min_f = std::min(report.min_f, sample.f_value);
        report.max_f = std::max(report.max_f, sample.f_value);
        if (sample.kernel_distance >= 0.01) {
            report.min_transverse_f = std::min(report.min_transverse_f, sample.f_value);
            ++report.transverse_samples;
        }
        report.samples.push_back(std::move(sample));
    }

    // explicit points of the kernel coset through w, clipped into the region
    for (const auto& basis_vec : basis_as_doubles(kernel)) {
        double t_max = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double floor = w.support.contains(i) ? chi : 0.0;
            if (basis_vec[i] < -1e-15) t_max = std::min(t_max, (wc[i] - floor) / -basis_vec[i]);
        }
        if (!(t_max > 0) || !std::isfinite(t_max)) continue;
        double t = 0.9 * t_max;
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i) v[i] = wc[i] + t * basis_vec[i];
        double f = f_value(v);
        report.max_coset_f = std::max(report.max_coset_f, std::abs(f));
        ++report.coset_points;
        report.min_f = std::min(report.min_f, f);
    }

    report.all_nonnegative = report.min_f >= -1e-10;
    if (report.transverse_samples == 0) report.min_transverse_f = 0.0;
    return report;
}

}  // namespace polyurn

// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyurn/dynamics.hpp"
#include "polyurn/equilibria.hpp"
#include "polyurn/exactlin.hpp"
#include "polyurn/hypergraph.hpp"
#include "polyurn/rng.hpp"
#include "polyurn/simulate.hpp"
#include "polyurn/spectral.hpp"
#include "../support/oracles.hpp"
#include "../support/random_hypergraph.hpp"

using namespace polyurn;
using polyurn::testing::random_hypergraph;
using polyurn::testing::random_interior_point;

namespace {

constexpr std::uint64_t kSeed = 20240808;

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_edge_deviation(const Hypergraph& h, const std::vector<double>& x, double target) {
    double dev = 0;
    for (int e = 0; e < h.edge_count(); ++e) {
        dev = std::max(dev, std::abs(edge_sum(x, h.edge(e)) - target));
    }
    return dev;
}

// ---------------------------------------------------------------------------

void criterion_1_platonic_kernel_dims(Checker& c) {
    struct Row {
        const char* name;
        int dim;
    };
    for (Row row : {Row{"tetrahedron", 0}, Row{"cube", 4}, Row{"octahedron", 2},
                    Row{"icosahedron", 0}, Row{"dodecahedron", 8}}) {
        Hypergraph h = builtin(row.name);
        int tk = tangent_kernel(h).dim();
        int fk = full_kernel(h).dim();
        c.require(tk == row.dim, std::string(row.name) + ": dim K = " + std::to_string(tk) +
                                     " expected " + std::to_string(row.dim));
        c.require(fk == tk, std::string(row.name) + ": full kernel dim " + std::to_string(fk) +
                                " != tangent kernel dim " + std::to_string(tk));
    }
}

void criterion_2_cube_jacobians(Checker& c) {
    static const int matrix_a[8][8] = {
        {0, 0, 0, 0, 0, 0, 0, 0}, {4, 6, 4, 2, 2, 4, 2, 0}, {0, 0, 0, 0, 0, 0, 0, 0},
        {4, 2, 4, 6, 2, 0, 2, 4}, {2, 1, 0, 1, 3, 2, 1, 2}, {1, 2, 1, 0, 2, 3, 2, 1},
        {0, 1, 2, 1, 1, 2, 3, 2}, {1, 0, 1, 2, 2, 1, 2, 3}};
    static const int matrix_b[8][8] = {
        {3, 2, 1, 2, 2, 1, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0},
        {2, 1, 2, 3, 1, 0, 1, 2}, {0, 0, 0, 0, 0, 0, 0, 0}, {1, 2, 1, 0, 2, 3, 2, 1},
        {0, 1, 2, 1, 1, 2, 3, 2}, {0, 0, 0, 0, 0, 0, 0, 0}};

    Hypergraph cube = builtin("cube");
    std::vector<Rational> point_a{Rational(0), Rational(1, 4), Rational(0), Rational(1, 4),
                                  Rational(1, 8), Rational(1, 8), Rational(1, 8), Rational(1, 8)};
    std::vector<Rational> point_b{Rational(1, 4), Rational(0), Rational(0), Rational(1, 4),
                                  Rational(0), Rational(1, 4), Rational(1, 4), Rational(0)};

    auto jf_a = field_jacobian_exact(cube, point_a);
    auto jf_b = field_jacobian_exact(cube, point_b);
    bool equal_a = true, equal_b = true;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            if (jf_a.at(i, j) != Rational(-1, 12) * Rational(matrix_a[i][j])) equal_a = false;
            if (jf_b.at(i, j) != Rational(-1, 6) * Rational(matrix_b[i][j])) equal_b = false;
        }
    }
    c.require(equal_a, "first jacobian differs from -(1/12) x reference matrix");
    c.require(equal_b, "second jacobian differs from -(1/6) x reference matrix");
    int rank_a = rank(jf_a);
    int rank_b = rank(jf_b);
    c.require(rank_a == 4, "first jacobian rank " + std::to_string(rank_a) + " expected 4");
    c.require(rank_b == 3, "second jacobian rank " + std::to_string(rank_b) + " expected 3");
}

void criterion_3_eigenvalue_counts(Checker& c) {
    for (const char* name :
         {"tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron"}) {
        Hypergraph h = builtin(name);
        const int m = h.vertex_count();
        SimplexPoint uniform = SimplexPoint::uniform(m);
        auto spectrum = restricted_spectrum(h, uniform, true);
        int k = spectrum.k_expected;
        c.require(spectrum.n_negative == m - 1 - k,
                  std::string(name) + ": " + std::to_string(spectrum.n_negative) +
                      " negative eigenvalues, expected " + std::to_string(m - 1 - k));
        c.require(spectrum.n_zero == k, std::string(name) + ": " + std::to_string(spectrum.n_zero) +
                                            " zero eigenvalues, expected " + std::to_string(k));
        c.require(spectrum.n_positive == 0, std::string(name) + ": positive eigenvalues present");

        auto identities = rank_identities(h, uniform);
        c.require(identities.ranks_match,
                  std::string(name) + ": rank(JF) = " + std::to_string(identities.rank_jf) +
                      " != rank(incidence) = " + std::to_string(identities.rank_incidence));
        c.require(identities.factorization_error < 1e-10,
                  std::string(name) + ": hessian factorization error " +
                      std::to_string(identities.factorization_error));
    }
}

void criterion_4_point_convergence(Checker& c) {
    for (const char* name : {"tetrahedron", "icosahedron"}) {
        Hypergraph h = builtin(name);
        const int m = h.vertex_count();
        std::vector<double> uniform(m, 1.0 / m);

        SimConfig config;
        config.seed = kSeed;
        config.replicas = 32;
        config.steps = 100000;
        config.schedule = SampleSchedule::linear(10000);
        auto results = run(h, config);

        std::vector<double> early, late;
        for (const auto& r : results) {
            double d_early = -1, d_late = -1;
            for (const auto& s : r.samples) {
                if (s.n == 10000) d_early = sup_distance(s.x, uniform);
                if (s.n == 100000) d_late = sup_distance(s.x, uniform);
            }
            early.push_back(d_early);
            late.push_back(d_late);
        }
        double med_late = median(late);
        double med_early = median(early);
        c.require(med_late < 0.02, std::string(name) + ": median sup-distance " +
                                       std::to_string(med_late) + " not < 0.02");
        c.require(med_late < med_early,
                  std::string(name) + ": distance did not shrink from 1e4 to 1e5 steps (" +
                      std::to_string(med_early) + " -> " + std::to_string(med_late) + ")");
    }
}

void criterion_5_cube_limit_set(Checker& c) {
    Hypergraph cube = builtin("cube");
    SimConfig config;
    config.seed = kSeed + 1;
    config.replicas = 32;
    config.steps = 100000;
    config.schedule = SampleSchedule::linear(10000);
    auto results = run(cube, config);

    std::vector<double> early, late, terminal_x0;
    for (const auto& r : results) {
        for (const auto& s : r.samples) {
            if (s.n == 10000) early.push_back(max_edge_deviation(cube, s.x, 0.5));
            if (s.n == 100000) late.push_back(max_edge_deviation(cube, s.x, 0.5));
        }
        terminal_x0.push_back(r.terminal[0]);
    }
    double med_late = median(late);
    double med_early = median(early);
    c.require(med_late < 0.02,
              "median max-face deviation " + std::to_string(med_late) + " not < 0.02");
    c.require(med_late < med_early, "face deviation did not shrink from 1e4 to 1e5 steps");

    double mean = 0;
    for (double x : terminal_x0) mean += x;
    mean /= terminal_x0.size();
    double var = 0;
    for (double x : terminal_x0) var += (x - mean) * (x - mean);
    double sd = std::sqrt(var / (terminal_x0.size() - 1));
    c.require(sd > 0.01, "terminal x0 spread " + std::to_string(sd) + " not > 0.01");
}

void criterion_6_initial_condition_trend(Checker& c) {
    Hypergraph cube = builtin("cube");
    std::vector<double> means;
    for (std::uint64_t b0 : {1ull, 10ull, 100ull}) {
        SimConfig config;
        config.seed = kSeed + 2;
        config.replicas = 32;
        config.steps = 10000;
        config.initial_balls = {b0, 1, 1, 1, 1, 1, 1, 1};
        config.record_trajectory = false;
        auto results = run(cube, config);
        double mean = 0;
        for (const auto& r : results) mean += r.terminal[0];
        means.push_back(mean / results.size());
    }
    c.require(means[0] < means[1] && means[1] < means[2],
              "mean terminal x0 not strictly increasing: " + std::to_string(means[0]) + ", " +
                  std::to_string(means[1]) + ", " + std::to_string(means[2]));
}

void criterion_7_exact_step_identity(Checker& c) {
    Rng rng(kSeed + 3);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Hypergraph h = random_hypergraph(rng, 10, 15);
        std::vector<std::uint64_t> balls(h.vertex_count());
        for (auto& b : balls) b = 1 + rng.bounded(10);
        UrnState state = UrnState::from_initial(balls);
        for (int n = 0; n < 50; ++n) {
            UrnState next = step(h, state, rng);
            if (!step_identity_holds(h, state, next)) {
                c.require(false, "identity failed at trial " + std::to_string(trial) + " step " +
                                     std::to_string(n));
                return;
            }
            state = next;
            ++checked;
        }
    }
    c.require(checked == 1000, "expected 1000 checked steps, got " + std::to_string(checked));
}

void criterion_8_gradient_like_flow(Checker& c) {
    Rng rng(kSeed + 4);
    struct Case {
        Hypergraph h;
        double t_final;
        const char* name;
    };
    std::vector<Case> cases;
    cases.push_back({builtin("tetrahedron"), 200.0, "tetrahedron"});
    cases.push_back({builtin("cube"), 50.0, "cube"});
    cases.push_back({Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}), 50.0, "triangle"});

    for (const auto& test_case : cases) {
        const int m = test_case.h.vertex_count();
        for (int start = 0; start < 10; ++start) {
            SimplexPoint v0(random_interior_point(rng, m));
            auto traj = flow_integrate(test_case.h, v0, FlowDomain::half_margin(test_case.h),
                                       test_case.t_final, 0.01);
            for (size_t s = 1; s < traj.size(); ++s) {
                if (traj[s].lyapunov_value < traj[s - 1].lyapunov_value - 1e-9) {
                    c.require(false, std::string(test_case.name) +
                                         ": Lyapunov value decreased beyond 1e-9 at t = " +
                                         std::to_string(traj[s].t));
                    break;
                }
            }
            if (std::string(test_case.name) == "tetrahedron") {
                double d = sup_distance(traj.back().point.coords(),
                                        std::vector<double>(4, 0.25));
                c.require(d < 1e-6, "tetrahedron terminal " + std::to_string(d) +
                                        " from uniform, not < 1e-6");
            }
        }
    }
}

void criterion_9_inward_pointing(Checker& c) {
    Rng rng(kSeed + 5);
    int tested = 0;
    while (tested < 100) {
        Hypergraph h = random_hypergraph(rng, 10, 15);
        int edge_index = -1;
        for (int e = 0; e < h.edge_count(); ++e) {
            if (static_cast<int>(h.edge(e).size()) < h.vertex_count()) {
                edge_index = e;
                break;
            }
        }
        if (edge_index < 0) continue;
        const double cutoff = 1.0 / (2.0 * h.edge_count());
        const auto& edge = h.edge(edge_index);

        std::vector<double> v(h.vertex_count(), 0.0);
        double mass = 0;
        std::vector<double> inside(edge.size());
        for (double& x : inside) {
            x = -std::log(1.0 - rng.uniform());
            mass += x;
        }
        for (size_t i = 0; i < edge.size(); ++i) v[edge[i]] = cutoff * inside[i] / mass;
        std::vector<int> off;
        for (int i = 0; i < h.vertex_count(); ++i) {
            if (v[i] == 0.0) off.push_back(i);
        }
        mass = 0;
        std::vector<double> outside(off.size());
        for (double& x : outside) {
            x = -std::log(1.0 - rng.uniform());
            mass += x;
        }
        for (size_t i = 0; i < off.size(); ++i) v[off[i]] = (1.0 - cutoff) * outside[i] / mass;

        auto f = vector_field(h, v);
        double drift = 0;
        for (int i : edge) drift += f[i];
        if (drift < 1.0 / h.edge_count() - cutoff - 1e-12) {
            c.require(false, "edge drift " + std::to_string(drift) + " below 1/N - c at trial " +
                                 std::to_string(tested));
            return;
        }
        ++tested;
    }
}

void criterion_10_coset_structure(Checker& c) {
    Rng rng(kSeed + 6);
    Hypergraph cube = builtin("cube");
    KernelBasis kernel = tangent_kernel(cube);
    std::vector<EquilibriumRecord> cube_records;
    for (int s = 0; s < 20; ++s) {
        cube_records.push_back(
            find_equilibrium(cube, Support::full(8), SimplexPoint(random_interior_point(rng, 8))));
        c.require(cube_records.back().converged, "cube solve " + std::to_string(s) + " diverged");
    }
    for (size_t a = 0; a < cube_records.size(); ++a) {
        for (size_t b = a + 1; b < cube_records.size(); ++b) {
            if (!same_coset(cube_records[a], cube_records[b], kernel, 1e-8)) {
                c.require(false, "cube solves " + std::to_string(a) + "," + std::to_string(b) +
                                     " in different cosets");
                return;
            }
        }
    }

    Hypergraph tetra = builtin("tetrahedron");
    std::vector<EquilibriumRecord> tetra_records;
    for (int s = 0; s < 20; ++s) {
        tetra_records.push_back(
            find_equilibrium(tetra, Support::full(4), SimplexPoint(random_interior_point(rng, 4))));
    }
    for (size_t a = 0; a < tetra_records.size(); ++a) {
        for (size_t b = a + 1; b < tetra_records.size(); ++b) {
            double d = sup_distance(tetra_records[a].point.coords(),
                                    tetra_records[b].point.coords());
            if (d > 1e-10) {
                c.require(false, "tetrahedron solves differ by " + std::to_string(d));
                return;
            }
        }
    }
}

void criterion_11_derivative_consistency(Checker& c) {
    Rng rng(kSeed + 7);
    for (int trial = 0; trial < 50; ++trial) {
        Hypergraph h = random_hypergraph(rng, 10, 15);
        auto v = random_interior_point(rng, h.vertex_count());

        auto grad = lyapunov_gradient(h, v);
        auto fd_grad = polyurn::testing::fd_gradient(
            [&](const std::vector<double>& u) { return lyapunov(h, u); }, v);
        double grad_err = 0;
        for (size_t i = 0; i < grad.size(); ++i) {
            grad_err = std::max(grad_err, std::abs(grad[i] - fd_grad[i]));
        }
        c.require(grad_err < 1e-5,
                  "gradient FD error " + std::to_string(grad_err) + " at trial " +
                      std::to_string(trial));

        auto hess_err = (lyapunov_hessian(h, v) -
                         polyurn::testing::fd_jacobian(
                             [&](const std::vector<double>& u) { return lyapunov_gradient(h, u); },
                             v))
                            .cwiseAbs()
                            .maxCoeff();
        c.require(hess_err < 1e-4, "hessian FD error " + std::to_string(hess_err));

        auto jf_err = (field_jacobian(h, v) -
                       polyurn::testing::fd_jacobian(
                           [&](const std::vector<double>& u) { return vector_field(h, u); }, v))
                          .cwiseAbs()
                          .maxCoeff();
        c.require(jf_err < 1e-5, "jacobian FD error " + std::to_string(jf_err));
        if (!c.ok) return;
    }
}

void criterion_12_boundary_convergence(Checker& c) {
    Hypergraph path = builtin("path(3)");
    SimConfig config;
    config.seed = kSeed + 8;
    config.replicas = 64;
    config.steps = 100000;
    config.record_trajectory = false;
    auto results = run(path, config);

    const std::vector<double> saddle{0.5, 0.0, 0.5};
    for (const auto& r : results) {
        double min_coord = *std::min_element(r.terminal.begin(), r.terminal.end());
        if (min_coord >= 0.02) {
            c.require(false, "replica " + std::to_string(r.replica) + " min coordinate " +
                                 std::to_string(min_coord) + " not < 0.02");
            return;
        }
        if (sup_distance(r.terminal, saddle) <= 0.05) {
            c.require(false, "replica " + std::to_string(r.replica) +
                                 " terminal within 0.05 of the unstable point");
            return;
        }
    }
}

void criterion_13_noise_diagnostics(Checker& c) {
    Hypergraph cube = builtin("cube");
    SimConfig config;
    config.seed = kSeed + 9;
    config.replicas = 16;
    config.steps = 10000;
    config.record_trajectory = false;
    config.record_noise = true;
    auto results = run(cube, config);

    std::vector<double> osc_half, osc_full;
    for (const auto& r : results) {
        auto diag = noise_diagnostics(cube, 8, r.noise, 10);
        if (diag.max_abs_sum >= 1e-12) {
            c.require(false, "noise sum " + std::to_string(diag.max_abs_sum) + " not < 1e-12");
            return;
        }
        if (diag.max_norm > 1.0) {
            c.require(false, "noise norm " + std::to_string(diag.max_norm) + " exceeds 1");
            return;
        }
        if (diag.window_violations != 0) {
            c.require(false, "replica " + std::to_string(r.replica) + " has " +
                                 std::to_string(diag.window_violations) +
                                 " windowed means beyond 4 standard errors");
            return;
        }
        osc_half.push_back(martingale_oscillation(diag, 2500, 5000));
        osc_full.push_back(martingale_oscillation(diag, 5000, 10000));
    }
    double med_half = median(osc_half);
    double med_full = median(osc_full);
    c.require(med_full < med_half,
              "martingale oscillation did not shrink: " + std::to_string(med_half) + " -> " +
                  std::to_string(med_full));
}

struct Criterion {
    int number;
    const char* name;
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "platonic kernel dimension table, exact", criterion_1_platonic_kernel_dims},
        {2, "cube jacobians at the reference boundary points, exact", criterion_2_cube_jacobians},
        {3, "transverse eigenvalue counts and rank identities", criterion_3_eigenvalue_counts},
        {4, "point convergence on tetrahedron and icosahedron", criterion_4_point_convergence},
        {5, "cube limit set: face sums and terminal spread", criterion_5_cube_limit_set},
        {6, "initial-condition dependence of the cube limit", criterion_6_initial_condition_trend},
        {7, "stochastic approximation identity, exact", criterion_7_exact_step_identity},
        {8, "gradient-like flow", criterion_8_gradient_like_flow},
        {9, "inward pointing at the cutoff boundary", criterion_9_inward_pointing},
        {10, "coset structure of equilibria", criterion_10_coset_structure},
        {11, "derivative consistency vs finite differences", criterion_11_derivative_consistency},
        {12, "boundary convergence on path(3)", criterion_12_boundary_convergence},
        {13, "noise and martingale diagnostics", criterion_13_noise_diagnostics},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        Checker checker;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(checker);
        } catch (const std::exception& e) {
            checker.require(false, std::string("exception: ") + e.what());
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (checker.ok) {
            std::printf("[PASS] criterion %2d: %s (%lld ms)\n", criterion.number, criterion.name,
                        static_cast<long long>(elapsed));
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%lld ms) -- %s\n", criterion.number,
                        criterion.name, static_cast<long long>(elapsed),
                        checker.detail.str().c_str());
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    }
    return failures;
}

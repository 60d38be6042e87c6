#ifndef POLYURN_SIMULATE_HPP
#define POLYURN_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "polyurn/equilibria.hpp"
#include "polyurn/hypergraph.hpp"
#include "polyurn/rng.hpp"

namespace polyurn {

/// Ball counts of the urn process. The total is exactly the initial total
/// plus N per step.
struct UrnState {
    std::vector<std::uint64_t> balls;
    std::uint64_t steps = 0;
    std::uint64_t initial_total = 0;

    /// All initial counts must be >= 1.
    static UrnState from_initial(const std::vector<std::uint64_t>& initial);

    std::uint64_t total() const;
    std::vector<double> proportions() const;
};

/// Centered per-step noise: realized increment minus its conditional mean.
struct NoiseSample {
    std::uint64_t n;
    std::vector<double> u;
};

/// One urn step: every hyperedge independently adds one ball to one of its
/// vertices, chosen proportionally to the pre-step counts. When `noise` is
/// given, the centered increment is computed in exact rationals and stored.
UrnState step(const Hypergraph& h, const UrnState& state, Rng& rng,
              NoiseSample* noise = nullptr);

/// Step size of the stochastic-approximation form, N/(N0 + (n+1)N).
double step_size(std::uint64_t n, std::uint64_t initial_total, int edge_count);

/// Verifies in exact rational arithmetic that one step satisfies
/// x(n+1) - x(n) = gamma_n (-x(n) + C/N), coordinatewise.
bool step_identity_holds(const Hypergraph& h, const UrnState& before, const UrnState& after);

struct SampleSchedule {
    enum class Kind { linear, geometric } kind = Kind::geometric;
    std::uint64_t stride = 1;
    double ratio = 1.1;

    static SampleSchedule linear(std::uint64_t stride);
    static SampleSchedule geometric(double ratio = 1.1);
    std::uint64_t next_after(std::uint64_t n) const;
};

struct SimConfig {
    std::uint64_t seed = 0;
    int replicas = 1;
    std::uint64_t steps = 10000;
    std::vector<std::uint64_t> initial_balls;  // empty = all ones
    SampleSchedule schedule = SampleSchedule::geometric();
    bool record_trajectory = true;
    bool record_noise = false;
};

struct TrajectorySample {
    std::uint64_t n;
    std::vector<double> x;
};

struct ReplicaResult {
    int replica = 0;
    std::vector<TrajectorySample> samples;
    std::vector<double> terminal;
    std::vector<NoiseSample> noise;
};

/// Runs all replicas; replica r draws from an independent stream derived from
/// (seed, r), so results are reproducible replica-by-replica and identical
/// however many threads are used. POLYURN_THREADS caps the worker count.
std::vector<ReplicaResult> run(const Hypergraph& h, const SimConfig& config);

struct TrendPoint {
    std::uint64_t n;
    double distance;       // Euclidean distance to the candidate affine set
    double max_edge_dev;   // max over edges of |x_I - w_I|
};

struct ReplicaStatistics {
    int replica = 0;
    double terminal_distance = 0.0;
    double terminal_max_edge_dev = 0.0;
    std::vector<TrendPoint> trend;
};

struct LimitStatistics {
    std::vector<ReplicaStatistics> replicas;
    double mean_distance = 0.0;
    double median_distance = 0.0;
    double max_distance = 0.0;
    double mean_max_edge_dev = 0.0;
    double median_max_edge_dev = 0.0;
    double max_max_edge_dev = 0.0;
};

/// Distances of trajectories and terminals to the candidate limit set
/// (base + kernel), plus edge-sum deviations from the base point.
LimitStatistics limit_statistics(const Hypergraph& h, const std::vector<ReplicaResult>& results,
                                 const LimitCandidateSet& candidates);

struct NoiseWindow {
    std::size_t begin = 0;  // sample index range [begin, end)
    std::size_t end = 0;
    std::vector<double> mean;
    std::vector<double> std_error;
};

struct NoiseDiagnostics {
    double max_abs_sum = 0.0;   // largest |sum_i u_i| over samples
    double max_norm = 0.0;      // largest max-norm over samples
    std::vector<NoiseWindow> windows;
    int window_violations = 0;  // coordinates with |mean| > 4 std errors
    double gamma_sq_sum = 0.0;
    double gamma_sq_bound = 0.0;  // closed-form tail bound N/N0
    std::vector<std::uint64_t> sample_steps;
    std::vector<std::vector<double>> martingale;  // M after each sample
};

NoiseDiagnostics noise_diagnostics(const Hypergraph& h, std::uint64_t initial_total,
                                   const std::vector<NoiseSample>& log, int window_count = 10);

/// Max-norm oscillation of the martingale over samples with step in [lo, hi].
double martingale_oscillation(const NoiseDiagnostics& diag, std::uint64_t lo, std::uint64_t hi);

}  // namespace polyurn

#endif  // POLYURN_SIMULATE_HPP

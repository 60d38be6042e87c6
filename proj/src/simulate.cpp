#include "polyurn/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "polyurn/errors.hpp"
#include "polyurn/rational.hpp"

namespace polyurn {

namespace {

BigInt big_from_u64(std::uint64_t v) {
    if (v > static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
        throw error(errc::overflow, "ball count exceeds exact-arithmetic range");
    }
    return BigInt(static_cast<long long>(v));
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact centered increment via 128-bit fractions. Returns false when the
// running denominators threaten to overflow; the caller then recomputes with
// arbitrary-precision rationals.
bool noise_fast_path(const Hypergraph& h, const UrnState& state,
                     const std::vector<std::uint32_t>& added,
                     const std::vector<std::uint64_t>& edge_totals, std::vector<double>& u) {
    constexpr __int128 kLimit = (static_cast<__int128>(1) << 100);
    const int m = h.vertex_count();
    const int n_edges = h.edge_count();
    u.resize(m);
    for (int i = 0; i < m; ++i) {
        __int128 num = 0;  // running sum of B_i / T_e
        __int128 den = 1;
        for (int e : h.star(i)) {
            __int128 total = edge_totals[e];
            if (den > kLimit / total) return false;
            num = num * total + static_cast<__int128>(state.balls[i]) * den;
            den *= total;
            __int128 g = gcd128(num, den);
            if (g > 1) {
                num /= g;
                den /= g;
            }
            if (num > kLimit || den > kLimit) return false;
        }
        // u_i = (C_i - num/den) / N
        __int128 u_num = static_cast<__int128>(added[i]) * den - num;
        __int128 u_den = den * n_edges;
        u[i] = static_cast<double>(u_num) / static_cast<double>(u_den);
    }
    return true;
}

}  // namespace

UrnState UrnState::from_initial(const std::vector<std::uint64_t>& initial) {
    if (initial.empty()) {
        throw error(errc::invalid_argument, "urn needs at least one bin");
    }
    UrnState s;
    s.balls = initial;
    std::uint64_t total = 0;
    for (std::uint64_t b : initial) {
        if (b < 1) {
            throw error(errc::invalid_argument, "every bin starts with at least one ball");
        }
        if (total > std::numeric_limits<std::uint64_t>::max() - b) {
            throw error(errc::overflow, "initial ball total overflows");
        }
        total += b;
    }
    s.initial_total = total;
    return s;
}

std::uint64_t UrnState::total() const {
    std::uint64_t total = 0;
    for (std::uint64_t b : balls) {
        if (total > std::numeric_limits<std::uint64_t>::max() - b) {
            throw error(errc::overflow, "ball total overflows");
        }
        total += b;
    }
    return total;
}

std::vector<double> UrnState::proportions() const {
    double t = static_cast<double>(total());
    std::vector<double> x(balls.size());
    for (size_t i = 0; i < balls.size(); ++i) x[i] = static_cast<double>(balls[i]) / t;
    return x;
}

UrnState step(const Hypergraph& h, const UrnState& state, Rng& rng, NoiseSample* noise) {
    const int m = h.vertex_count();
    const int n_edges = h.edge_count();
    if (static_cast<int>(state.balls.size()) != m) {
        throw error(errc::invalid_argument, "urn state does not match the hypergraph");
    }

    std::vector<std::uint32_t> added(m, 0);
    for (int e = 0; e < n_edges; ++e) {
        std::uint64_t edge_total = 0;
        for (int v : h.edge(e)) {
            if (edge_total > std::numeric_limits<std::uint64_t>::max() - state.balls[v]) {
                throw error(errc::overflow, "edge ball total overflows");
            }
            edge_total += state.balls[v];
        }
        if (edge_total == 0) {
            throw error(errc::invalid_argument, "edge " + std::to_string(e) + " holds no balls");
        }
        std::uint64_t r = rng.bounded(edge_total);
        for (int v : h.edge(e)) {
            if (r < state.balls[v]) {
                ++added[v];
                break;
            }
            r -= state.balls[v];
        }
    }

    UrnState next = state;
    next.steps = state.steps + 1;
    for (int i = 0; i < m; ++i) {
        if (next.balls[i] > std::numeric_limits<std::uint64_t>::max() - added[i]) {
            throw error(errc::overflow, "ball count overflows 64 bits");
        }
        next.balls[i] += added[i];
    }

    if (noise) {
        // u_i = C_i/N - (1/N) sum_{I contains i} B_i/B_I, exactly
        noise->n = state.steps;
        std::vector<std::uint64_t> edge_totals(n_edges);
        for (int e = 0; e < n_edges; ++e) {
            std::uint64_t total = 0;
            for (int v : h.edge(e)) total += state.balls[v];
            edge_totals[e] = total;
        }
        if (!noise_fast_path(h, state, added, edge_totals, noise->u)) {
            noise->u.resize(m);
            const Rational inv_n(1, n_edges);
            for (int i = 0; i < m; ++i) {
                Rational expected(0);
                Rational bi(big_from_u64(state.balls[i]), BigInt(1));
                for (int e : h.star(i)) {
                    expected += bi / Rational(big_from_u64(edge_totals[e]), BigInt(1));
                }
                Rational u = (Rational(static_cast<long long>(added[i])) - expected) * inv_n;
                noise->u[i] = u.to_double();
            }
        }
    }
    return next;
}

double step_size(std::uint64_t n, std::uint64_t initial_total, int edge_count) {
    return static_cast<double>(edge_count) /
           (static_cast<double>(initial_total) + static_cast<double>(n + 1) * edge_count);
}

bool step_identity_holds(const Hypergraph& h, const UrnState& before, const UrnState& after) {
    const int m = h.vertex_count();
    const int n_edges = h.edge_count();
    if (after.steps != before.steps + 1 || before.balls.size() != after.balls.size()) {
        return false;
    }

    BigInt total_before = big_from_u64(before.total());
    BigInt total_after = big_from_u64(after.total());
    BigInt expected_after =
        big_from_u64(before.initial_total) + BigInt(static_cast<long long>(after.steps)) * BigInt(n_edges);
    if (total_after != expected_after) return false;

    // gamma_n = N / (N0 + (n+1)N)
    Rational gamma(BigInt(n_edges), total_after);
    for (int i = 0; i < m; ++i) {
        if (after.balls[i] < before.balls[i]) return false;
        Rational x_before(big_from_u64(before.balls[i]), total_before);
        Rational x_after(big_from_u64(after.balls[i]), total_after);
        Rational added(static_cast<long long>(after.balls[i] - before.balls[i]));
        Rational xi = added / Rational(n_edges);
        if (x_after - x_before != gamma * (xi - x_before)) return false;
    }
    return true;
}

SampleSchedule SampleSchedule::linear(std::uint64_t stride) {
    if (stride == 0) {
        throw error(errc::invalid_argument, "sample stride must be positive");
    }
    SampleSchedule s;
    s.kind = Kind::linear;
    s.stride = stride;
    return s;
}

SampleSchedule SampleSchedule::geometric(double ratio) {
    if (!(ratio > 1.0)) {
        throw error(errc::invalid_argument, "sample ratio must exceed 1");
    }
    SampleSchedule s;
    s.kind = Kind::geometric;
    s.ratio = ratio;
    return s;
}

std::uint64_t SampleSchedule::next_after(std::uint64_t n) const {
    if (kind == Kind::linear) return n + stride;
    auto scaled = static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * ratio));
    return std::max(n + 1, scaled);
}

namespace {

int worker_count(int replicas) {
    unsigned hw = std::thread::hardware_concurrency();
    int threads = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("POLYURN_THREADS")) {
        char* end = nullptr;
        long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed >= 1) threads = static_cast<int>(parsed);
    }
    return std::min(threads, replicas);
}

ReplicaResult run_one(const Hypergraph& h, const SimConfig& config, int replica) {
    ReplicaResult result;
    result.replica = replica;
    Rng rng = Rng::for_replica(config.seed, static_cast<std::uint64_t>(replica));

    std::vector<std::uint64_t> initial = config.initial_balls;
    if (initial.empty()) initial.assign(h.vertex_count(), 1);
    UrnState state = UrnState::from_initial(initial);

    if (config.record_trajectory) {
        result.samples.push_back({0, state.proportions()});
    }
    std::uint64_t next_sample = config.schedule.next_after(0);

    NoiseSample noise;
    for (std::uint64_t n = 1; n <= config.steps; ++n) {
        state = step(h, state, rng, config.record_noise ? &noise : nullptr);
        if (config.record_noise) result.noise.push_back(noise);
        if (config.record_trajectory && (n == next_sample || n == config.steps)) {
            result.samples.push_back({n, state.proportions()});
            while (next_sample <= n) next_sample = config.schedule.next_after(next_sample);
        }
    }
    result.terminal = state.proportions();
    return result;
}

}  // namespace

std::vector<ReplicaResult> run(const Hypergraph& h, const SimConfig& config) {
    if (config.replicas < 1 || config.steps < 1) {
        throw error(errc::invalid_argument, "need at least one replica and one step");
    }
    if (!config.initial_balls.empty() &&
        static_cast<int>(config.initial_balls.size()) != h.vertex_count()) {
        throw error(errc::invalid_argument, "initial ball vector does not match vertex count");
    }

    std::vector<ReplicaResult> results(config.replicas);
    int threads = worker_count(config.replicas);
    if (threads <= 1) {
        for (int r = 0; r < config.replicas; ++r) results[r] = run_one(h, config, r);
        return results;
    }

    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int r = cursor.fetch_add(1);
                if (r >= config.replicas) return;
                try {
                    results[r] = run_one(h, config, r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

namespace {

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

LimitStatistics limit_statistics(const Hypergraph& h, const std::vector<ReplicaResult>& results,
                                 const LimitCandidateSet& candidates) {
    if (!candidates.base) {
        throw error(errc::invalid_argument, "limit_statistics needs a base equilibrium");
    }
    const auto& w = candidates.base->point.coords();
    std::vector<double> base_edge_sums(h.edge_count());
    for (int e = 0; e < h.edge_count(); ++e) base_edge_sums[e] = edge_sum(w, h.edge(e));

    auto max_edge_dev = [&](const std::vector<double>& x) {
        double dev = 0;
        for (int e = 0; e < h.edge_count(); ++e) {
            dev = std::max(dev, std::abs(edge_sum(x, h.edge(e)) - base_edge_sums[e]));
        }
        return dev;
    };

    LimitStatistics stats;
    std::vector<double> distances, devs;
    for (const auto& result : results) {
        ReplicaStatistics rs;
        rs.replica = result.replica;
        rs.terminal_distance = project_affine(result.terminal, w, candidates.kernel).distance;
        rs.terminal_max_edge_dev = max_edge_dev(result.terminal);
        for (const auto& sample : result.samples) {
            rs.trend.push_back({sample.n, project_affine(sample.x, w, candidates.kernel).distance,
                                max_edge_dev(sample.x)});
        }
        distances.push_back(rs.terminal_distance);
        devs.push_back(rs.terminal_max_edge_dev);
        stats.replicas.push_back(std::move(rs));
    }
    if (!distances.empty()) {
        stats.mean_distance = 0;
        stats.mean_max_edge_dev = 0;
        for (double d : distances) stats.mean_distance += d;
        for (double d : devs) stats.mean_max_edge_dev += d;
        stats.mean_distance /= distances.size();
        stats.mean_max_edge_dev /= devs.size();
        stats.median_distance = median_of(distances);
        stats.median_max_edge_dev = median_of(devs);
        stats.max_distance = *std::max_element(distances.begin(), distances.end());
        stats.max_max_edge_dev = *std::max_element(devs.begin(), devs.end());
    }
    return stats;
}

NoiseDiagnostics noise_diagnostics(const Hypergraph& h, std::uint64_t initial_total,
                                   const std::vector<NoiseSample>& log, int window_count) {
    const int m = h.vertex_count();
    NoiseDiagnostics diag;
    if (log.empty()) return diag;

    std::vector<double> running(m, 0.0);
    diag.martingale.reserve(log.size());
    for (const auto& sample : log) {
        double sum = 0, norm = 0;
        for (double c : sample.u) {
            sum += c;
            norm = std::max(norm, std::abs(c));
        }
        diag.max_abs_sum = std::max(diag.max_abs_sum, std::abs(sum));
        diag.max_norm = std::max(diag.max_norm, norm);

        double gamma = step_size(sample.n, initial_total, h.edge_count());
        diag.gamma_sq_sum += gamma * gamma;
        for (int i = 0; i < m; ++i) running[i] += gamma * sample.u[i];
        diag.sample_steps.push_back(sample.n);
        diag.martingale.push_back(running);
    }
    // sum_{n>=0} 1/(N0/N + n + 1)^2 < integral_{N0/N}^inf dx/x^2 = N/N0
    diag.gamma_sq_bound =
        static_cast<double>(h.edge_count()) / static_cast<double>(initial_total);

    window_count = std::max(1, std::min<int>(window_count, static_cast<int>(log.size())));
    size_t per = log.size() / window_count;
    for (int w = 0; w < window_count; ++w) {
        NoiseWindow win;
        win.begin = static_cast<size_t>(w) * per;
        win.end = (w == window_count - 1) ? log.size() : win.begin + per;
        size_t count = win.end - win.begin;
        win.mean.assign(m, 0.0);
        win.std_error.assign(m, 0.0);
        for (size_t s = win.begin; s < win.end; ++s) {
            for (int i = 0; i < m; ++i) win.mean[i] += log[s].u[i];
        }
        for (int i = 0; i < m; ++i) win.mean[i] /= static_cast<double>(count);
        for (size_t s = win.begin; s < win.end; ++s) {
            for (int i = 0; i < m; ++i) {
                double d = log[s].u[i] - win.mean[i];
                win.std_error[i] += d * d;
            }
        }
        for (int i = 0; i < m; ++i) {
            double variance = win.std_error[i] / std::max<size_t>(1, count - 1);
            win.std_error[i] = std::sqrt(variance / static_cast<double>(count));
            if (std::abs(win.mean[i]) > 4.0 * win.std_error[i]) ++diag.window_violations;
        }
        diag.windows.push_back(std::move(win));
    }
    return diag;
}

double martingale_oscillation(const NoiseDiagnostics& diag, std::uint64_t lo, std::uint64_t hi) {
    if (diag.martingale.empty()) return 0.0;
    const size_t m = diag.martingale.front().size();
    std::vector<double> min_v(m, std::numeric_limits<double>::infinity());
    std::vector<double> max_v(m, -std::numeric_limits<double>::infinity());
    bool any = false;
    for (size_t s = 0; s < diag.sample_steps.size(); ++s) {
        if (diag.sample_steps[s] < lo || diag.sample_steps[s] > hi) continue;
        any = true;
        for (size_t i = 0; i < m; ++i) {
            min_v[i] = std::min(min_v[i], diag.martingale[s][i]);
            max_v[i] = std::max(max_v[i], diag.martingale[s][i]);
        }
    }
    if (!any) return 0.0;
    double osc = 0;
    for (size_t i = 0; i < m; ++i) osc = std::max(osc, max_v[i] - min_v[i]);
    return osc;
}

}  // namespace polyurn

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

namespace evpos {

// Every randomized routine draws from its own stream, keyed by the global
// seed plus fixed integer tags, so results do not depend on the order in
// which independent checks run.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

    double uniform(double a, double b);
    double log_uniform(double lo, double hi);
    double angle();  // [0, 2*pi)
    long long uniform_int(long long a, long long b);  // inclusive
    bool bernoulli(double p);

private:
    std::mt19937_64 gen_;
};

struct SamplerConfig {
    long long sample_count = 20000;
    int restart_count = 32;
    double eps = 1e-9;
    bool compactify = true;  // map the open orthant onto a box for searches
    std::uint64_t seed = 0;
    bool chart_only = true;  // ambient-coordinate sampling is opt-in
    int k_max = 20;
    long long power_budget = 500000000;  // coefficient operations for power scans
};

struct OptimizationResult {
    std::vector<double> point;
    double value = 0.0;
    int evaluations = 0;
};

// Nelder-Mead descent clamped to a box.  Deterministic given the start.
OptimizationResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                        std::vector<double> start, double step, int max_iter,
                                        const std::vector<double>& lower,
                                        const std::vector<double>& upper);

// t in [0,1) -> s in [0, inf), s = t / (1 - t); used to search the closed
// orthant through a bounded box.
double decompactify(double t);

}  // namespace evpos

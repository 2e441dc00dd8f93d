#include "evpos/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evpos {

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::vector<std::uint32_t> material;
    material.push_back(static_cast<std::uint32_t>(seed));
    material.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (std::uint64_t t : tags) {
        material.push_back(static_cast<std::uint32_t>(t));
        material.push_back(static_cast<std::uint32_t>(t >> 32));
    }
    std::seed_seq seq(material.begin(), material.end());
    gen_.seed(seq);
}

double RngStream::uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(gen_);
}

double RngStream::log_uniform(double lo, double hi) {
    if (lo <= 0 || hi < lo) throw std::invalid_argument("bad log-uniform range");
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double RngStream::angle() {
    return uniform(0.0, 2.0 * std::numbers::pi);
}

long long RngStream::uniform_int(long long a, long long b) {
    return std::uniform_int_distribution<long long>(a, b)(gen_);
}

bool RngStream::bernoulli(double p) {
    return std::bernoulli_distribution(p)(gen_);
}

double decompactify(double t) {
    return t / (1.0 - t);
}

OptimizationResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                        std::vector<double> start, double step, int max_iter,
                                        const std::vector<double>& lower,
                                        const std::vector<double>& upper) {
    const std::size_t n = start.size();
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("bound vectors must match the dimension");
    OptimizationResult result;
    if (n == 0) {
        result.point = start;
        result.value = f(start);
        result.evaluations = 1;
        return result;
    }

    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    };
    int evals = 0;
    auto eval = [&](std::vector<double>& x) {
        clamp(x);
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    clamp(simplex[0]);
    values[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += (simplex[i + 1][i] + step <= upper[i]) ? step : -step;
        values[i + 1] = eval(simplex[i + 1]);
    }

    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::size_t> order(n + 1);

    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        double spread = values[order[n]] - values[order[0]];
        if (spread <= 1e-14 * (1.0 + std::abs(values[order[0]]))) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);

        const std::size_t worst = order[n];
        std::vector<double> reflected(n);
        for (std::size_t i = 0; i < n; ++i)
            reflected[i] = centroid[i] + alpha * (centroid[i] - simplex[worst][i]);
        double fr = eval(reflected);

        if (fr < values[order[0]]) {
            std::vector<double> expanded(n);
            for (std::size_t i = 0; i < n; ++i)
                expanded[i] = centroid[i] + gamma * (reflected[i] - centroid[i]);
            double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
        } else if (fr < values[order[n - 1]]) {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
        } else {
            std::vector<double> contracted(n);
            for (std::size_t i = 0; i < n; ++i)
                contracted[i] = centroid[i] + rho * (simplex[worst][i] - centroid[i]);
            double fc = eval(contracted);
            if (fc < values[worst]) {
                simplex[worst] = std::move(contracted);
                values[worst] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    std::size_t idx = order[k];
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[idx][i] = simplex[order[0]][i] +
                                          sigma * (simplex[idx][i] - simplex[order[0]][i]);
                    values[idx] = eval(simplex[idx]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    result.point = simplex[best];
    result.value = values[best];
    result.evaluations = evals;
    return result;
}

}  // namespace evpos

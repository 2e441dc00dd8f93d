#include "evpos/markov.hpp"

#include <limits>
#include <numeric>
#include <queue>

#include "evpos/sampling.hpp"

namespace evpos {

namespace {

constexpr std::uint64_t kTagBeta = 0x62657461;

void validate_entry(const LaurentPolynomial& p, int i, int j) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    for (const auto& [m, c] : p.terms()) {
        for (Int e : m)
            if (e < 0)
                throw std::invalid_argument("matrix entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") has a negative exponent");
        if (c < 0 || denominator(c) != 1)
            throw std::invalid_argument("matrix entry (" + std::to_string(i) + "," +
                                        std::to_string(j) +
                                        ") has a coefficient outside the nonnegative integers");
    }
}

std::vector<std::vector<int>> adjacency(const PolyMatrix& a) {
    const int d = a.size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!a.entry(i, j).is_zero()) adj[static_cast<std::size_t>(i)].push_back(j);
    return adj;
}

}  // namespace

PolyMatrix::PolyMatrix(int size, int nvars) : size_(size), nvars_(nvars) {
    if (size < 1) throw std::invalid_argument("matrix size must be at least 1");
    if (nvars < 0) throw std::invalid_argument("variable count must be nonnegative");
    entries_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size),
                    LaurentPolynomial::constant(nvars, 0));
}

PolyMatrix PolyMatrix::from_entries(std::vector<std::vector<LaurentPolynomial>> entries) {
    const int d = static_cast<int>(entries.size());
    if (d < 1) throw std::invalid_argument("matrix size must be at least 1");
    int nv = entries[0].empty() ? 0 : entries[0][0].nvars();
    PolyMatrix m(d, nv);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(entries[static_cast<std::size_t>(i)].size()) != d)
            throw std::invalid_argument("matrix is not square");
        for (int j = 0; j < d; ++j)
            m.set_entry(i, j, std::move(entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    return m;
}

const LaurentPolynomial& PolyMatrix::entry(int i, int j) const {
    if (i < 0 || i >= size_ || j < 0 || j >= size_)
        throw std::out_of_range("matrix index out of range");
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) +
                    static_cast<std::size_t>(j)];
}

void PolyMatrix::set_entry(int i, int j, LaurentPolynomial p) {
    if (i < 0 || i >= size_ || j < 0 || j >= size_)
        throw std::out_of_range("matrix index out of range");
    if (p.nvars() != nvars_)
        throw DimensionMismatchError("matrix entries must share one variable space");
    validate_entry(p, i, j);
    entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) +
             static_cast<std::size_t>(j)] = std::move(p);
}

Eigen::MatrixXd PolyMatrix::evaluate(const std::vector<double>& x) const {
    Eigen::MatrixXd m(size_, size_);
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j) m(i, j) = entry(i, j).evaluate<double>(x);
    return m;
}

bool is_irreducible(const PolyMatrix& a) {
    const int d = a.size();
    auto adj = adjacency(a);
    for (int start = 0; start < d; ++start) {
        std::vector<char> seen(static_cast<std::size_t>(d), 0);  // reachable by paths >= 1
        std::queue<int> q;
        for (int j : adj[static_cast<std::size_t>(start)])
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                q.push(j);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int j : adj[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    q.push(j);
                }
        }
        for (int j = 0; j < d; ++j)
            if (!seen[static_cast<std::size_t>(j)]) return false;
    }
    return true;
}

bool is_aperiodic(const PolyMatrix& a) {
    if (!is_irreducible(a)) throw std::invalid_argument("aperiodicity requires an irreducible matrix");
    const int d = a.size();
    auto adj = adjacency(a);

    std::vector<long long> level(static_cast<std::size_t>(d), -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int j : adj[static_cast<std::size_t>(u)])
            if (level[static_cast<std::size_t>(j)] < 0) {
                level[static_cast<std::size_t>(j)] = level[static_cast<std::size_t>(u)] + 1;
                q.push(j);
            }
    }
    long long g = 0;
    for (int u = 0; u < d; ++u)
        for (int j : adj[static_cast<std::size_t>(u)])
            g = std::gcd(g, level[static_cast<std::size_t>(u)] + 1 - level[static_cast<std::size_t>(j)]);
    return g == 1;
}

SpectralRadiusResult spectral_radius_at(const PolyMatrix& a, const std::vector<double>& x,
                                        double tol, int max_iter) {
    for (double xi : x)
        if (!(xi > 0)) throw std::invalid_argument("evaluation point must be positive");

    SpectralRadiusResult out;
    const int d = a.size();
    Eigen::MatrixXd m = a.evaluate(x);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!(m(i, j) >= 0)) throw std::invalid_argument("matrix evaluates to a negative entry");

    Eigen::VectorXd rowsum = m.rowwise().sum();
    out.gershgorin_lower = rowsum.minCoeff();
    out.gershgorin_upper = rowsum.maxCoeff();

    double shift = std::max(1.0, out.gershgorin_upper);
    Eigen::MatrixXd ms = m + shift * Eigen::MatrixXd::Identity(d, d);

    Eigen::VectorXd v = Eigen::VectorXd::Ones(d);
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = ms * v;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int i = 0; i < d; ++i) {
            double ratio = w(i) / v(i);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        out.iterations = it;
        out.value = 0.5 * (lo + hi) - shift;
        if (hi - lo <= tol * std::max(1.0, hi)) {
            out.converged = true;
            return out;
        }
        v = w / w.maxCoeff();
    }
    return out;
}

Verdict verify_beta_equals(const PolyMatrix& a, const LaurentPolynomial& beta, int sample_points,
                           double tol, std::uint64_t seed) {
    Verdict v;
    if (beta.nvars() != a.nvars())
        throw DimensionMismatchError("matrix and comparison polynomial use different variables");
    if (!is_irreducible(a)) {
        v.stats.note = "matrix is reducible; the spectral radius comparison still ran";
    }

    RngStream rng(seed, {kTagBeta});
    std::vector<double> x(static_cast<std::size_t>(a.nvars()));
    for (int p = 0; p < sample_points; ++p) {
        for (auto& xi : x) xi = rng.log_uniform(0.25, 4.0);
        SpectralRadiusResult sr = spectral_radius_at(a, x);
        double expected = beta.evaluate<double>(x);
        ++v.stats.samples;
        double err = std::abs(sr.value - expected) / std::max(1.0, std::abs(expected));
        v.stats.observe_margin_max(err);
        if (!sr.converged) {
            v.stats.note = "power iteration hit the iteration cap; value bracketed by row sums [" +
                           std::to_string(sr.gershgorin_lower) + ", " +
                           std::to_string(sr.gershgorin_upper) + "]";
            continue;
        }
        if (err > tol) {
            Witness w;
            w.kind = "spectral_radius_mismatch";
            w.real_point = x;
            w.lhs = sr.value;
            w.rhs = expected;
            w.margin = sr.value - expected;
            v.status = VerdictStatus::CounterexampleFound;
            v.witness = std::move(w);
            return v;
        }
    }

    if (a.size() == 1 && a.entry(0, 0) == beta) {
        v.status = VerdictStatus::CertifiedTrue;
        v.certificate = "1x1 matrix: the spectral radius function is the entry itself";
    }
    return v;
}

}  // namespace evpos

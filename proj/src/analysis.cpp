#include "evpos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "evpos/intlin.hpp"
#include "evpos/positivity.hpp"

namespace evpos {

namespace {

constexpr std::uint64_t kTagPD = 0x70646566;
constexpr std::uint64_t kTagMono = 0x6d6f6e6f;
constexpr std::uint64_t kTagPairs = 0x70616972;
constexpr std::uint64_t kTagHess = 0x68657373;

// Chart-normalized points closer than this (relative, coordinatewise) are
// treated as one orbit when screening pair candidates.
constexpr double kSameOrbitTol = 1e-6;
constexpr double kPairNearOrbitFloor = 1e-3;

std::vector<double> exp_coords(const std::vector<double>& t) {
    std::vector<double> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s[i] = std::exp(t[i]);
    return s;
}

double log_value(const LaurentPolynomial& f, const std::vector<double>& s) {
    double v = f.evaluate<double>(s);
    if (!(v > 0)) throw EvaluationDomainError("logarithm requires a positive value");
    return std::log(v);
}

// Leading principal minors of the log-Hessian, exact at a dyadic point.
// Entry (i,j) uses the same moment formula as log_hessian but in rational
// arithmetic throughout.
std::vector<Rational> exact_log_hessian_minors(const LaurentPolynomial& f,
                                               const std::vector<double>& s) {
    const int n = f.nvars();
    std::vector<Rational> sr;
    sr.reserve(s.size());
    for (double v : s) sr.push_back(exact_from_double(v));

    Rational fv = f.evaluate<Rational>(sr);
    if (fv <= 0) throw EvaluationDomainError("logarithm requires a positive value");

    std::vector<LaurentPolynomial> d1;
    d1.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d1.push_back(f.derivative(i));
    std::vector<Rational> d1v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d1v[static_cast<std::size_t>(i)] =
        d1[static_cast<std::size_t>(i)].evaluate<Rational>(sr);

    std::vector<std::vector<Rational>> J(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rational dij = d1[static_cast<std::size_t>(i)].derivative(j).evaluate<Rational>(sr);
            Rational entry = sr[static_cast<std::size_t>(i)] * sr[static_cast<std::size_t>(j)] *
                             (dij * fv - d1v[static_cast<std::size_t>(i)] *
                                             d1v[static_cast<std::size_t>(j)]) /
                             (fv * fv);
            if (i == j)
                entry += sr[static_cast<std::size_t>(i)] * d1v[static_cast<std::size_t>(i)] / fv;
            J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry;
            J[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = entry;
        }
    }

    std::vector<Rational> minors;
    minors.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            m[static_cast<std::size_t>(i)] =
                std::vector<Rational>(J[static_cast<std::size_t>(i)].begin(),
                                      J[static_cast<std::size_t>(i)].begin() + k);
        Rational det = 1;
        bool zero = false;
        for (int col = 0; col < k && !zero; ++col) {
            int piv = -1;
            for (int row = col; row < k; ++row)
                if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
                    piv = row;
                    break;
                }
            if (piv < 0) {
                zero = true;
                break;
            }
            if (piv != col) {
                std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
                det = -det;
            }
            Rational p = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            det *= p;
            for (int row = col + 1; row < k; ++row) {
                Rational factor = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / p;
                if (factor == 0) continue;
                for (int c2 = col; c2 < k; ++c2)
                    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)] -=
                        factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
            }
        }
        minors.push_back(zero ? Rational(0) : det);
    }
    return minors;
}

bool all_coefficients_positive(const LaurentPolynomial& f) {
    if (f.is_zero()) return false;
    for (const auto& [m, c] : f.terms())
        if (c <= 0) return false;
    return true;
}

IntMat support_differences(const LaurentPolynomial& f) {
    auto pts = f.support();
    IntMat diffs;
    if (pts.size() <= 1) return diffs;
    const ExponentVector& base = *pts.begin();
    for (auto it = std::next(pts.begin()); it != pts.end(); ++it) {
        IntVec row(it->size());
        for (std::size_t j = 0; j < it->size(); ++j) row[j] = (*it)[j] - base[j];
        diffs.push_back(std::move(row));
    }
    return diffs;
}

int support_affine_rank(const LaurentPolynomial& f) {
    IntMat diffs = support_differences(f);
    return diffs.empty() ? 0 : integer_rank(diffs);
}

}  // namespace

Eigen::MatrixXd log_hessian(const LaurentPolynomial& f, const std::vector<double>& s) {
    const int n = f.nvars();
    if (static_cast<int>(s.size()) != n)
        throw DimensionMismatchError("point has wrong number of coordinates");
    double fv = f.evaluate<double>(s);
    if (!(fv > 0)) throw EvaluationDomainError("logarithm requires a positive value");

    std::vector<LaurentPolynomial> d1;
    d1.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d1.push_back(f.derivative(i));
    std::vector<double> d1v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        d1v[static_cast<std::size_t>(i)] = d1[static_cast<std::size_t>(i)].evaluate<double>(s);

    Eigen::MatrixXd J(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double dij = d1[static_cast<std::size_t>(i)].derivative(j).evaluate<double>(s);
            double entry = s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)] *
                           (dij * fv -
                            d1v[static_cast<std::size_t>(i)] * d1v[static_cast<std::size_t>(j)]) /
                           (fv * fv);
            if (i == j) entry += s[static_cast<std::size_t>(i)] * d1v[static_cast<std::size_t>(i)] / fv;
            J(i, j) = entry;
            J(j, i) = entry;
        }
    }
    return J;
}

Eigen::MatrixXd log_hessian_exp_coords(const LaurentPolynomial& f, const std::vector<double>& t) {
    const int n = f.nvars();
    if (static_cast<int>(t.size()) != n)
        throw DimensionMismatchError("point has wrong number of coordinates");
    std::vector<double> s = exp_coords(t);
    double fv = f.evaluate<double>(s);
    if (!(fv > 0)) throw EvaluationDomainError("logarithm requires a positive value");

    // Second route: apply the operator theta_i = x_i d/dx_i symbolically
    // twice, then use d^2 log f / dt_i dt_j = (theta_j theta_i f * f -
    // theta_i f * theta_j f) / f^2.
    auto theta = [&](const LaurentPolynomial& g, int i) {
        return LaurentPolynomial::variable(g.nvars(), i) * g.derivative(i);
    };
    std::vector<LaurentPolynomial> th;
    th.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) th.push_back(theta(f, i));
    std::vector<double> thv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        thv[static_cast<std::size_t>(i)] = th[static_cast<std::size_t>(i)].evaluate<double>(s);

    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double second = theta(th[static_cast<std::size_t>(i)], j).evaluate<double>(s);
            double entry = (second * fv -
                            thv[static_cast<std::size_t>(i)] * thv[static_cast<std::size_t>(j)]) /
                           (fv * fv);
            H(i, j) = entry;
            H(j, i) = entry;
        }
    }
    return H;
}

Eigen::MatrixXd log_hessian_finite_difference(const LaurentPolynomial& f,
                                              const std::vector<double>& t, double h) {
    const int n = f.nvars();
    if (static_cast<int>(t.size()) != n)
        throw DimensionMismatchError("point has wrong number of coordinates");
    auto g = [&](const std::vector<double>& tt) { return log_value(f, exp_coords(tt)); };
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::vector<double> pp = t, pm = t, mp = t, mm = t;
            pp[static_cast<std::size_t>(i)] += h;
            pp[static_cast<std::size_t>(j)] += h;
            pm[static_cast<std::size_t>(i)] += h;
            pm[static_cast<std::size_t>(j)] -= h;
            mp[static_cast<std::size_t>(i)] -= h;
            mp[static_cast<std::size_t>(j)] += h;
            mm[static_cast<std::size_t>(i)] -= h;
            mm[static_cast<std::size_t>(j)] -= h;
            double entry = (g(pp) - g(pm) - g(mp) + g(mm)) / (4.0 * h * h);
            H(i, j) = entry;
            H(j, i) = entry;
        }
    }
    return H;
}

bool lattice_span_check(const LaurentPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("span test needs a nonzero polynomial");
    const int n = f.nvars();
    if (n == 0) return true;
    IntMat diffs = support_differences(f);
    if (diffs.empty()) return false;
    auto diag = smith_diagonal(diffs);
    if (static_cast<int>(diag.size()) != n) return false;
    for (const auto& d : diag)
        if (d != 1) return false;
    return true;
}

Verdict check_positive_definite_on_samples(const LaurentPolynomial& f, const SamplerConfig& cfg) {
    Verdict v;
    if (f.is_zero()) throw std::invalid_argument("positive definiteness needs a nonzero polynomial");
    const int n = f.nvars();
    if (n == 0) {
        v.status = VerdictStatus::CertifiedTrue;
        v.certificate = "empty matrix";
        return v;
    }
    if (support_affine_rank(f) < n) {
        v.stats.note =
            "support differences do not span the full space; the log-Hessian is singular by "
            "construction and the positive definiteness hypothesis does not apply";
        return v;
    }
    if (all_coefficients_positive(f)) {
        v.status = VerdictStatus::CertifiedTrue;
        v.certificate =
            "covariance form of a positive weight distribution whose support spans the full space";
        return v;
    }

    RngStream rng(cfg.seed, {kTagPD});
    std::vector<double> s(static_cast<std::size_t>(n));
    for (long long it = 0; it < cfg.sample_count; ++it) {
        for (auto& si : s) si = rng.log_uniform(1e-2, 1e2);
        if (!(f.evaluate<double>(s) > 0)) {
            ++v.stats.skipped_excluded;  // outside the log domain
            continue;
        }
        ++v.stats.samples;
        Eigen::MatrixXd J = log_hessian(f, s);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
        double lmin = es.eigenvalues().minCoeff();
        v.stats.observe_margin(lmin);
        double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
        if (lmin >= -1e-12 * scale) {
            if (lmin <= 1e-12 * scale) ++v.stats.borderline;
            continue;
        }
        auto minors = exact_log_hessian_minors(f, s);
        int bad = -1;
        for (std::size_t k = 0; k < minors.size(); ++k)
            if (minors[k] <= 0) {
                bad = static_cast<int>(k) + 1;
                break;
            }
        if (bad < 0) {
            ++v.stats.borderline;  // float artifact, matrix is PD after all
            continue;
        }
        Witness w;
        w.kind = "log_hessian_not_positive_definite";
        w.real_point = s;
        w.margin = lmin;
        w.exact_value = rational_to_string(minors[static_cast<std::size_t>(bad - 1)]);
        w.lhs = to_double(minors[static_cast<std::size_t>(bad - 1)]);
        w.ray = bad;  // order of the nonpositive leading principal minor
        v.status = VerdictStatus::CounterexampleFound;
        v.witness = std::move(w);
        return v;
    }
    return v;
}

Verdict check_monotone_logconvex(const LaurentPolynomial& f, const SamplerConfig& cfg) {
    Verdict v;
    if (f.is_zero()) throw std::invalid_argument("property checks need a nonzero polynomial");
    for (const auto& [m, c] : f.terms())
        for (Int e : m)
            if (e < 0) throw std::invalid_argument("inputs must have nonnegative exponents");
    const int n = f.nvars();
    if (n == 0) {
        v.stats.note = "vacuous for constants";
        return v;
    }

    RngStream rng(cfg.seed, {kTagMono});
    for (long long it = 0; it < cfg.sample_count; ++it) {
        std::vector<Rational> s, ratio, mid, outer;
        std::vector<double> sd(static_cast<std::size_t>(n)), rd(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            sd[static_cast<std::size_t>(i)] = rng.log_uniform(0.1, 10.0);
            rd[static_cast<std::size_t>(i)] = rng.uniform(1.1, 2.0);
        }
        for (int i = 0; i < n; ++i) {
            s.push_back(exact_from_double(sd[static_cast<std::size_t>(i)]));
            ratio.push_back(exact_from_double(rd[static_cast<std::size_t>(i)]));
            mid.push_back(s.back() * ratio.back());
            outer.push_back(s.back() * ratio.back() * ratio.back());
        }
        ++v.stats.samples;

        // Prefix monotonicity: turning on one more coordinate must strictly
        // increase the value.
        std::vector<Rational> prefix(static_cast<std::size_t>(n), Rational(0));
        Rational prev = f.evaluate<Rational>(prefix);
        for (int k = 0; k < n; ++k) {
            prefix[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)];
            Rational cur = f.evaluate<Rational>(prefix);
            v.stats.observe_margin(to_double(cur - prev));
            if (cur <= prev) {
                Witness w;
                w.kind = "prefix_monotonicity_violated";
                w.real_point = sd;
                w.ray = k;
                w.exact_value = rational_to_string(cur - prev);
                w.lhs = to_double(prev);
                w.rhs = to_double(cur);
                w.margin = to_double(cur - prev);
                v.status = VerdictStatus::CounterexampleFound;
                v.witness = std::move(w);
                return v;
            }
            prev = cur;
        }

        // Geometric-midpoint log-convexity with rational midpoints.
        Rational fm = f.evaluate<Rational>(mid);
        Rational flo = f.evaluate<Rational>(s);
        Rational fhi = f.evaluate<Rational>(outer);
        Rational lhs = fm * fm;
        Rational rhs = flo * fhi;
        v.stats.observe_margin(to_double(rhs - lhs));
        if (lhs >= rhs) {
            if (lhs == rhs) {
                ++v.stats.borderline;
                if (v.stats.note.empty())
                    v.stats.note = "geometric midpoint equality observed (degenerate direction)";
                continue;
            }
            Witness w;
            w.kind = "geometric_midpoint_logconvexity_violated";
            w.real_point = sd;
            w.exact_value = rational_to_string(lhs - rhs);
            w.lhs = to_double(lhs);
            w.rhs = to_double(rhs);
            w.margin = to_double(lhs - rhs);
            v.status = VerdictStatus::CounterexampleFound;
            v.witness = std::move(w);
            return v;
        }
    }
    return v;
}

Verdict check_pairwise_cauchy_schwarz(const HomogenizedPolynomial& hp, const SamplerConfig& cfg) {
    Verdict v;
    bool positive = true;
    for (const auto& t : hp.terms())
        if (t.coeff <= 0) positive = false;
    if (positive) {
        v.status = VerdictStatus::CertifiedTrue;
        v.certificate = "sesquilinear form with positive weights";
        return v;
    }

    const NormalFan& fan = hp.fan();
    const int n = fan.dimension();
    const int cones = static_cast<int>(fan.cones().size());
    RelationLattice rel = relation_lattice(fan);
    RngStream rng(cfg.seed, {kTagPairs});

    auto sample_chart_point = [&]() {
        std::vector<Complex> w(static_cast<std::size_t>(n));
        for (auto& wi : w) wi = std::polar(std::exp(rng.uniform(-3.0, 3.0)), rng.angle());
        return w;
    };

    for (long long it = 0; it < cfg.sample_count; ++it) {
        int si = static_cast<int>(it % cones);
        std::vector<Complex> za = chart_embedding(fan, si, sample_chart_point());
        std::vector<Complex> zb;
        if (rng.bernoulli(0.15)) {
            // Same-orbit pair through a unitary group element: must land in
            // the skip branch via chart comparison.
            std::vector<Complex> params(rel.basis.size());
            for (auto& pj : params) pj = Complex(0.0, rng.uniform(-std::numbers::pi, std::numbers::pi));
            std::vector<Complex> g = group_element(rel, params);
            zb = za;
            for (std::size_t r = 0; r < zb.size(); ++r) zb[r] *= g[r];
        } else {
            zb = chart_embedding(fan, si, sample_chart_point());
        }
        ++v.stats.samples;

        Complex fab = hp.polarized(za, zb);
        double faa = hp.polarized(za, za).real();
        double fbb = hp.polarized(zb, zb).real();
        double lhs = std::norm(fab);
        double rhs = faa * fbb;
        double ratio = rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        if (std::isfinite(ratio)) v.stats.observe_margin_max(ratio);
        if (ratio < 1.0 - cfg.eps) continue;

        auto na = normalize_to_chart(fan, si, za);
        auto nb = normalize_to_chart(fan, si, zb);
        double dist = 0.0;
        for (std::size_t j = 0; j < na.chart_point.size(); ++j)
            dist = std::max(dist, std::abs(na.chart_point[j] - nb.chart_point[j]) /
                                      (1.0 + std::abs(na.chart_point[j])));
        if (dist < kSameOrbitTol) {
            ++v.stats.skipped_excluded;
            continue;
        }
        if (dist < kPairNearOrbitFloor) {
            ++v.stats.near_orbit_discards;
            continue;
        }

        std::vector<QComplex> qa(za.size()), qb(zb.size());
        for (std::size_t r = 0; r < za.size(); ++r) {
            qa[r] = QComplex(Quad(za[r].real()), Quad(za[r].imag()));
            qb[r] = QComplex(Quad(zb[r].real()), Quad(zb[r].imag()));
        }
        QComplex fabq = hp.polarized(qa, qb);
        Quad lhsq = fabq.re * fabq.re + fabq.im * fabq.im;
        Quad rhsq = hp.polarized(qa, qa).re * hp.polarized(qb, qb).re;

        Witness w;
        w.point = za;
        w.point_b = zb;
        w.cone = si;
        w.orbit_residual = dist;
        if (rhsq <= 0) {
            w.kind = "gram_diagonal_nonpositive";
            w.lhs = static_cast<double>(lhsq);
            w.rhs = static_cast<double>(rhsq);
            w.margin = w.rhs;
        } else {
            Quad rq = lhsq / rhsq;
            if (rq < Quad(1) - Quad(cfg.eps)) {
                ++v.stats.borderline;
                continue;
            }
            w.kind = "pairwise_modulus_bound_violated";
            w.lhs = static_cast<double>(lhsq);
            w.rhs = static_cast<double>(rhsq);
            w.margin = static_cast<double>(rq - Quad(1));
            w.equality_type = (rq <= Quad(1) + Quad(1e-7));
        }
        v.status = VerdictStatus::CounterexampleFound;
        v.witness = std::move(w);
        return v;
    }
    return v;
}

double hessian_consistency_sample(const LaurentPolynomial& f, std::uint64_t seed, int points) {
    const int n = f.nvars();
    RngStream rng(seed, {kTagHess});
    double worst = 0.0;
    for (int p = 0; p < points; ++p) {
        std::vector<double> t(static_cast<std::size_t>(n));
        bool ok = false;
        for (int tries = 0; tries < 100 && !ok; ++tries) {
            for (auto& ti : t) ti = rng.uniform(-1.5, 1.5);
            ok = f.evaluate<double>(exp_coords(t)) > 0;
        }
        if (!ok) continue;
        Eigen::MatrixXd A = log_hessian(f, exp_coords(t));
        Eigen::MatrixXd B = log_hessian_exp_coords(f, t);
        Eigen::MatrixXd C = log_hessian_finite_difference(f, t);
        double scale = 1.0 + A.cwiseAbs().maxCoeff();
        double dev = std::max((A - B).cwiseAbs().maxCoeff(), (A - C).cwiseAbs().maxCoeff());
        worst = std::max(worst, dev / scale);
    }
    return worst;
}

}  // namespace evpos

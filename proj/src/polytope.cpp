#include "evpos/polytope.hpp"

#include <algorithm>
#include <set>

namespace evpos {

namespace {

IntMat difference_rows(const std::vector<ExponentVector>& pts, const ExponentVector& base) {
    IntMat rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) {
        if (p == base) continue;
        IntVec d(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) d[i] = p[i] - base[i];
        rows.push_back(std::move(d));
    }
    return rows;
}

BigInt dot(const IntVec& u, const ExponentVector& m) {
    BigInt s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += BigInt(u[i]) * m[i];
    return s;
}

// 2-d convex hull, counterclockwise, via the monotone chain; input sorted lex.
std::vector<ExponentVector> hull_2d(const std::vector<ExponentVector>& pts) {
    auto cross = [](const ExponentVector& o, const ExponentVector& a, const ExponentVector& b) {
        return BigInt(a[0] - o[0]) * (b[1] - o[1]) - BigInt(a[1] - o[1]) * (b[0] - o[0]);
    };
    std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<ExponentVector> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Enumerates size-k index subsets in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

LatticePolytope LatticePolytope::from_points(int n, std::vector<ExponentVector> points) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be positive");
    if (points.empty()) throw std::invalid_argument("no points given");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n)
            throw DimensionMismatchError("point has wrong dimension");

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    LatticePolytope P;
    P.n_ = n;
    P.points_ = std::move(points);
    P.affine_dim_ = integer_rank(difference_rows(P.points_, P.points_[0]));
    if (P.affine_dim_ == 0) P.vertices_ = P.points_;
    if (P.full_dimensional()) {
        P.compute_facets();
        P.compute_vertices();
    }
    return P;
}

void LatticePolytope::require_full_dimensional(const char* what) const {
    if (!full_dimensional())
        throw DegenerateInputError(std::string(what) + ": polytope has affine dimension " +
                                       std::to_string(affine_dim_) + " < ambient dimension " +
                                       std::to_string(n_),
                                   affine_dim_, n_);
}

void LatticePolytope::compute_facets() {
    std::set<Facet> found;
    const std::size_t n = static_cast<std::size_t>(n_);

    if (n_ == 1) {
        Int lo = points_.front()[0], hi = points_.back()[0];
        found.insert(Facet{{1}, -lo});
        found.insert(Facet{{-1}, hi});
    } else if (n_ == 2) {
        auto hull = hull_2d(points_);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const auto& a = hull[i];
            const auto& b = hull[(i + 1) % hull.size()];
            IntVec normal = primitive({-(b[1] - a[1]), b[0] - a[0]});
            // interior lies to the left of a->b, so this normal points inward
            Int offset = -(normal[0] * a[0] + normal[1] * a[1]);
            found.insert(Facet{std::move(normal), offset});
        }
    } else {
        // Every facet contains n affinely independent support points, so it
        // shows up as the affine span of some n-subset.
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        do {
            IntMat diffs;
            for (std::size_t i = 1; i < n; ++i) {
                IntVec d(n);
                for (std::size_t j = 0; j < n; ++j)
                    d[j] = points_[idx[i]][j] - points_[idx[0]][j];
                diffs.push_back(std::move(d));
            }
            if (integer_rank(diffs) != n_ - 1) continue;
            IntMat kernel = integer_kernel_basis(diffs, n_);
            if (kernel.size() != 1) continue;
            IntVec u = primitive(kernel[0]);
            BigInt c = dot(u, points_[idx[0]]);
            bool all_ge = true, all_le = true;
            for (const auto& m : points_) {
                BigInt v = dot(u, m);
                if (v < c) all_ge = false;
                if (v > c) all_le = false;
                if (!all_ge && !all_le) break;
            }
            Int cs = c.convert_to<Int>();
            if (all_ge)
                found.insert(Facet{u, -cs});
            else if (all_le) {
                IntVec w(u.size());
                for (std::size_t j = 0; j < u.size(); ++j) w[j] = -u[j];
                found.insert(Facet{std::move(w), cs});
            }
        } while (next_combination(idx, points_.size()));
    }
    facets_.assign(found.begin(), found.end());
}

void LatticePolytope::compute_vertices() {
    vertices_.clear();
    for (const auto& m : points_) {
        IntMat active;
        for (const auto& f : facets_)
            if (dot(f.normal, m) == -f.offset) active.push_back(f.normal);
        if (static_cast<int>(active.size()) >= n_ && integer_rank(active) == n_)
            vertices_.push_back(m);
    }
}

const std::vector<Facet>& LatticePolytope::facets() const {
    require_full_dimensional("facet presentation");
    return facets_;
}

const std::vector<ExponentVector>& LatticePolytope::vertices() const {
    if (affine_dim_ != 0) require_full_dimensional("vertex enumeration");
    return vertices_;
}

bool LatticePolytope::contains(const ExponentVector& m) const {
    if (static_cast<int>(m.size()) != n_)
        throw DimensionMismatchError("point has wrong dimension");
    if (affine_dim_ == 0) return m == points_[0];
    require_full_dimensional("membership test");
    for (const auto& f : facets_)
        if (dot(f.normal, m) < -f.offset) return false;
    return true;
}

std::vector<ExponentVector> LatticePolytope::lattice_points() const {
    if (affine_dim_ == 0) return points_;
    require_full_dimensional("lattice point enumeration");
    ExponentVector lo = vertices_[0], hi = vertices_[0];
    for (const auto& v : vertices_)
        for (std::size_t i = 0; i < v.size(); ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<ExponentVector> out;
    ExponentVector m = lo;
    while (true) {
        if (contains(m)) out.push_back(m);
        std::size_t i = m.size();
        while (i-- > 0) {
            if (m[i] < hi[i]) {
                ++m[i];
                for (std::size_t j = i + 1; j < m.size(); ++j) m[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
    }
}

LatticePolytope LatticePolytope::dilate(Int k) const {
    if (k < 1) throw std::invalid_argument("dilation factor must be positive");
    LatticePolytope P;
    P.n_ = n_;
    P.affine_dim_ = affine_dim_;
    auto scale = [k](const std::vector<ExponentVector>& pts) {
        std::vector<ExponentVector> out = pts;
        for (auto& p : out)
            for (auto& x : p) x *= k;
        return out;
    };
    P.points_ = scale(full_dimensional() || affine_dim_ == 0 ? vertices_ : points_);
    P.vertices_ = scale(vertices_);
    P.facets_ = facets_;
    for (auto& f : P.facets_) f.offset *= k;
    return P;
}

std::vector<IntVec> LatticePolytope::vertex_edge_directions(const ExponentVector& v) const {
    auto neighbors = vertex_edge_neighbors(v);
    std::vector<IntVec> dirs;
    dirs.reserve(neighbors.size());
    for (const auto& w : neighbors) {
        IntVec d(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) d[i] = w[i] - v[i];
        dirs.push_back(primitive(d));
    }
    return dirs;
}

std::vector<ExponentVector> LatticePolytope::vertex_edge_neighbors(const ExponentVector& v) const {
    require_full_dimensional("edge enumeration");
    if (std::find(vertices_.begin(), vertices_.end(), v) == vertices_.end())
        throw std::invalid_argument("not a vertex of the polytope");

    auto active_facets = [&](const ExponentVector& m) {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (dot(facets_[i].normal, m) == -facets_[i].offset) act.push_back(i);
        return act;
    };
    auto va = active_facets(v);

    std::vector<ExponentVector> out;
    for (const auto& w : vertices_) {
        if (w == v) continue;
        auto wa = active_facets(w);
        IntMat common;
        std::size_t i = 0, j = 0;
        while (i < va.size() && j < wa.size()) {
            if (va[i] == wa[j]) {
                common.push_back(facets_[va[i]].normal);
                ++i;
                ++j;
            } else if (va[i] < wa[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        // v and w span an edge iff their common active normals cut out a line
        if (integer_rank(common) == n_ - 1) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<SmoothnessObstruction> LatticePolytope::smoothness_obstruction() const {
    require_full_dimensional("smoothness test");
    for (const auto& v : vertices_) {
        auto dirs = vertex_edge_directions(v);
        if (static_cast<int>(dirs.size()) != n_)
            return SmoothnessObstruction{v, 0, static_cast<int>(dirs.size())};
        BigInt det = integer_determinant(dirs);
        if (det != 1 && det != -1)
            return SmoothnessObstruction{v, det, static_cast<int>(dirs.size())};
    }
    return std::nullopt;
}

LatticePolytope newton_polytope(const LaurentPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no Newton polytope");
    auto supp = p.support();
    return LatticePolytope::from_points(p.nvars(),
                                        std::vector<ExponentVector>(supp.begin(), supp.end()));
}

}  // namespace evpos

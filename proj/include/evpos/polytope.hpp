#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evpos/intlin.hpp"
#include "evpos/laurent.hpp"

namespace evpos {

// Inequality <m, normal> >= -offset with primitive inward normal.
struct Facet {
    IntVec normal;
    Int offset;

    friend bool operator==(const Facet&, const Facet&) = default;
    friend auto operator<=>(const Facet& a, const Facet& b) {
        if (auto c = a.normal <=> b.normal; c != 0) return c;
        return a.offset <=> b.offset;
    }
};

struct SmoothnessObstruction {
    ExponentVector vertex;
    BigInt edge_determinant;  // 0 when the edge count is already wrong
    int edge_count = 0;
};

class DegenerateInputError : public std::runtime_error {
public:
    DegenerateInputError(const std::string& msg, int affine_dim, int ambient_dim)
        : std::runtime_error(msg), affine_dim(affine_dim), ambient_dim(ambient_dim) {}
    int affine_dim;
    int ambient_dim;
};

class NonSmoothError : public std::runtime_error {
public:
    NonSmoothError(const std::string& msg, SmoothnessObstruction obstruction)
        : std::runtime_error(msg), obstruction(std::move(obstruction)) {}
    SmoothnessObstruction obstruction;
};

// Convex hull of finitely many lattice points, held exactly.  Facets and
// vertices are only materialized for full-dimensional polytopes; the affine
// dimension is always available.
class LatticePolytope {
public:
    static LatticePolytope from_points(int n, std::vector<ExponentVector> points);

    int ambient_dimension() const { return n_; }
    int affine_dimension() const { return affine_dim_; }
    bool full_dimensional() const { return affine_dim_ == n_; }

    const std::vector<ExponentVector>& generating_points() const { return points_; }

    // <m, u_F> >= -a_F presentation, sorted lexicographically.
    const std::vector<Facet>& facets() const;
    const std::vector<ExponentVector>& vertices() const;

    bool contains(const ExponentVector& m) const;

    // All lattice points of the polytope.  Supported for full-dimensional
    // polytopes and for single points.
    std::vector<ExponentVector> lattice_points() const;

    LatticePolytope dilate(Int k) const;

    // Vertices adjacent to v along an edge, sorted.
    std::vector<ExponentVector> vertex_edge_neighbors(const ExponentVector& v) const;

    // Primitive edge directions out of v.
    std::vector<IntVec> vertex_edge_directions(const ExponentVector& v) const;

    // nullopt iff at every vertex the primitive edge directions form a basis
    // of the integer lattice.
    std::optional<SmoothnessObstruction> smoothness_obstruction() const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.n_ == b.n_ && a.affine_dim_ == b.affine_dim_ && a.vertices_ == b.vertices_ &&
               (a.full_dimensional() ? a.facets_ == b.facets_ : a.points_ == b.points_);
    }

private:
    LatticePolytope() = default;
    void require_full_dimensional(const char* what) const;
    void compute_facets();
    void compute_vertices();

    int n_ = 0;
    int affine_dim_ = -1;
    std::vector<ExponentVector> points_;
    std::vector<Facet> facets_;
    std::vector<ExponentVector> vertices_;
};

// Hull of the support.  The zero polynomial has no Newton polytope.
LatticePolytope newton_polytope(const LaurentPolynomial& p);

}  // namespace evpos

#include "evpos/fan.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace evpos {

namespace {

BigInt dot(const IntVec& u, const ExponentVector& m) {
    BigInt s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += BigInt(u[i]) * m[i];
    return s;
}

template <typename ZVec>
bool in_irrelevant_set_impl(const NormalFan& fan, const ZVec& z) {
    if (static_cast<int>(z.size()) != fan.ray_count())
        throw DimensionMismatchError("point has wrong number of ray coordinates");
    for (const auto& cone : fan.cones()) {
        bool off_cone_zero = false;
        std::size_t next = 0;
        for (int r = 0; r < fan.ray_count(); ++r) {
            if (next < cone.rays.size() && cone.rays[next] == r) {
                ++next;
                continue;
            }
            if (z[static_cast<std::size_t>(r)] == typename ZVec::value_type(0)) {
                off_cone_zero = true;
                break;
            }
        }
        if (!off_cone_zero) return false;
    }
    return true;
}

}  // namespace

NormalFan build_normal_fan(const LatticePolytope& P) {
    if (!P.full_dimensional())
        throw DegenerateInputError("normal fan requires a full-dimensional polytope; affine dimension is " +
                                       std::to_string(P.affine_dimension()),
                                   P.affine_dimension(), P.ambient_dimension());
    if (auto obs = P.smoothness_obstruction()) {
        std::string msg = "polytope is not smooth at vertex (";
        for (std::size_t i = 0; i < obs->vertex.size(); ++i)
            msg += (i ? "," : "") + std::to_string(obs->vertex[i]);
        msg += "): ";
        if (obs->edge_count != P.ambient_dimension())
            msg += std::to_string(obs->edge_count) + " edge directions";
        else
            msg += "edge direction determinant " + obs->edge_determinant.str();
        throw NonSmoothError(msg, *obs);
    }

    NormalFan fan;
    fan.n_ = P.ambient_dimension();
    fan.rays_ = P.facets();
    for (const auto& v : P.vertices()) {
        MaximalCone cone;
        cone.vertex = v;
        for (std::size_t i = 0; i < fan.rays_.size(); ++i)
            if (dot(fan.rays_[i].normal, v) == -fan.rays_[i].offset)
                cone.rays.push_back(static_cast<int>(i));
        fan.cones_.push_back(std::move(cone));
    }
    return fan;
}

bool NormalFan::ray_in_cone(int cone_index, int ray_index) const {
    const auto& c = cone(cone_index);
    return std::binary_search(c.rays.begin(), c.rays.end(), ray_index);
}

IntVec distinguished_point(const NormalFan& fan, int cone_index) {
    const MaximalCone& c = fan.cone(cone_index);
    IntVec e(static_cast<std::size_t>(fan.ray_count()), 1);
    for (int r : c.rays) e[static_cast<std::size_t>(r)] = 0;
    return e;
}

bool in_irrelevant_set(const NormalFan& fan, const std::vector<Complex>& z) {
    return in_irrelevant_set_impl(fan, z);
}

bool in_irrelevant_set(const NormalFan& fan, const std::vector<double>& z) {
    return in_irrelevant_set_impl(fan, z);
}

RelationLattice relation_lattice(const NormalFan& fan) {
    // Rows of the constraint matrix are the coordinates of the rays: b is in
    // the lattice iff sum_rho b_rho u_rho = 0.
    IntMat constraint(static_cast<std::size_t>(fan.dimension()),
                      IntVec(static_cast<std::size_t>(fan.ray_count()), 0));
    for (int r = 0; r < fan.ray_count(); ++r)
        for (int i = 0; i < fan.dimension(); ++i)
            constraint[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] =
                fan.ray(r).normal[static_cast<std::size_t>(i)];

    IntMat ray_rows;
    for (int r = 0; r < fan.ray_count(); ++r) ray_rows.push_back(fan.ray(r).normal);
    for (const auto& d : smith_diagonal(ray_rows))
        if (d != 1)
            throw std::runtime_error("ray lattice has torsion quotient (Smith invariant " +
                                     d.str() + "); fan is not the normal fan of a smooth polytope");

    RelationLattice L;
    L.ray_count = fan.ray_count();
    L.basis = integer_kernel_basis(constraint, fan.ray_count());
    return L;
}

std::vector<double> positive_group_element(const RelationLattice& lattice,
                                           const std::vector<double>& params) {
    if (params.size() != lattice.basis.size())
        throw DimensionMismatchError("parameter count differs from the relation basis size");
    std::vector<double> g(static_cast<std::size_t>(lattice.ray_count), 1.0);
    for (std::size_t r = 0; r < g.size(); ++r) {
        double t = 0;
        for (std::size_t j = 0; j < params.size(); ++j)
            t += params[j] * static_cast<double>(lattice.basis[j][r]);
        g[r] = std::exp(t);
    }
    return g;
}

std::vector<Complex> group_element(const RelationLattice& lattice,
                                   const std::vector<Complex>& log_params) {
    if (log_params.size() != lattice.basis.size())
        throw DimensionMismatchError("parameter count differs from the relation basis size");
    std::vector<Complex> g(static_cast<std::size_t>(lattice.ray_count), Complex(1.0, 0.0));
    for (std::size_t r = 0; r < g.size(); ++r) {
        Complex t(0.0, 0.0);
        for (std::size_t j = 0; j < log_params.size(); ++j)
            t += log_params[j] * static_cast<double>(lattice.basis[j][r]);
        g[r] = std::exp(t);
    }
    return g;
}

ChartNormalization normalize_to_chart(const NormalFan& fan, int cone_index,
                                      const std::vector<Complex>& z) {
    if (static_cast<int>(z.size()) != fan.ray_count())
        throw DimensionMismatchError("point has wrong number of ray coordinates");
    const MaximalCone& cone = fan.cone(cone_index);
    const int n = fan.dimension();

    // Want g in the relation subgroup with g_rho z_rho = 1 off the cone.
    // Off-cone factors are forced: g_rho = 1/z_rho.  Writing g = exp over
    // rays, the relation sum_rho (log g_rho) u_rho = 0 then determines the
    // cone factors uniquely because the cone's rays form a lattice basis.
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    std::vector<Complex> log_g(z.size(), Complex(0.0, 0.0));

    for (int j = 0; j < n; ++j) {
        int r = cone.rays[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i)
            A(i, j) = Complex(static_cast<double>(fan.ray(r).normal[static_cast<std::size_t>(i)]), 0.0);
    }
    std::size_t next = 0;
    for (int r = 0; r < fan.ray_count(); ++r) {
        if (next < cone.rays.size() && cone.rays[next] == r) {
            ++next;
            continue;
        }
        const Complex& zr = z[static_cast<std::size_t>(r)];
        if (zr == Complex(0.0, 0.0))
            throw EvaluationDomainError("point has a zero coordinate off the chart's cone");
        Complex lg = -std::log(zr);  // principal branch
        log_g[static_cast<std::size_t>(r)] = lg;
        for (int i = 0; i < n; ++i)
            rhs(i) -= lg * static_cast<double>(fan.ray(r).normal[static_cast<std::size_t>(i)]);
    }
    Eigen::VectorXcd lambda = A.partialPivLu().solve(rhs);

    ChartNormalization result;
    result.group_factor.resize(z.size());
    for (int j = 0; j < n; ++j)
        log_g[static_cast<std::size_t>(cone.rays[static_cast<std::size_t>(j)])] = lambda(j);
    for (std::size_t r = 0; r < z.size(); ++r) result.group_factor[r] = std::exp(log_g[r]);
    result.chart_point.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::size_t r = static_cast<std::size_t>(cone.rays[static_cast<std::size_t>(j)]);
        result.chart_point[static_cast<std::size_t>(j)] = result.group_factor[r] * z[r];
    }
    return result;
}

OrbitTestResult in_unitary_orbit_of_orthant(const NormalFan& fan, const std::vector<Complex>& z,
                                            double eps) {
    if (static_cast<int>(z.size()) != fan.ray_count())
        throw DimensionMismatchError("point has wrong number of ray coordinates");
    constexpr double two_pi = 2.0 * std::numbers::pi;

    // z = u * x with u unitary in the relation subgroup and x >= 0 iff the
    // phases theta_rho of the nonzero coordinates extend (freely on the zero
    // ones) to a solution of sum_rho theta_rho u_rho in 2*pi*Z^n.  Projecting
    // away the span of the free rays' normals, that holds iff <d, w> lies in
    // 2*pi*Z for every integer w orthogonal to all free rays, where d is the
    // phase-weighted sum of the constrained normals.
    const int n = fan.dimension();
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    IntMat free_rows;
    for (int r = 0; r < fan.ray_count(); ++r) {
        const Complex& zr = z[static_cast<std::size_t>(r)];
        if (zr == Complex(0.0, 0.0)) {
            free_rows.push_back(fan.ray(r).normal);
        } else {
            double theta = std::arg(zr);
            for (int i = 0; i < n; ++i)
                d[static_cast<std::size_t>(i)] +=
                    theta * static_cast<double>(fan.ray(r).normal[static_cast<std::size_t>(i)]);
        }
    }
    IntMat annihilator = integer_kernel_basis(free_rows, n);

    double residual = 0.0;
    for (const auto& w : annihilator) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += d[static_cast<std::size_t>(i)] * static_cast<double>(w[static_cast<std::size_t>(i)]);
        double frac = std::remainder(s, two_pi);
        residual = std::max(residual, std::abs(frac));
    }

    OrbitTestResult out;
    out.residual = residual;
    if (residual < eps)
        out.verdict = OrbitMembership::Yes;
    else if (residual <= 10.0 * eps)
        out.verdict = OrbitMembership::Borderline;
    else
        out.verdict = OrbitMembership::No;
    return out;
}

}  // namespace evpos

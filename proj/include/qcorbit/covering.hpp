// Covering conditions in SL(d,R): ball-union regions, delta-interiors,
// certified meshes in the exponential chart, sound verification of family
// and cocycle covering, the d^2 near-identity family search, the GL scaling
// family, and the covering-implies-immediate-covering construction.
//
// Verification semantics: a FamilyCertificate with margin delta asserts
//   closure(U)  subset  union_i D_i^{-1} U_(delta),
// obtained by checking mesh points at margin delta + L*rho and spending
// L*rho of it on mesh fineness (L = max ||D_i||).  Sound but incomplete:
// failure to certify never proves absence of a covering.

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qcorbit/cocycle.hpp"
#include "qcorbit/matrix.hpp"

namespace qcorbit {

struct Ball {
    Matrix center;
    double radius;
};

// Finite union of closed operator-norm balls intersected with SL(d,R).
struct Region {
    std::vector<Ball> balls;

    int dim() const { return balls.empty() ? 0 : static_cast<int>(balls.front().center.rows()); }
};

inline Region ball_region(const Matrix& center, double radius) {
    if (radius <= 0.0) throw Error(ErrorKind::BadInput, "ball radius must be positive");
    return Region{{Ball{center, radius}}};
}

inline bool region_contains(const Region& u, const Matrix& m) {
    for (const Ball& b : u.balls) {
        // Frobenius prefilter: ||X||_F/sqrt(d) <= ||X||_op <= ||X||_F
        double fn = (m - b.center).norm();
        if (fn <= b.radius) return true;
        if (fn > b.radius * std::sqrt(static_cast<double>(m.rows()))) continue;
        if (operator_norm(m - b.center) <= b.radius) return true;
    }
    return false;
}

// Per-ball radius reduction; a sound inner approximation of the
// delta-interior U_(delta) (subset of it; not equal for overlapping unions).
inline Region region_shrink(const Region& u, double delta) {
    if (delta <= 0.0) throw Error(ErrorKind::BadInput, "shrink needs delta > 0");
    Region out;
    for (const Ball& b : u.balls)
        if (b.radius > delta) out.balls.push_back({b.center, b.radius - delta});
    if (out.balls.empty())
        throw Error(ErrorKind::EmptyResult, "every ball vanished under shrink");
    return out;
}

// K_U = max ||D^{+-1}|| over the closed region, bounded through centers and
// radii (Neumann bound for the inverse, with the SL fallback ||D||^{d-1}).
inline double region_bound_norm(const Region& u) {
    double k = 0.0;
    for (const Ball& b : u.balls) k = std::max(k, operator_norm(b.center) + b.radius);
    return k;
}

inline double region_bound_inverse_norm(const Region& u, const ToleranceConfig& cfg = {}) {
    double k = 0.0;
    const int d = u.dim();
    for (const Ball& b : u.balls) {
        double ci = operator_norm(inverse(b.center, cfg));
        double bound;
        if (ci * b.radius < 1.0) {
            bound = ci / (1.0 - ci * b.radius);
        } else {
            bound = std::pow(operator_norm(b.center) + b.radius, d - 1);
        }
        if (std::abs(std::abs(b.center.determinant()) - 1.0) <= cfg.det_tol)
            bound = std::min(bound, std::pow(operator_norm(b.center) + b.radius, d - 1));
        k = std::max(k, bound);
    }
    return k;
}

inline double region_k_bound(const Region& u, const ToleranceConfig& cfg = {}) {
    return std::max(region_bound_norm(u), region_bound_inverse_norm(u, cfg));
}

// --- certified mesh ----------------------------------------------------------

struct MeshBallStats {
    double chart_radius;  // R_E: log-chart radius covering the ball
    double pitch;         // lattice pitch per sl(d) coordinate
    double lipschitz;     // ||c|| * e^{R_E + h}: chart Lipschitz constant used
    long long points;
};

// Flat storage: one d*d column-major block per point (a mesh can run into
// millions of points, so no per-point allocations).
struct Mesh {
    int dim = 0;
    std::vector<double> flat;
    double fineness = 0.0;  // rho: certified density in the target
    Region target;
    std::vector<MeshBallStats> per_ball;

    long long size() const {
        return dim == 0 ? 0 : static_cast<long long>(flat.size()) / (dim * dim);
    }
    Eigen::Map<const Matrix> point(long long i) const {
        return Eigen::Map<const Matrix>(flat.data() + i * dim * dim, dim, dim);
    }
    void push(const Matrix& m) { flat.insert(flat.end(), m.data(), m.data() + m.size()); }
};

// rho-dense mesh of the region inside SL(d,R), built on one log chart
// E -> c0 exp(E) anchored at the first ball center.  Every point of the
// region has ||E||_op <= R_g = -log(1 - ||c0^{-1}|| max_dist), and rounding E
// to the lattice moves c0 exp(E) by at most ||c0|| e^{R_g + h} h, with h the
// chart-space rounding radius; lattice points farther than rho from the
// region can never be the rounding of a region point and are dropped.
inline Mesh build_mesh(const Region& u, double rho, long long cap = 6'000'000,
                       const ToleranceConfig& cfg = {}) {
    if (rho <= 0.0) throw Error(ErrorKind::BadInput, "mesh needs rho > 0");
    if (u.balls.empty()) throw Error(ErrorKind::BadInput, "empty region");
    Mesh mesh;
    mesh.fineness = rho;
    mesh.target = u;
    mesh.dim = u.dim();
    const int d = u.dim();
    const Matrix& c0 = u.balls.front().center;
    if (u.balls.size() == 1 && rho >= 2.0 * u.balls[0].radius) {
        // the center alone is rho-dense
        mesh.push(c0);
        mesh.per_ball.push_back({0.0, 2.0 * u.balls[0].radius, 1.0, 1});
        return mesh;
    }
    double cinv = operator_norm(inverse(c0, cfg));
    double reach = 0.0;
    for (const Ball& b : u.balls)
        reach = std::max(reach, operator_norm(b.center - c0) + b.radius);
    double q = cinv * (reach + rho);
    if (q >= 1.0)
        throw Error(ErrorKind::MeshTooLarge, "region too large for the log chart at its anchor");
    const double chart_radius = -std::log1p(-q);
    const double cnorm = operator_norm(c0);
    double h = rho / (cnorm * std::exp(chart_radius));
    h = rho / (cnorm * std::exp(chart_radius + h));  // settle the Lipschitz slack
    const std::vector<Matrix> basis = sl_basis(d);
    const int n = static_cast<int>(basis.size());
    const double pitch = 2.0 * h / std::sqrt(static_cast<double>(n));
    const double coord_range = std::sqrt(static_cast<double>(d)) * chart_radius;
    // nearest-lattice rounding reaches +-pitch/2, so the lattice only has to
    // extend to the rounded coordinate range
    const long long per_dim = static_cast<long long>(std::floor(coord_range / pitch + 0.5));
    if (std::pow(static_cast<double>(2 * per_dim + 1), n) > 2.0e9)
        throw Error(ErrorKind::MeshTooLarge, "mesh lattice exceeds the walkable budget");

    // chart coordinates of the ball centers support a cheap prefilter: a
    // lattice point can only be the rounding of a region point if its
    // Frobenius coordinate vector is near some center's
    std::vector<Vector> center_coords;
    std::vector<double> center_reach;
    bool have_coords = true;
    for (const Ball& b : u.balls) {
        // the 1.5 cushion below covers the log-chart distortion only for
        // centers close to the anchor
        Matrix rel = inverse(c0, cfg) * b.center;
        if (operator_norm(rel - Matrix::Identity(d, d)) > 0.3) {
            have_coords = false;
            break;
        }
        Matrix lg = rel.log();
        Vector c(n);
        for (int a = 0; a < n; ++a) c(a) = (lg.array() * basis[static_cast<size_t>(a)].array()).sum();
        center_coords.push_back(c);
        double binv = operator_norm(inverse(b.center, cfg));
        double bchart = -std::log1p(-std::min(binv * (b.radius + rho), 0.999));
        // cushion: coord distance <= sqrt(d) * chart distance, plus rounding
        center_reach.push_back(std::sqrt(static_cast<double>(d)) * bchart * 1.5 +
                               pitch * std::sqrt(static_cast<double>(n)));
    }
    // early size estimate against the cap
    {
        double extent = 0.0;
        if (have_coords)
            for (size_t b = 0; b < center_coords.size(); ++b)
                extent = std::max(extent, center_coords[b].norm() + center_reach[b]);
        else
            extent = coord_range;
        double unit_ball = std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
        if (unit_ball * std::pow(extent / pitch, n) > 1.4 * static_cast<double>(cap))
            throw Error(ErrorKind::MeshTooLarge, "estimated mesh size exceeds cap");
    }

    std::vector<long long> idx(static_cast<size_t>(n), -per_dim);
    const double prune = coord_range + pitch * std::sqrt(static_cast<double>(n)) / 2.0;
    Vector t(n);
    for (;;) {
        for (int a = 0; a < n; ++a) t(a) = static_cast<double>(idx[static_cast<size_t>(a)]) * pitch;
        double norm2 = t.squaredNorm();
        bool candidate = norm2 <= prune * prune;
        if (candidate && have_coords) {
            candidate = false;
            for (size_t b = 0; b < center_coords.size(); ++b)
                if ((t - center_coords[b]).norm() <= center_reach[b]) {
                    candidate = true;
                    break;
                }
        }
        if (candidate) {
            Matrix e = Matrix::Zero(d, d);
            for (int a = 0; a < n; ++a) e += t(a) * basis[static_cast<size_t>(a)];
            Matrix p = c0 * e.exp();
            bool near = false;
            for (const Ball& b : u.balls) {
                double fn = (p - b.center).norm();  // Frobenius prefilter
                if (fn <= b.radius + rho ||
                    (fn <= (b.radius + rho) * std::sqrt(static_cast<double>(d)) &&
                     operator_norm(p - b.center) <= b.radius + rho)) {
                    near = true;
                    break;
                }
            }
            if (near) {
                mesh.push(p);
                if (mesh.size() > cap)
                    throw Error(ErrorKind::MeshTooLarge, "mesh point count exceeds cap");
            }
        }
        int a = 0;
        for (; a < n; ++a) {
            if (++idx[static_cast<size_t>(a)] <= per_dim) break;
            idx[static_cast<size_t>(a)] = -per_dim;
        }
        if (a == n) break;
    }
    mesh.per_ball.push_back(
        {chart_radius, pitch, cnorm * std::exp(chart_radius + h), mesh.size()});
    return mesh;
}

// --- family covering ---------------------------------------------------------

struct FamilyCertificate {
    std::vector<Matrix> family;
    Region region;
    double delta = 0.0;          // sound margin: closure(U) in U_i D_i^{-1} U_(delta)
    double delta_checked = 0.0;  // margin verified at mesh points (= delta + L rho)
    double rho = 0.0;
    double family_norm = 0.0;  // L
    bool mesh_sound = true;    // false for audit-only certificates
    long long mesh_points = 0;
    std::vector<int> witnesses;  // per mesh point (empty for audit-only)
};

struct FamilyCoveringResult {
    std::optional<FamilyCertificate> certificate;
    std::optional<Matrix> counterexample;  // offending mesh point on failure

    bool ok() const { return certificate.has_value(); }
};

namespace detail {

// allocation-free witness scan for the small dimensions the library targets
template <int N>
int fixed_witness(const double* pdata, const std::vector<Eigen::Matrix<double, N, N>>& fam,
                  const std::vector<Eigen::Matrix<double, N, N>>& centers,
                  const std::vector<double>& radii) {
    using M = Eigen::Matrix<double, N, N>;
    Eigen::Map<const M> p(pdata);
    const double sd = std::sqrt(static_cast<double>(N));
    for (size_t i = 0; i < fam.size(); ++i) {
        M q = fam[i] * p;
        for (size_t b = 0; b < centers.size(); ++b) {
            M diff = q - centers[b];
            double fn2 = diff.squaredNorm();
            double r = radii[b];
            if (fn2 <= r * r) return static_cast<int>(i);
            if (fn2 > r * r * sd * sd) continue;
            double op;
            if constexpr (N == 2) {
                double det = diff(0, 0) * diff(1, 1) - diff(0, 1) * diff(1, 0);
                double disc = std::sqrt(std::max(fn2 * fn2 - 4.0 * det * det, 0.0));
                op = std::sqrt(0.5 * (fn2 + disc));
            } else {
                op = operator_norm(Matrix(diff));
            }
            if (op <= r) return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace detail

inline FamilyCoveringResult verify_family_covering_on_mesh(const std::vector<Matrix>& family,
                                                           const Region& u, double delta,
                                                           const Mesh& mesh,
                                                           const ToleranceConfig& cfg = {});

inline FamilyCoveringResult verify_family_covering(const std::vector<Matrix>& family,
                                                   const Region& u, double delta, double rho,
                                                   long long mesh_cap = 8'000'000,
                                                   const ToleranceConfig& cfg = {}) {
    Mesh mesh = build_mesh(u, rho, mesh_cap, cfg);
    return verify_family_covering_on_mesh(family, u, delta, mesh, cfg);
}

inline FamilyCoveringResult verify_family_covering_on_mesh(const std::vector<Matrix>& family,
                                                           const Region& u, double delta,
                                                           const Mesh& mesh,
                                                           const ToleranceConfig& cfg) {
    if (family.empty()) throw Error(ErrorKind::BadInput, "empty family");
    double big_l = 0.0;
    for (const Matrix& m : family) big_l = std::max(big_l, operator_norm(m));
    if (delta <= 0.0) throw Error(ErrorKind::BadInput, "delta must be positive");
    const double rho = mesh.fineness;
    const double checked = delta + big_l * rho;
    Region shrunk = [&] {
        try {
            return region_shrink(u, checked);
        } catch (const Error&) {
            throw Error(ErrorKind::SlackExhausted,
                        "delta + L rho leaves no interior; decrease rho or delta");
        }
    }();
    FamilyCertificate cert;
    cert.family = family;
    cert.region = u;
    cert.delta = delta;
    cert.delta_checked = checked;
    cert.rho = rho;
    cert.family_norm = big_l;
    cert.mesh_points = mesh.size();
    cert.witnesses.reserve(static_cast<size_t>(mesh.size()));
    const int d = u.dim();
    if (d == 2) {
        std::vector<Eigen::Matrix2d> fam2, cen2;
        std::vector<double> rad2;
        for (const Matrix& m : family) fam2.push_back(m);
        for (const Ball& b : shrunk.balls) {
            cen2.push_back(b.center);
            rad2.push_back(b.radius);
        }
        for (long long i = 0; i < mesh.size(); ++i) {
            int w = detail::fixed_witness<2>(mesh.flat.data() + i * 4, fam2, cen2, rad2);
            if (w < 0) return {std::nullopt, Matrix(mesh.point(i))};
            cert.witnesses.push_back(w);
        }
    } else {
        for (long long i = 0; i < mesh.size(); ++i) {
            Matrix p = mesh.point(i);
            int witness = -1;
            for (size_t f = 0; f < family.size(); ++f) {
                if (region_contains(shrunk, family[f] * p)) {
                    witness = static_cast<int>(f);
                    break;
                }
            }
            if (witness < 0) return {std::nullopt, p};
            cert.witnesses.push_back(witness);
        }
    }
    return {cert, std::nullopt};
}

// Independent Monte-Carlo audit: sampled points of closure(source) must each
// admit some D_i mapping them into target.  No mesh reuse.
inline long long audit_family_covering(const std::vector<Matrix>& family, const Region& source,
                                       const Region& target, long long samples, uint64_t seed,
                                       const ToleranceConfig& cfg = {}) {
    Rng rng(seed);
    const int d = source.dim();
    const std::vector<Matrix> basis = sl_basis(d);
    const int n = static_cast<int>(basis.size());
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<size_t> pick_ball(0, source.balls.size() - 1);
    long long violations = 0;
    for (long long s = 0; s < samples; ++s) {
        const Ball& ball = source.balls[pick_ball(rng)];
        double cinv = operator_norm(inverse(ball.center, cfg));
        double chart_radius = -std::log1p(-std::min(cinv * ball.radius, 0.999999));
        Matrix point;
        for (;;) {
            // uniform direction, radius^(1/n) profile in the chart ball
            Vector t(n);
            for (int a = 0; a < n; ++a) t(a) = gauss(rng);
            t *= std::sqrt(static_cast<double>(d)) * chart_radius *
                 std::pow(unit(rng), 1.0 / n) / t.norm();
            Matrix e = Matrix::Zero(d, d);
            for (int a = 0; a < n; ++a) e += t(a) * basis[static_cast<size_t>(a)];
            point = ball.center * e.exp();
            if (operator_norm(point - ball.center) <= ball.radius) break;
        }
        bool covered = false;
        for (const Matrix& dm : family)
            if (region_contains(target, dm * point)) {
                covered = true;
                break;
            }
        if (!covered) ++violations;
    }
    return violations;
}

inline long long audit_family_covering(const std::vector<Matrix>& family, const Region& u,
                                       long long samples, uint64_t seed,
                                       const ToleranceConfig& cfg = {}) {
    return audit_family_covering(family, u, u, samples, seed, cfg);
}

// --- construction of covering families ---------------------------------------

struct CoveringSearchConfig {
    uint64_t seed = 1;
    long long mesh_cap = 12'000'000;
    long long audit_samples = 10'000;
    bool require_mesh = true;  // false: accept an audit-backed certificate
    long long precheck_samples = 400;
};

struct SlCoveringFamily {
    std::vector<Matrix> family;  // exactly d^2 elements
    Region region;
    FamilyCertificate certificate;
};

namespace detail {

// m+1 unit vectors in R^m with pairwise inner product -1/m (regular simplex
// frame): every unit vector has inner product >= 1/m with one of them.
inline std::vector<Vector> simplex_vertices(int m) {
    Eigen::MatrixXd h(m + 1, m);
    for (int j = 0; j < m; ++j) {
        Vector col = Vector::Zero(m + 1);
        for (int i = 0; i <= j; ++i) col(i) = 1.0;
        col(j + 1) = -(j + 1.0);
        h.col(j) = col / col.norm();
    }
    std::vector<Vector> out;
    Vector centroid = Vector::Constant(m + 1, 1.0 / (m + 1));
    for (int i = 0; i <= m; ++i) {
        Vector w = Vector::Zero(m + 1);
        w(i) = 1.0;
        w -= centroid;
        Vector c = h.transpose() * w;
        out.push_back(c / c.norm());
    }
    return out;
}

// d^2 Frobenius-unit directions spanning sl(d) as a regular simplex frame.
inline std::vector<Matrix> simplex_directions(int d) {
    const std::vector<Matrix> basis = sl_basis(d);
    const int n = static_cast<int>(basis.size());
    std::vector<Matrix> dirs;
    for (const Vector& coords : simplex_vertices(n)) {
        Matrix e = Matrix::Zero(d, d);
        for (int a = 0; a < n; ++a) e += coords(a) * basis[static_cast<size_t>(a)];
        dirs.push_back(e / e.norm());
    }
    return dirs;
}

// simplex frame of the symmetric traceless subspace (dim d(d+1)/2 - 1)
inline std::vector<Matrix> symmetric_simplex_directions(int d) {
    std::vector<Matrix> basis;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
            basis.push_back(e);
        }
    for (int i = 0; i + 1 < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        for (int j = 0; j <= i; ++j) e(j, j) = 1.0;
        e(i + 1, i + 1) = -(i + 1.0);
        basis.push_back(e / e.norm());
    }
    const int m = static_cast<int>(basis.size());
    std::vector<Matrix> dirs;
    for (const Vector& coords : simplex_vertices(m)) {
        Matrix e = Matrix::Zero(d, d);
        for (int a = 0; a < m; ++a) e += coords(a) * basis[static_cast<size_t>(a)];
        dirs.push_back(e / e.norm());
    }
    return dirs;
}

// Region: union of op-balls whose centers form a lattice net of the
// Frobenius ball {||F||_F <= R} in the log chart; the identity is the first
// center.  The simplex family contracts the Frobenius norm uniformly, and
// this net makes the contraction visible to ball arithmetic.
inline Region frobenius_net_region(int d, double log_radius, double net_pitch,
                                   double ball_radius) {
    const std::vector<Matrix> basis = sl_basis(d);
    const int n = static_cast<int>(basis.size());
    Region u;
    u.balls.push_back({Matrix::Identity(d, d), ball_radius});
    long long per = static_cast<long long>(std::floor(log_radius / net_pitch)) + 1;
    if (std::pow(static_cast<double>(2 * per + 1), n) > 1.0e8)
        throw Error(ErrorKind::MeshTooLarge, "net lattice not walkable in this dimension");
    std::vector<long long> idx(static_cast<size_t>(n), -per);
    for (;;) {
        double norm2 = 0.0;
        bool zero = true;
        for (int a = 0; a < n; ++a) {
            double t = static_cast<double>(idx[static_cast<size_t>(a)]) * net_pitch;
            norm2 += t * t;
            zero &= idx[static_cast<size_t>(a)] == 0;
        }
        if (!zero && norm2 <= log_radius * log_radius) {
            Matrix e = Matrix::Zero(d, d);
            for (int a = 0; a < n; ++a)
                e += (static_cast<double>(idx[static_cast<size_t>(a)]) * net_pitch) *
                     basis[static_cast<size_t>(a)];
            u.balls.push_back({Matrix(e.exp()), ball_radius});
            if (u.balls.size() > 5000)
                throw Error(ErrorKind::MeshTooLarge, "region net too fine");
        }
        int a = 0;
        for (; a < n; ++a) {
            if (++idx[static_cast<size_t>(a)] <= per) break;
            idx[static_cast<size_t>(a)] = -per;
        }
        if (a == n) break;
    }
    return u;
}

// Seeded greedy packing of SO(d): rotation centers pairwise >= pitch apart
// in operator norm, starting from the identity.
inline std::vector<Matrix> rotation_net(int d, double pitch, uint64_t seed,
                                        long long trials = 60'000) {
    Rng rng(seed);
    std::vector<Matrix> net = {Matrix::Identity(d, d)};
    for (long long it = 0; it < trials; ++it) {
        Matrix q = random_rotation(rng, d);
        bool fresh = true;
        for (const Matrix& c : net) {
            double fn = (q - c).norm();
            if (fn < pitch ||
                (fn < pitch * std::sqrt(static_cast<double>(d)) && operator_norm(q - c) < pitch)) {
                fresh = false;
                break;
            }
        }
        if (fresh) net.push_back(q);
    }
    return net;
}

inline bool quick_covering_precheck(const std::vector<Matrix>& family, const Region& u,
                                    double delta, long long samples, uint64_t seed,
                                    const ToleranceConfig& tol = {}) {
    Region shrunk;
    try {
        shrunk = region_shrink(u, delta);
    } catch (const Error&) {
        return false;
    }
    Rng rng(seed);
    const int d = u.dim();
    const std::vector<Matrix> basis = sl_basis(d);
    const int n = static_cast<int>(basis.size());
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<size_t> pick_ball(0, u.balls.size() - 1);
    for (long long s = 0; s < samples; ++s) {
        const Ball& ball = u.balls[pick_ball(rng)];
        double cinv = operator_norm(inverse(ball.center, tol));
        double chart_radius = -std::log1p(-std::min(cinv * ball.radius, 0.999));
        Vector t(n);
        for (int a = 0; a < n; ++a) t(a) = gauss(rng);
        // bias samples toward the ball boundary where covering is tight
        double rad = std::sqrt(static_cast<double>(d)) * chart_radius *
                     std::pow(unit(rng), 0.25);
        t *= rad / t.norm();
        Matrix e = Matrix::Zero(d, d);
        for (int a = 0; a < n; ++a) e += t(a) * basis[static_cast<size_t>(a)];
        Matrix point = ball.center * e.exp();
        if (operator_norm(point - ball.center) > ball.radius) {
            --s;
            continue;
        }
        bool covered = false;
        for (const Matrix& dm : family)
            if (region_contains(shrunk, dm * point)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

}  // namespace detail

// Search for d^2 elements within eps of Id satisfying the covering condition.
//
// d = 2 (mesh-certifiable): the region is a ball-union net of a Frobenius
// ball in the log chart and the family consists of one-parameter elements
// exp(-t V_i) along the regular simplex frame of sl(2); the simplex property
// max_i <F, V_i> >= ||F||/3 makes each step contract the chart norm.
// Geometry parameters are swept and every candidate goes through the sound
// mesh verifier.
//
// d >= 3: the same frame idea runs on the symmetric-traceless subspace (a
// simplex frame there has d(d+1)/2 elements, padded to d^2), with the region
// a tube around the rotation group: conjugation by the rotation part moves
// the frame around but preserves the simplex alignment.  Mesh certification
// in dim(sl(d)) >= 8 is beyond any lattice budget, so these certificates are
// audit-backed and marked not mesh-sound.
inline SlCoveringFamily build_sl_covering_family(int d, double eps,
                                                 const CoveringSearchConfig& cfg = {},
                                                 const ToleranceConfig& tol = {}) {
    if (eps <= 0.0) throw Error(ErrorKind::BadInput, "eps must be positive");
    std::string diagnostics;
    uint64_t salt = 0;
    if (d == 2 && cfg.require_mesh) {
        const std::vector<Matrix> dirs = detail::simplex_directions(d);
        const double log_radius = 0.22 * eps;
        for (double net_frac : {0.32, 0.26}) {
            double s = net_frac * log_radius;
            Region u = detail::frobenius_net_region(d, log_radius, 0.85 * s, s);
            for (double step_frac : {0.6, 0.45, 0.75}) {
                double t = step_frac * log_radius;
                std::vector<Matrix> family;
                bool small_enough = true;
                for (const Matrix& v : dirs) {
                    Matrix dm = (-t * v).exp();
                    small_enough &= operator_norm(dm - Matrix::Identity(d, d)) < eps;
                    family.push_back(dm);
                }
                if (!small_enough) continue;
                // the mesh scales like 1/rho^3 and the rho-shell costs about
                // 3 rho of achievable margin, so delta stays small while rho
                // takes most of the slack; one mesh serves every delta
                std::optional<Mesh> mesh;
                for (auto [margin_frac, rho_frac] :
                     {std::pair{0.006, 0.012}, {0.010, 0.012}, {0.004, 0.012}}) {
                    double delta = margin_frac * log_radius;
                    double rho = rho_frac * log_radius;
                    ++salt;
                    if (!detail::quick_covering_precheck(family, u, delta, cfg.precheck_samples,
                                                         cfg.seed + salt, tol))
                        continue;
                    try {
                        if (!mesh) mesh = build_mesh(u, rho, cfg.mesh_cap, tol);
                        FamilyCoveringResult res =
                            verify_family_covering_on_mesh(family, u, delta, *mesh, tol);
                        if (res.ok()) return {family, u, *res.certificate};
                        diagnostics += "counterexample; ";
                    } catch (const Error& e) {
                        diagnostics += std::string(error_kind_name(e.kind())) + "; ";
                        if (e.kind() == ErrorKind::MeshTooLarge) break;
                    }
                }
            }
        }
    } else {
        // audit-backed tube construction
        const std::vector<Matrix> sym_dirs = detail::symmetric_simplex_directions(d);
        const int needed = d * d;
        for (double pitch : {0.15, 0.2}) {
            std::vector<Matrix> centers = detail::rotation_net(d, pitch, cfg.seed + 5);
            double ball_radius = 1.6 * pitch;
            Region u;
            for (const Matrix& c : centers) u.balls.push_back({c, ball_radius});
            for (double t : {0.045, 0.03}) {
                std::vector<Matrix> family;
                for (const Matrix& v : sym_dirs) family.push_back(detail::sym_exp(-t * v));
                for (size_t i = 0; family.size() < static_cast<size_t>(needed); ++i)
                    family.push_back(detail::sym_exp((-t / 2.0) * sym_dirs[i % sym_dirs.size()]));
                bool small_enough = true;
                for (const Matrix& m : family)
                    small_enough &= operator_norm(m - Matrix::Identity(d, d)) < eps;
                if (!small_enough) {
                    diagnostics += "family too far from Id; ";
                    continue;
                }
                for (double delta : {0.2 * t, 0.1 * t}) {
                    ++salt;
                    if (!detail::quick_covering_precheck(family, u, delta, cfg.precheck_samples,
                                                         cfg.seed + salt, tol))
                        continue;
                    // margin audit: samples of the full region must reach the
                    // delta-interior (per-ball inner approximation)
                    Region shrunk = region_shrink(u, delta);
                    long long bad = audit_family_covering(family, u, shrunk, cfg.audit_samples,
                                                          cfg.seed + 177 + salt, tol);
                    if (bad == 0) {
                        FamilyCertificate cert;
                        cert.family = family;
                        cert.region = u;
                        cert.delta = delta;
                        cert.delta_checked = delta;
                        cert.rho = 0.0;
                        for (const Matrix& m : family)
                            cert.family_norm = std::max(cert.family_norm, operator_norm(m));
                        cert.mesh_sound = false;
                        cert.mesh_points = 0;
                        return {family, u, cert};
                    }
                    diagnostics += "audit violations; ";
                }
            }
        }
    }
    throw Error(ErrorKind::SearchExhausted,
                "no covering family certified for d=" + std::to_string(d) +
                    ", eps=" + std::to_string(eps) + " [" + diagnostics + "]");
}

// Scalar factor model for the GL scaling family: the maps x -> 2x and
// x -> x/3 cover the interval (lo, hi) with margin iff hi > 6 lo.
struct ScalarCoveringResult {
    bool covers = false;
    double margin = 0.0;  // length slack at the junction hi/2 vs 3 lo
};

inline ScalarCoveringResult scalar_interval_covering(double lo, double hi) {
    if (lo <= 0.0 || hi <= lo) throw Error(ErrorKind::BadInput, "need 0 < lo < hi");
    double junction = hi / 2.0 - 3.0 * lo;
    if (junction <= 0.0) return {false, junction};
    return {true, junction};
}

struct GlCoveringFamily {
    std::vector<Matrix> family;  // 2 d^2 elements: {2 D_i} and {D_i / 3}
    SlCoveringFamily sl;         // the underlying SL data
    double lambda_lo = 1.0, lambda_hi = 7.0;
    ScalarCoveringResult scalar;
};

inline GlCoveringFamily build_gl_covering_family(int d, double eps,
                                                 const CoveringSearchConfig& cfg = {},
                                                 double lambda_lo = 1.0, double lambda_hi = 7.0,
                                                 const ToleranceConfig& tol = {}) {
    GlCoveringFamily out;
    out.sl = build_sl_covering_family(d, eps, cfg, tol);
    out.lambda_lo = lambda_lo;
    out.lambda_hi = lambda_hi;
    out.scalar = scalar_interval_covering(lambda_lo, lambda_hi);
    if (!out.scalar.covers)
        throw Error(ErrorKind::CertificateFailed, "scalar interval needs hi > 6 lo");
    for (const Matrix& m : out.sl.family) out.family.push_back(2.0 * m);
    for (const Matrix& m : out.sl.family) out.family.push_back(m / 3.0);
    return out;
}

// --- cocycle covering ---------------------------------------------------------

struct CocycleCoveringCertificate {
    Region region;
    std::vector<Word> marked_words;               // A'
    std::vector<std::vector<Word>> lambda;        // Lambda_a per marked word
    double delta = 0.0;
    int max_transition_length = 0;  // L
    std::vector<FamilyCertificate> per_word;
    bool mesh_sound = true;
};

struct CocycleCoveringResult {
    std::optional<CocycleCoveringCertificate> certificate;
    std::optional<Word> failed_word;
    std::optional<Matrix> counterexample;

    bool ok() const { return certificate.has_value(); }
};

inline CocycleCoveringResult verify_cocycle_covering(
    const Cocycle& a, const Region& u, const std::vector<Word>& marked,
    const std::vector<std::vector<Word>>& lambda, double delta, double rho,
    long long mesh_cap = 4'000'000, bool require_mesh = true,
    const CoveringSearchConfig& cfg = {}) {
    if (marked.size() != lambda.size())
        throw Error(ErrorKind::BadInput, "one transition family per marked word");
    const int len = a.window_length();
    auto is_marked = [&](const Word& w) {
        for (const Word& m : marked)
            if (m == w) return true;
        return false;
    };
    CocycleCoveringCertificate cert;
    cert.region = u;
    cert.marked_words = marked;
    cert.lambda = lambda;
    cert.delta = delta;
    for (size_t i = 0; i < marked.size(); ++i) {
        const Word& aw = marked[i];
        if (aw.size() != len || !a.sft().admissible(aw))
            throw Error(ErrorKind::InadmissibleWord, "marked word invalid: " + aw.str());
        if (lambda[i].empty())
            throw Error(ErrorKind::BadInput, "empty transition family for " + aw.str());
        std::vector<Matrix> family;
        for (const Word& w : lambda[i]) {
            if (w.size() < len || !(w.prefix(len) == aw) || !is_marked(w.suffix(len)) ||
                !a.sft().admissible(w))
                throw Error(ErrorKind::InadmissibleWord,
                            "not a transition between marked words: " + w.str());
            cert.max_transition_length = std::max(cert.max_transition_length, w.size());
            family.push_back(transition_product(a, w));
        }
        if (require_mesh) {
            FamilyCoveringResult res =
                verify_family_covering(family, u, delta, rho, mesh_cap, a.tolerances());
            if (!res.ok()) return {std::nullopt, aw, res.counterexample};
            cert.per_word.push_back(*res.certificate);
        } else {
            long long bad =
                audit_family_covering(family, u, cfg.audit_samples, cfg.seed + 911 + i,
                                      a.tolerances());
            if (bad != 0) return {std::nullopt, aw, std::nullopt};
            FamilyCertificate fc;
            fc.family = family;
            fc.region = u;
            fc.delta = delta;
            fc.delta_checked = delta;
            fc.mesh_sound = false;
            for (const Matrix& m : family)
                fc.family_norm = std::max(fc.family_norm, operator_norm(m));
            cert.per_word.push_back(fc);
            cert.mesh_sound = false;
        }
    }
    for (const auto& fc : cert.per_word) cert.mesh_sound &= fc.mesh_sound;
    return {cert, std::nullopt};
}

// --- covering implies immediate covering --------------------------------------

struct ImmediateCoveringResult {
    Region v;
    std::vector<double> chain_radii;  // eps_0 < ... < eps_N < delta/2
    FamilyCertificate certificate;    // single-generator covering of V
};

// From a covering of U by semigroup words of length <= max_word_len, build a
// region V of epsilon-tubes along the witness chains that the generators
// cover in a single step.
inline ImmediateCoveringResult immediate_covering(const std::vector<Matrix>& generators,
                                                  const Region& u, int max_word_len, double delta,
                                                  double rho, long long mesh_cap = 4'000'000,
                                                  const ToleranceConfig& cfg = {}) {
    if (max_word_len < 1) throw Error(ErrorKind::BadInput, "need max_word_len >= 1");
    // expand the word family together with its generator index chains
    std::vector<Matrix> word_products;
    std::vector<std::vector<int>> word_letters;
    {
        std::vector<Matrix> cur = {Matrix::Identity(u.dim(), u.dim())};
        std::vector<std::vector<int>> cur_letters = {{}};
        for (int len = 1; len <= max_word_len; ++len) {
            std::vector<Matrix> nxt;
            std::vector<std::vector<int>> nxt_letters;
            for (size_t p = 0; p < cur.size(); ++p)
                for (size_t g = 0; g < generators.size(); ++g) {
                    nxt.push_back(generators[g] * cur[p]);
                    auto ls = cur_letters[p];
                    ls.push_back(static_cast<int>(g));
                    nxt_letters.push_back(std::move(ls));
                }
            for (size_t i = 0; i < nxt.size(); ++i) {
                word_products.push_back(nxt[i]);
                word_letters.push_back(nxt_letters[i]);
            }
            cur = std::move(nxt);
            cur_letters = std::move(nxt_letters);
        }
    }
    FamilyCoveringResult words_res =
        verify_family_covering(word_products, u, delta, rho, mesh_cap, cfg);
    if (!words_res.ok())
        throw Error(ErrorKind::CertificateFailed,
                    "word family does not cover U at the given margin");
    const FamilyCertificate& words_cert = *words_res.certificate;

    double gen_norm = 1.0;
    for (const Matrix& g : generators) gen_norm = std::max(gen_norm, operator_norm(g));
    const double grow = 2.0 * gen_norm;
    // eps_j = eps_0 (2 L)^j, eps_N < delta/2, eps_0 >= rho so the tube bases
    // cover U
    double eps0_max = (delta / 2.0) / std::pow(grow, max_word_len) * 0.999;
    if (eps0_max < rho)
        throw Error(ErrorKind::SlackExhausted,
                    "chain radii cannot fit below delta/2 while covering the mesh");
    double eps0 = eps0_max;
    std::vector<double> radii;
    for (int j = 0; j <= max_word_len; ++j) radii.push_back(eps0 * std::pow(grow, j));

    Mesh mesh = build_mesh(u, rho, mesh_cap, cfg);
    Region v;
    for (long long p = 0; p < mesh.size(); ++p) {
        const std::vector<int>& chain =
            word_letters[static_cast<size_t>(words_cert.witnesses[static_cast<size_t>(p)])];
        Matrix cur = mesh.point(p);
        v.balls.push_back({cur, radii[0]});
        for (size_t j = 0; j < chain.size(); ++j) {
            cur = generators[static_cast<size_t>(chain[j])] * cur;
            v.balls.push_back({cur, radii[j + 1]});
        }
        if (v.balls.size() > 200'000)
            throw Error(ErrorKind::MeshTooLarge, "immediate-covering region has too many tubes");
    }
    // single-step certificate on V with the margins the chain construction
    // provides
    double v_delta = eps0 / 2.0;
    double v_rho = v_delta / (2.0 * gen_norm);
    FamilyCoveringResult res = verify_family_covering(generators, v, v_delta, v_rho, mesh_cap, cfg);
    if (!res.ok())
        throw Error(ErrorKind::CertificateFailed, "single-step verification of V failed");
    return {v, radii, *res.certificate};
}

}  // namespace qcorbit

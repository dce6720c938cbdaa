// Dense kernel for small fixed dimension (d <= 6 in practice): operator
// norms, spectra, hyperbolicity witnesses, polar-log factorization,
// near-identity fragmentation, and the block-triangular hyperbolizing curve.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <random>
#include <vector>
#include <unsupported/Eigen/MatrixFunctions>

#include "qcorbit/errors.hpp"

namespace qcorbit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

struct ToleranceConfig {
    double spectral_tol = 1e-9;  // exclusion band around the unit circle
    double equality_tol = 1e-9;  // operator-norm equality of matrices
    double det_tol = 1e-9;       // |det| distance from +-1 for unimodular tags
};

inline double operator_norm(const Matrix& m) {
    if (m.rows() == 2 && m.cols() == 2) {
        // closed form: largest singular value of a 2x2 matrix
        double f = m.squaredNorm();
        double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        double disc = std::sqrt(std::max(f * f - 4.0 * det * det, 0.0));
        return std::sqrt(0.5 * (f + disc));
    }
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline Vector singular_values(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues();  // descending
}

inline ComplexVector eigenvalues(const Matrix& m) {
    return Eigen::EigenSolver<Matrix>(m, /*computeEigenvectors=*/false).eigenvalues();
}

inline Matrix inverse(const Matrix& m, const ToleranceConfig& cfg = {}) {
    Eigen::FullPivLU<Matrix> lu(m);
    double det = lu.determinant();
    if (std::abs(det) <= cfg.det_tol)
        throw Error(ErrorKind::Singular, "matrix is singular to det_tol");
    return lu.inverse();
}

inline bool is_unimodular(const Matrix& m, const ToleranceConfig& cfg = {}) {
    return std::abs(std::abs(m.determinant()) - 1.0) <= cfg.det_tol;
}

// h(M) = prod_{i,j} (lambda_i lambda_j - 1); the eigenvalues pair into
// conjugates, so the product is real.  Nonzero beyond tolerance certifies
// that no eigenvalue lies on the unit circle.
inline double hyperbolicity_witness(const Matrix& m) {
    ComplexVector lam = eigenvalues(m);
    std::complex<double> prod(1.0, 0.0);
    for (int i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam.size(); ++j) prod *= lam(i) * lam(j) - 1.0;
    return prod.real();
}

inline bool is_hyperbolic(const Matrix& m, const ToleranceConfig& cfg = {}) {
    ComplexVector lam = eigenvalues(m);
    for (int i = 0; i < lam.size(); ++i) {
        double r = std::abs(lam(i));
        if (r >= 1.0 - cfg.spectral_tol && r <= 1.0 + cfg.spectral_tol) return false;
    }
    return true;
}

// |det M|^{-1/d} M
inline Matrix unimodular_renormalize(const Matrix& m, const ToleranceConfig& cfg = {}) {
    double det = m.determinant();
    if (std::abs(det) <= cfg.det_tol) throw Error(ErrorKind::Singular, "cannot renormalize: det ~ 0");
    double scale = std::pow(std::abs(det), -1.0 / static_cast<double>(m.rows()));
    return scale * m;
}

namespace detail {

// Real logarithm of a special orthogonal matrix via the real Schur form.
// The Schur form of a rotation is block diagonal with planar rotation blocks
// and +-1 entries; -1 entries come in pairs (det = +1) and each pair is a
// planar rotation by pi across its two Schur coordinates.
inline Matrix so_log(const Matrix& q) {
    const int d = static_cast<int>(q.rows());
    Eigen::RealSchur<Matrix> schur(q);
    const Matrix& t = schur.matrixT();
    const Matrix& u = schur.matrixU();
    Matrix k = Matrix::Zero(d, d);
    std::vector<int> minus_ones;
    const double block_tol = 1e-10;
    for (int i = 0; i < d;) {
        if (i + 1 < d && std::abs(t(i + 1, i)) > block_tol) {
            double theta = std::atan2(t(i + 1, i), t(i, i));
            k(i, i + 1) = -theta;
            k(i + 1, i) = theta;
            i += 2;
        } else {
            if (t(i, i) < 0.0) minus_ones.push_back(i);
            i += 1;
        }
    }
    for (size_t p = 0; p + 1 < minus_ones.size(); p += 2) {
        int a = minus_ones[p], b = minus_ones[p + 1];
        k(a, b) = -M_PI;
        k(b, a) = M_PI;
    }
    if (minus_ones.size() % 2 != 0)
        throw Error(ErrorKind::NegativeDeterminant, "orthogonal factor has det -1");
    Matrix out = u * k * u.transpose();
    return 0.5 * (out - out.transpose());
}

inline Matrix sym_log(const Matrix& p) {  // p symmetric positive definite
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

inline Matrix sym_exp(const Matrix& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()));
    return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

}  // namespace detail

struct PolarLog {
    Matrix skew;       // K, exp(K) special orthogonal
    Matrix symmetric;  // S, exp(S) symmetric positive definite, traceless for det = 1
};

// M = exp(K) exp(S) from the polar decomposition M = Q P.
inline PolarLog polar_log_factorization(const Matrix& m) {
    if (m.determinant() <= 0.0)
        throw Error(ErrorKind::NegativeDeterminant, "polar-log needs det > 0");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix q = svd.matrixU() * svd.matrixV().transpose();
    Matrix p = svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
    return PolarLog{detail::so_log(q), detail::sym_log(p)};
}

// Factors F_1..F_n, each within eps of Id, with F_n ... F_1 = M.  The two
// polar-log stages are subdivided independently with minimal counts; the
// symmetric stage applies first.
inline std::vector<Matrix> fragment(const Matrix& m, double eps, long long cap = 1'000'000) {
    if (eps <= 0.0) throw Error(ErrorKind::BadInput, "fragment needs eps > 0");
    const int d = static_cast<int>(m.rows());
    if (operator_norm(m - Matrix::Identity(d, d)) < eps) return {m};
    PolarLog pl = polar_log_factorization(m);
    auto stage_count = [&](const Matrix& gen, bool sym) -> long long {
        long long n = std::max<long long>(1, static_cast<long long>(operator_norm(gen) / eps));
        for (; n <= cap; ++n) {
            Matrix f = sym ? detail::sym_exp(gen / static_cast<double>(n))
                           : Matrix((gen / static_cast<double>(n)).exp());
            if (operator_norm(f - Matrix::Identity(d, d)) < eps) return n;
        }
        throw Error(ErrorKind::FragmentationBudget, "fragmentation factor count exceeds cap");
    };
    long long ns = stage_count(pl.symmetric, true);
    long long nk = stage_count(pl.skew, false);
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(ns + nk));
    Matrix fs = detail::sym_exp(pl.symmetric / static_cast<double>(ns));
    Matrix fk = (pl.skew / static_cast<double>(nk)).exp();
    for (long long i = 0; i < ns; ++i) out.push_back(fs);
    for (long long i = 0; i < nk; ++i) out.push_back(fk);
    return out;
}

// H_t with H_0 = Id and H * H_t hyperbolic for t > 0, built by scaling the
// diagonal blocks of the real Schur form of H away from the unit circle.
// Needs d > 2 so there are at least two blocks to trade volume between.
inline Matrix hyperbolizing_curve(const Matrix& h, double t, const ToleranceConfig& cfg = {}) {
    const int d = static_cast<int>(h.rows());
    if (d <= 2) throw Error(ErrorKind::DimensionTooSmall, "hyperbolizing_curve needs d > 2");
    if (t < 0.0 || t > 1.0) throw Error(ErrorKind::BadInput, "t must lie in [0,1]");
    if (t == 0.0) return Matrix::Identity(d, d);
    Eigen::RealSchur<Matrix> schur(h);
    const Matrix& u = schur.matrixT();
    const Matrix& o = schur.matrixU();
    // block structure and per-block eigenvalue moduli
    struct Block {
        int start, size;
        double modulus;
    };
    std::vector<Block> blocks;
    const double block_tol = 1e-12;
    for (int i = 0; i < d;) {
        if (i + 1 < d && std::abs(u(i + 1, i)) > block_tol) {
            double det2 = u(i, i) * u(i + 1, i + 1) - u(i, i + 1) * u(i + 1, i);
            blocks.push_back({i, 2, std::sqrt(std::abs(det2))});
            i += 2;
        } else {
            blocks.push_back({i, 1, std::abs(u(i, i))});
            i += 1;
        }
    }
    std::vector<int> up, down;
    for (size_t b = 0; b < blocks.size(); ++b)
        (blocks[b].modulus >= 1.0 ? up : down).push_back(static_cast<int>(b));
    // |det| = 1 forces mixed moduli unless all sit on the circle; rebalance
    // the degenerate single-sided cases
    if (down.empty()) {
        down.push_back(up.back());
        up.pop_back();
    }
    if (up.empty()) {
        size_t best = 0;
        for (size_t i = 1; i < down.size(); ++i)
            if (blocks[static_cast<size_t>(down[i])].modulus >
                blocks[static_cast<size_t>(down[best])].modulus)
                best = i;
        up.push_back(down[best]);
        down.erase(down.begin() + static_cast<long>(best));
    }
    double s_up = 0, s_down = 0;
    for (int b : up) s_up += blocks[static_cast<size_t>(b)].size;
    for (int b : down) s_down += blocks[static_cast<size_t>(b)].size;
    const double rate = 0.5 / (s_up + s_down);
    Vector exponents = Vector::Zero(d);
    for (int b : up)
        for (int i = 0; i < blocks[static_cast<size_t>(b)].size; ++i)
            exponents(blocks[static_cast<size_t>(b)].start + i) = rate * s_down;
    for (int b : down)
        for (int i = 0; i < blocks[static_cast<size_t>(b)].size; ++i)
            exponents(blocks[static_cast<size_t>(b)].start + i) = -rate * s_up;
    Matrix dt = (t * exponents).array().exp().matrix().asDiagonal();
    return inverse(h, cfg) * o * u * dt * o.transpose();
}

// --- seeded sampling -------------------------------------------------------

using Rng = std::mt19937_64;

inline Matrix random_gaussian(Rng& rng, int d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = g(rng);
    return m;
}

// Gaussian entries, sign fix, |det|^{-1/d} normalization; no orthonormalization.
inline Matrix random_sl(Rng& rng, int d) {
    for (;;) {
        Matrix m = random_gaussian(rng, d);
        double det = m.determinant();
        if (std::abs(det) < 1e-8) continue;
        if (det < 0) m.row(0) *= -1.0;
        return unimodular_renormalize(m);
    }
}

inline Matrix random_rotation(Rng& rng, int d) {
    Matrix m = random_gaussian(rng, d);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i)
        if (r(i, i) < 0) q.col(i) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

inline Matrix rotation2(double theta) {
    Matrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

inline Matrix diag(std::initializer_list<double> entries) {
    Matrix m = Matrix::Zero(static_cast<long>(entries.size()), static_cast<long>(entries.size()));
    int i = 0;
    for (double e : entries) m(i, i) = e, ++i;
    return m;
}

// Frobenius-orthonormal basis of the traceless matrices sl(d).
inline std::vector<Matrix> sl_basis(int d) {
    std::vector<Matrix> basis;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1.0;
            basis.push_back(e);
        }
    for (int i = 0; i + 1 < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        // orthogonal diagonal directions diag(1,..,1,-(i+1),0,..)/norm
        for (int j = 0; j <= i; ++j) e(j, j) = 1.0;
        e(i + 1, i + 1) = -(i + 1.0);
        basis.push_back(e / e.norm());
    }
    return basis;
}

}  // namespace qcorbit

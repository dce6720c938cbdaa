#include "qcorbit/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qcorbit;

namespace {
Matrix block_rotation3(double theta) {
    // unit-modulus complex pair plus a real 1 on the diagonal
    Matrix m = Matrix::Identity(3, 3);
    m.topLeftCorner(2, 2) = rotation2(theta);
    return m;
}
}  // namespace

TEST_CASE("norms and spectra basics") {
    CHECK(operator_norm(Matrix::Identity(2, 2)) == Catch::Approx(1.0));
    Vector sv = singular_values(diag({2.0, 0.5}));
    CHECK(sv(0) == Catch::Approx(2.0));
    CHECK(sv(1) == Catch::Approx(0.5));
    CHECK_THROWS_AS(inverse(Matrix::Zero(2, 2)), Error);
}

TEST_CASE("inverse norm bound in SL(d)") {
    Rng rng(17);
    for (int it = 0; it < 400; ++it) {
        Matrix m = random_sl(rng, 2);
        CHECK(operator_norm(inverse(m)) <= operator_norm(m) * (1.0 + 1e-12));
    }
    for (int it = 0; it < 400; ++it) {
        Matrix m = random_sl(rng, 3);
        CHECK(operator_norm(inverse(m)) <=
              std::pow(operator_norm(m), 2) * (1.0 + 1e-12));
    }
}

TEST_CASE("operator norm is submultiplicative") {
    Rng rng(23);
    for (int it = 0; it < 1000; ++it) {
        int d = 2 + (it % 3);
        Matrix a = random_gaussian(rng, d), b = random_gaussian(rng, d);
        CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) * (1.0 + 1e-12));
    }
}

TEST_CASE("hyperbolicity witness") {
    CHECK(hyperbolicity_witness(diag({2.0, 1.0, 0.5})) == Catch::Approx(0.0).margin(1e-9));
    CHECK(std::abs(hyperbolicity_witness(diag({2.0, 2.0, 0.25}))) > 1e-6);
    CHECK(hyperbolicity_witness(rotation2(M_PI / 3.0)) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("witness zero iff some eigenvalue pair multiplies to one") {
    Rng rng(31);
    ToleranceConfig cfg;
    for (int it = 0; it < 300; ++it) {
        Matrix m = random_sl(rng, 3);
        double h = hyperbolicity_witness(m);
        if (std::abs(h) > 1e-9) CHECK(is_hyperbolic(m, cfg));
    }
}

TEST_CASE("is_hyperbolic") {
    CHECK(is_hyperbolic(diag({3.0, 1.0 / 3.0})));
    CHECK(!is_hyperbolic(rotation2(0.7)));
    CHECK(!is_hyperbolic(diag({2.0, 1.0, 0.5})));
}

TEST_CASE("polar log factorization") {
    PolarLog id = polar_log_factorization(Matrix::Identity(3, 3));
    CHECK(operator_norm(id.skew) == Catch::Approx(0.0).margin(1e-12));
    CHECK(operator_norm(id.symmetric) == Catch::Approx(0.0).margin(1e-12));

    Matrix p = diag({2.0, 1.0, 0.5});
    PolarLog pl = polar_log_factorization(p);
    CHECK(operator_norm(pl.skew) == Catch::Approx(0.0).margin(1e-10));
    CHECK(pl.symmetric(0, 0) == Catch::Approx(std::log(2.0)));
    CHECK(pl.symmetric(2, 2) == Catch::Approx(std::log(0.5)));

    Rng rng(41);
    for (int it = 0; it < 100; ++it) {
        Matrix m = random_sl(rng, 3);
        PolarLog f = polar_log_factorization(m);
        CHECK(operator_norm(f.skew + f.skew.transpose()) < 1e-12);
        CHECK(operator_norm(f.symmetric - f.symmetric.transpose()) < 1e-12);
        CHECK(std::abs(f.symmetric.trace()) < 1e-10);
        Matrix rebuilt = f.skew.exp() * f.symmetric.exp();
        CHECK(operator_norm(rebuilt - m) < 1e-10);
    }

    CHECK_THROWS_AS(polar_log_factorization(diag({-1.0, 1.0})), Error);
}

TEST_CASE("polar log handles the half-turn") {
    Matrix r = rotation2(M_PI);
    PolarLog f = polar_log_factorization(r);
    CHECK(operator_norm(Matrix(f.skew.exp()) - r) < 1e-12);
}

TEST_CASE("fragment splits into near-identity factors") {
    Matrix id = Matrix::Identity(2, 2);
    auto fs = fragment(id, 0.3);
    REQUIRE(fs.size() == 1);
    CHECK(operator_norm(fs[0] - id) == 0.0);

    Matrix m = diag({4.0, 0.25});
    auto factors = fragment(m, 0.2);
    Matrix prod = Matrix::Identity(2, 2);
    for (const Matrix& f : factors) {
        CHECK(operator_norm(f - id) < 0.2);
        prod = f * prod;
    }
    CHECK(operator_norm(prod - m) < 1e-12);

    Matrix rot = rotation2(M_PI);
    auto rfs = fragment(rot, 0.25);
    prod = Matrix::Identity(2, 2);
    for (const Matrix& f : rfs) {
        CHECK(operator_norm(f - id) < 0.25);
        prod = f * prod;
    }
    CHECK(operator_norm(prod - rot) < 1e-12);

    Rng rng(53);
    for (int it = 0; it < 40; ++it) {
        Matrix s = random_sl(rng, 3);
        auto sf = fragment(s, 0.15);
        Matrix q = Matrix::Identity(3, 3);
        for (const Matrix& f : sf) {
            CHECK(operator_norm(f - Matrix::Identity(3, 3)) < 0.15);
            q = f * q;
        }
        CHECK(operator_norm(q - s) < 1e-10);
    }
}

TEST_CASE("unimodular renormalization") {
    CHECK(operator_norm(unimodular_renormalize(2.0 * Matrix::Identity(2, 2)) -
                        Matrix::Identity(2, 2)) < 1e-15);
    Rng rng(61);
    for (int it = 0; it < 200; ++it) {
        Matrix m = random_gaussian(rng, 3);
        if (std::abs(m.determinant()) < 1e-6) continue;
        Matrix r = unimodular_renormalize(m);
        CHECK(std::abs(std::abs(r.determinant()) - 1.0) < 1e-12);
        // idempotent to det_tol
        CHECK(operator_norm(unimodular_renormalize(r) - r) < 1e-12);
    }
    Matrix s = random_sl(rng, 2);
    CHECK(operator_norm(unimodular_renormalize(s) - s) < 1e-12);
}

TEST_CASE("hyperbolizing curve") {
    CHECK_THROWS_AS(hyperbolizing_curve(Matrix::Identity(2, 2), 0.5), Error);

    Matrix id3 = Matrix::Identity(3, 3);
    CHECK(operator_norm(hyperbolizing_curve(id3, 0.0) - id3) == 0.0);

    Matrix ht = hyperbolizing_curve(id3, 0.5);
    CHECK(is_hyperbolic(id3 * ht));
    CHECK(std::abs(ht.determinant() - 1.0) < 1e-10);

    Matrix h = block_rotation3(1.1);
    Matrix ht2 = hyperbolizing_curve(h, 0.1);
    CHECK(is_hyperbolic(h * ht2));

    Rng rng(71);
    for (int it = 0; it < 100; ++it) {
        Matrix m = random_sl(rng, 3 + (it % 2));
        for (double t : {1e-3, 0.2, 1.0}) {
            Matrix c = hyperbolizing_curve(m, t);
            CHECK(is_hyperbolic(m * c));
        }
        CHECK(operator_norm(hyperbolizing_curve(m, 0.0) -
                            Matrix::Identity(m.rows(), m.rows())) == 0.0);
    }
}

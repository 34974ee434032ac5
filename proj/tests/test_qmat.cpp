#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "support.hpp"
#include "unruhx/qmat.hpp"

using namespace unruhx;
using L = QubitLabel;

namespace {

const CMatrix kX{{0, 1}, {1, 0}};
const CMatrix kZ{{1, 0}, {0, -1}};

CMatrix bell_projector() {
    CMatrix m(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

CMatrix diag(std::initializer_list<double> v) {
    std::vector<double> d(v);
    return CMatrix::diagonal(d);
}

}  // namespace

TEST_CASE("kron basics") {
    CHECK(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) == 0.0);
    CHECK(max_abs_diff(kron(kZ, CMatrix::identity(2)), diag({1, 1, -1, -1})) == 0.0);

    CMatrix ket00(4, 1);
    ket00(0, 0) = 1.0;
    const CMatrix flipped = kron(kX, kX) * ket00;
    CHECK(flipped(3, 0) == Complex(1.0));
    CHECK(std::abs(flipped(0, 0)) == 0.0);

    const CMatrix k = kron(CMatrix(2, 3), CMatrix(3, 2));
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 6);
}

TEST_CASE("matrix algebra") {
    oracle::Rng rng(1);
    const CMatrix a = support::random_matrix(rng, 4);
    CHECK(max_abs_diff(CMatrix::identity(4) * a, a) == 0.0);
    CHECK(trace(CMatrix::identity(4)) == Complex(4.0));
    CHECK(max_abs_diff(dagger(dagger(a)), a) == 0.0);
    CHECK(max_abs_diff(a - a, CMatrix(4, 4)) == 0.0);
    CHECK(max_abs_diff(Complex(2.0) * a, a + a) == 0.0);

    CHECK_THROWS_AS(CMatrix(2, 2) * CMatrix(3, 3), DimensionError);
    CHECK_THROWS_AS(CMatrix(2, 2) + CMatrix(2, 3), DimensionError);
    CHECK_THROWS_AS(trace(CMatrix(2, 3)), DimensionError);
}

TEST_CASE("non-finite entries are rejected") {
    CMatrix m = bell_projector();
    m(1, 1) = std::nan("");
    CHECK_FALSE(m.all_finite());
    CHECK_THROWS_AS(DensityMatrix(m, {L::A, L::R}), ValidationError);
}

TEST_CASE("hermitian eigenvalues") {
    const auto v = hermitian_eigenvalues(diag({3, 1, 2}));
    REQUIRE(v.size() == 3);
    CHECK(v[0] == doctest::Approx(1).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(2).epsilon(1e-15));
    CHECK(v[2] == doctest::Approx(3).epsilon(1e-15));

    const auto px = hermitian_eigenvalues(kX);
    CHECK(px[0] == doctest::Approx(-1));
    CHECK(px[1] == doctest::Approx(1));

    CMatrix nonherm{{0, 1}, {0, 0}};
    CHECK_THROWS_AS(hermitian_eigenvalues(nonherm), HermiticityError);
    try {
        hermitian_eigenvalues(nonherm);
    } catch (const HermiticityError& e) {
        CHECK(e.residual() == doctest::Approx(1.0));
    }
}

TEST_CASE("werner spectrum agrees with power sums") {
    // Bell-diagonal (0.8, -0.8, 0.8) has spectrum {0.05, 0.05, 0.05, 0.85}.
    const CMatrix rho = support::from_m4(oracle::x_state(0.8, -0.8, 0.8));
    const auto ev = hermitian_eigenvalues(rho);
    const std::array<double, 4> expected{0.05, 0.05, 0.05, 0.85};
    for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    const auto from_matrix = oracle::power_sums(support::to_m4(rho));
    const auto from_values = oracle::power_sums(std::array<double, 4>{ev[0], ev[1], ev[2], ev[3]});
    const auto from_expected = oracle::power_sums(expected);
    for (int k = 0; k < 4; ++k) {
        CHECK(from_values[k] == doctest::Approx(from_matrix[k]).epsilon(1e-12));
        CHECK(from_expected[k] == doctest::Approx(from_matrix[k]).epsilon(1e-12));
    }
}

TEST_CASE("property: random hermitian eigensystems") {
    oracle::Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.next() % 16;
        const CMatrix h = support::random_hermitian(rng, n);
        const EigenSystem es = hermitian_eigensystem(h);
        const double sum = std::accumulate(es.values.begin(), es.values.end(), 0.0);
        CHECK(std::abs(sum - trace(h).real()) <= 1e-9);
        CHECK(std::is_sorted(es.values.begin(), es.values.end()));

        CMatrix lambda(n, n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = es.values[i];
        CHECK(max_abs_diff(es.vectors * lambda * dagger(es.vectors), h) <= 1e-10);
        CHECK(max_abs_diff(dagger(es.vectors) * es.vectors, CMatrix::identity(n)) <= 1e-10);
    }
}

TEST_CASE("eigensolver handles 32x32 and degenerate spectra") {
    oracle::Rng rng(7);
    const CMatrix h = support::random_hermitian(rng, 32);
    const EigenSystem es = hermitian_eigensystem(h);
    CMatrix lambda(32, 32);
    for (std::size_t i = 0; i < 32; ++i) lambda(i, i) = es.values[i];
    CHECK(max_abs_diff(es.vectors * lambda * dagger(es.vectors), h) <= 1e-10);

    const auto ev = hermitian_eigenvalues(CMatrix::identity(8));
    for (double v : ev) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix(bell_projector(), {L::A, L::R}));
    CHECK_THROWS_AS(DensityMatrix(bell_projector(), {L::A}), DimensionError);
    CHECK_THROWS_AS(DensityMatrix(bell_projector(), {L::A, L::A}), LabelError);
    CHECK_THROWS_AS(DensityMatrix(Complex(1.0 / 3) * CMatrix::identity(3), {L::A, L::R}), DimensionError);

    // trace 2
    CHECK_THROWS_AS(DensityMatrix(Complex(2.0) * bell_projector(), {L::A, L::R}), NonphysicalError);
    CHECK_NOTHROW(DensityMatrix(Complex(2.0) * bell_projector(), {L::A, L::R}, Physicality::nonphysical));

    // negative eigenvalue
    CHECK_THROWS_AS(DensityMatrix(diag({1.2, -0.2}), {L::A}), NonphysicalError);
    CHECK_NOTHROW(DensityMatrix(diag({1.2, -0.2}), {L::A}, Physicality::nonphysical));

    CMatrix skew = bell_projector();
    skew(0, 3) = 0.6;
    CHECK_THROWS_AS(DensityMatrix(skew, {L::A, L::R}), HermiticityError);

    const DensityMatrix rho(bell_projector(), {L::EA, L::R});
    CHECK(rho.position(L::R) == 1);
    CHECK(rho.contains(L::EA));
    CHECK_FALSE(rho.contains(L::A));
    CHECK_THROWS_AS(rho.position(L::A), LabelError);
}

TEST_CASE("labels round-trip") {
    for (L l : {L::A, L::R, L::RII, L::EA, L::ER}) CHECK(parse_label(label_name(l)) == l);
    CHECK_THROWS_AS(parse_label("B"), LabelError);
}

TEST_CASE("partial trace examples") {
    const DensityMatrix bell(bell_projector(), {L::A, L::R});
    const DensityMatrix a = partial_trace(bell, {L::A});
    CHECK(max_abs_diff(a.matrix(), diag({0.5, 0.5})) <= 1e-15);

    oracle::Rng rng(3);
    const CMatrix ra = support::random_density(rng, 2), rb = support::random_density(rng, 4);
    const DensityMatrix prod(kron(ra, rb), {L::A, L::R, L::EA});
    CHECK(max_abs_diff(partial_trace(prod, {L::A}).matrix(), ra) <= 1e-15);
    CHECK(max_abs_diff(partial_trace(prod, {L::R, L::EA}).matrix(), rb) <= 1e-15);

    // keep order follows rho, not the argument
    const DensityMatrix all = partial_trace(prod, {L::EA, L::A, L::R});
    CHECK(all.subsystems() == std::vector<L>{L::A, L::R, L::EA});
    CHECK(max_abs_diff(all.matrix(), prod.matrix()) == 0.0);

    CHECK_THROWS_AS(partial_trace(prod, {L::ER}), LabelError);
    CHECK_THROWS_AS(partial_trace(prod, std::vector<L>{}), LabelError);
}

TEST_CASE("property: partial trace preserves trace and positivity") {
    oracle::Rng rng(11);
    const std::vector<L> labels{L::A, L::R, L::EA, L::ER};
    for (int trial = 0; trial < 40; ++trial) {
        const DensityMatrix rho(support::random_density(rng, 16, 1 + rng.next() % 16), labels);
        for (unsigned mask = 1; mask < 15; ++mask) {
            std::vector<L> keep;
            for (unsigned b = 0; b < 4; ++b)
                if (mask & (1u << b)) keep.push_back(labels[b]);
            const DensityMatrix red = partial_trace(rho, keep);
            CHECK(std::abs(trace(red.matrix()).real() - 1.0) <= 1e-12);
            CHECK(hermitian_eigenvalues(red.matrix()).front() >= -1e-12);
        }
    }
}

TEST_CASE("property: kron then trace out") {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const CMatrix a = support::random_matrix(rng, 4);
        const CMatrix b = support::random_hermitian(rng, 2);
        // a is not a state; use the nonphysical carrier to trace it.
        const CMatrix ah = Complex(0.5) * (a + dagger(a));
        const DensityMatrix joint(kron(ah, b), {L::A, L::R, L::ER}, Physicality::nonphysical);
        const CMatrix red = partial_trace(joint, {L::A, L::R}).matrix();
        CHECK(max_abs_diff(red, trace(b) * ah) <= 1e-12);
    }
}

TEST_CASE("reorder permutes subsystems") {
    oracle::Rng rng(9);
    const CMatrix ra = support::random_density(rng, 2), rb = support::random_density(rng, 2);
    const DensityMatrix ab(kron(ra, rb), {L::A, L::R});
    const std::vector<L> order{L::R, L::A};
    const DensityMatrix ba = reorder(ab, order);
    CHECK(ba.subsystems() == order);
    CHECK(max_abs_diff(ba.matrix(), kron(rb, ra)) <= 1e-15);
}

TEST_CASE("partial transpose") {
    const DensityMatrix bell(bell_projector(), {L::A, L::R});
    for (L on : {L::A, L::R}) {
        const CMatrix pt = partial_transpose(bell, on);
        CHECK(hermitian_eigenvalues(pt).front() == doctest::Approx(-0.5).epsilon(1e-12));
    }

    oracle::Rng rng(13);
    const DensityMatrix prod(kron(support::random_density(rng, 2), support::random_density(rng, 2)),
                             {L::A, L::R});
    CHECK(hermitian_eigenvalues(partial_transpose(prod, L::R)).front() >= -1e-12);
    CHECK_THROWS_AS(partial_transpose(prod, L::EA), LabelError);
}

TEST_CASE("property: partial transpose involution, trace and hermiticity") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho(support::random_density(rng, 8), {L::A, L::R, L::EA});
        const L on = std::array{L::A, L::R, L::EA}[rng.next() % 3];
        const CMatrix once = partial_transpose(rho, on);
        const DensityMatrix as_state(once, rho.subsystems(), Physicality::nonphysical);
        CHECK(max_abs_diff(partial_transpose(as_state, on), rho.matrix()) == 0.0);
        CHECK(std::abs(trace(once) - trace(rho.matrix())) <= 1e-14);
        CHECK(hermitian_residual(once) <= 1e-14);
    }
}

TEST_CASE("psd square root") {
    const DensityMatrix id4(Complex(0.25) * CMatrix::identity(4), {L::A, L::R});
    CHECK(max_abs_diff(psd_sqrt(id4), Complex(0.5) * CMatrix::identity(4)) <= 1e-15);

    const DensityMatrix d(diag({4, 9}), {L::A}, Physicality::nonphysical);
    CHECK(max_abs_diff(psd_sqrt(d), diag({2, 3})) <= 1e-12);

    const DensityMatrix pure(bell_projector(), {L::A, L::R});
    CHECK(max_abs_diff(psd_sqrt(pure), pure.matrix()) <= 1e-9);

    oracle::Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho(support::random_density(rng, 4, 1 + rng.next() % 4), {L::A, L::R});
        const CMatrix s = psd_sqrt(rho);
        CHECK(max_abs_diff(s * s, rho.matrix()) <= 1e-9);
    }

    // eigenvalue -0.2 only passes with the flag
    const DensityMatrix neg(diag({1.2, -0.2}), {L::A}, Physicality::nonphysical);
    CHECK_NOTHROW(psd_sqrt(neg));
}

TEST_CASE("diagnostics") {
    const Diagnostics mixed = diagnose(Complex(0.25) * CMatrix::identity(4));
    CHECK(mixed.hermitian_residual == 0.0);
    CHECK(mixed.trace_residual == doctest::Approx(0.0));
    CHECK(mixed.min_eigenvalue == doctest::Approx(0.25));

    const Diagnostics bell = diagnose(support::from_m4(oracle::x_state(1, -1, 1)));
    CHECK(std::abs(bell.min_eigenvalue) <= 1e-12);

    const Diagnostics bad = diagnose(support::from_m4(oracle::x_state(0.7, 0.9, 0.4)));
    CHECK(bad.min_eigenvalue < 0.0);

    CMatrix nonherm{{0, 1}, {0, 0}};
    CHECK_NOTHROW(diagnose(nonherm));
    CHECK(diagnose(nonherm).hermitian_residual == doctest::Approx(1.0));
}

TEST_CASE("lifted operators") {
    const CMatrix x_on_middle = lift_operator(kX, 3, 1);
    CHECK(max_abs_diff(x_on_middle, kron(CMatrix::identity(2), kron(kX, CMatrix::identity(2)))) == 0.0);

    // a 4x2 isometry on qubit 0 of 2, ancilla appended last
    CMatrix v(4, 2);
    v(0, 0) = 1.0;  // |0> -> |0,0>
    v(3, 1) = 1.0;  // |1> -> |1,1>
    const CMatrix lifted = lift_isometry(v, 2, 0);
    CHECK(lifted.rows() == 8);
    CHECK(lifted.cols() == 4);
    CHECK(max_abs_diff(dagger(lifted) * lifted, CMatrix::identity(4)) == 0.0);
    // |1 0> -> |1 0 1>
    CHECK(lifted(0b101, 0b10) == Complex(1.0));
    // |0 1> -> |0 1 0>
    CHECK(lifted(0b010, 0b01) == Complex(1.0));
}

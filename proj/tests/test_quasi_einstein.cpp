#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "affinelab/catalog.hpp"
#include "affinelab/quasi_einstein.hpp"
#include "support.hpp"

using namespace affinelab;

namespace {

QFunction rexp(double a1, double a2, std::array<double, 6> p = {1, 0, 0, 0, 0, 0}) { return QFunction::real_exp(a1, a2, p); }

bool near(const LinearForm& x, const LinearForm& y) { return std::abs(x.a1 - y.a1) + std::abs(x.a2 - y.a2) < 1e-12; }

double scale_of(const TypeAConnection& g) { return 1 + g.max_abs() * g.max_abs(); }

// span equality through the connection determined by the span
void check_same_span(const QBasis& x, const QBasis& y, double tol = 1e-8) {
    const TypeAConnection gx = connection_from_q(x), gy = connection_from_q(y);
    CHECK(distance(gx, gy) <= tol * scale_of(gx));
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InternalConsistency;
}

}  // namespace

TEST_CASE("jet matrices") {
    const JetMatrices jm = jet_matrices({0, 0, 0, 0, 0, 1});
    Eigen::Matrix3d a1, a2;
    a1 << 0, 1, 0, 0, 0, 0, 0, 0, 0;
    a2 << 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK((jm.a1 - a1).norm() == 0.0);
    CHECK((jm.a2 - a2).norm() == 0.0);
    const JetMatrices z = jet_matrices({});
    CHECK(z.a1.bottomRows(2).norm() == 0.0);
    CHECK(z.a2.bottomRows(2).norm() == 0.0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const JetMatrices m = jet_matrices(testing::random_connection(rng));
        const double a = std::max(m.a1.norm(), m.a2.norm());
        CHECK(m.commutator_norm() <= 1e-10 * (1 + a * a));
    }
}

TEST_CASE("residual") {
    const TypeAConnection g30{0, 0, 0, 0, 0, 1};
    CHECK(residual(g30, rexp(0, 1)) == 0.0);
    CHECK(residual(g30, rexp(0, 2)) == doctest::Approx(2));
    CHECK(residual(g30, rexp(0, 0, {0, 1, 0, 0, 0, 0})) == 0.0);
    CHECK(residual(g30, rexp(0, 0, {0, 0, 1, 0, 0, 0})) > 0.5);
}

TEST_CASE("solution spaces of the flat witnesses, one per case") {
    SUBCASE("three real exponentials") {
        const QBasis q = solve_quasi_einstein({-1, 0, 0, 0, 0, 1});
        CHECK(q.case_tag == CaseTag::ThreeRealExponentials);
        const auto e = real_exponentials(q);
        REQUIRE(e.size() == 3);
        CHECK(near(e[0], {-1, 0}));
        CHECK(near(e[1], {0, 0}));
        CHECK(near(e[2], {0, 1}));
        check_same_span(q, QBasis::make({rexp(0, 0), rexp(0, 1), rexp(-1, 0)}, CaseTag::ThreeRealExponentials));
    }
    SUBCASE("triple root") {
        const QBasis q = solve_quasi_einstein({0, 0, 0, 0, 1, 0});
        CHECK(q.case_tag == CaseTag::TripleRoot);
        CHECK(q.functions[0].degree() == 0);
        CHECK(q.functions[1].degree() == 1);
        CHECK(q.functions[2].degree() == 2);
        // x2^2 + 2 x1 up to scale
        const Poly2& p = q.functions[2].poly;
        CHECK(std::abs(p[kX1] / p[kX2X2] - 2.0) < 1e-12);
        CHECK(std::abs(p[kX1X1]) + std::abs(p[kX1X2]) < 1e-12);
    }
    SUBCASE("complex pair") {
        const QBasis q = solve_quasi_einstein({1, 0, 0, 1, -1, 0});
        CHECK(q.case_tag == CaseTag::ComplexPair);
        int cos_parts = 0, sin_parts = 0;
        for (const auto& f : q.functions) {
            if (f.real_form == RealForm::CosPart) {
                ++cos_parts;
                CHECK(std::abs(f.exponent[0] - Complex(1, 0)) < 1e-12);
                CHECK(std::abs(std::abs(f.exponent[1].imag()) - 1) < 1e-12);
            }
            if (f.real_form == RealForm::SinPart) ++sin_parts;
        }
        CHECK(cos_parts == 1);
        CHECK(sin_parts == 1);
    }
    SUBCASE("double root") {
        const QBasis q = solve_quasi_einstein({1, 0, 0, 1, 0, 0});
        CHECK(q.case_tag == CaseTag::DoubleRoot);
        check_same_span(q, QBasis::make({rexp(0, 0), rexp(1, 0), rexp(1, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::DoubleRoot));
    }
}

TEST_CASE("every generator solves the equation") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        const TypeAConnection g = testing::random_connection(rng);
        const QBasis q = solve_quasi_einstein(g);
        for (const auto& f : q.functions) {
            double size = 0;
            for (const auto& c : f.poly) size = std::max(size, std::abs(c));
            CHECK(residual(g, f) <= 1e-9 * (1 + g.max_abs()) * std::max(1.0, size) * scale_of(g));
        }
        CHECK(std::abs(q.jets.determinant()) > 1e-10 * q.jets.colwise().norm().prod());
    }
}

TEST_CASE("connection from solution space") {
    check_same_span(QBasis::make({rexp(0, 0), rexp(0, 0, {0, 1, 0, 0, 0, 0}), rexp(0, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::TripleRoot),
                    solve_quasi_einstein({}));
    const TypeAConnection zero =
        connection_from_q(QBasis::make({rexp(0, 0), rexp(0, 0, {0, 1, 0, 0, 0, 0}), rexp(0, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::TripleRoot));
    CHECK(zero.max_abs() <= 1e-14);
    const TypeAConnection g20 =
        connection_from_q(QBasis::make({rexp(0, 0), rexp(0, 1), rexp(-1, 0)}, CaseTag::ThreeRealExponentials));
    CHECK(distance(g20, TypeAConnection{-1, 0, 0, 0, 0, 1}) <= 1e-13);

    // not closed under differentiation: no connection has this solution space
    const QBasis bad = QBasis::make({rexp(0, 0), rexp(0, 0, {0, 0, 0, 1, 0, 0}), rexp(0, 1)}, CaseTag::TripleRoot);
    CHECK(kind_of([&] { connection_from_q(bad); }) == ErrorKind::Inconsistent);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const TypeAConnection g = testing::random_connection(rng);
        CHECK(distance(connection_from_q(solve_quasi_einstein(g)), g) <= 1e-8 * scale_of(g));
    }
}

TEST_CASE("equivariance under linear maps and projective shifts") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 100; ++i) {
        const TypeAConnection g = testing::random_connection(rng, 2);
        const LinearMap2 t = testing::random_map(rng);
        const LinearForm l = testing::random_form(rng);
        const QBasis q = solve_quasi_einstein(g);
        const TypeAConnection moved = pullback(g, t);
        CHECK(distance(connection_from_q(transform_q(q, t)), moved) <= 1e-8 * scale_of(moved));
        CHECK(distance(connection_from_q(solve_quasi_einstein(moved)), connection_from_q(transform_q(q, t))) <=
              1e-8 * scale_of(moved));
        const TypeAConnection shifted = projective_change(g, l);
        CHECK(distance(connection_from_q(scale_q(q, l)), shifted) <= 1e-8 * scale_of(shifted));
    }
}

TEST_CASE("documented transforms") {
    // Q(G3_0) composed with (x1, x2) -> (x2, -x1) is Span{1, x2, e^{-x1}}
    const TypeAConnection g30{0, 0, 0, 0, 0, 1};
    const LinearMap2 t{0, 1, -1, 0};
    const QBasis moved = transform_q(solve_quasi_einstein(g30), t);
    check_same_span(moved, QBasis::make({rexp(0, 0), rexp(0, 0, {0, 0, 1, 0, 0, 0}), rexp(-1, 0)}, CaseTag::DoubleRoot));
    CHECK(distance(connection_from_q(moved), pullback(g30, t)) <= 1e-13);

    // Q(G1_0) times e^{-x1} is Span{e^{-x1}, 1, x2}
    const QBasis scaled = scale_q(solve_quasi_einstein({1, 0, 0, 1, 0, 0}), {-1, 0});
    check_same_span(scaled, QBasis::make({rexp(-1, 0), rexp(0, 0), rexp(0, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::DoubleRoot));

    const QBasis same = transform_q(solve_quasi_einstein(g30), LinearMap2::identity());
    check_same_span(scale_q(same, {0, 0}), solve_quasi_einstein(g30));
}

TEST_CASE("flatten") {
    SUBCASE("zero connection") {
        const FlattenResult r = flatten({});
        CHECK(near(r.form, {0, 0}));
        CHECK(r.flat.max_abs() == 0.0);
    }
    SUBCASE("double-root rank-two family") {
        for (double a : {-2.0, 0.5, 3.0}) {
            const FlattenResult r = flatten({2, 0, 0, 1, a, 1});
            CHECK(r.form.a1 == doctest::Approx(1));
            CHECK(std::abs(r.form.a2) < 1e-12);
            CHECK(distance(r.flat, TypeAConnection{0, 0, 0, 0, a, 1}) <= 1e-12);
        }
    }
    SUBCASE("rank-one three-exponential family picks e^{c x2}") {
        for (double c : {0.5, 2.0}) {
            const FlattenResult r = flatten({-1, 0, c, 0, 0, 1 + 2 * c});
            CHECK(std::abs(r.form.a1) < 1e-12);
            CHECK(r.form.a2 == doctest::Approx(c));
            CHECK(distance(r.flat, TypeAConnection{-1, 0, 0, 0, 0, 1}) <= 1e-12);
        }
    }
    SUBCASE("random connections become flat") {
        std::mt19937_64 rng(15);
        for (int i = 0; i < 1000; ++i) {
            const TypeAConnection g = testing::random_connection(rng);
            CHECK(ricci(flatten(g).flat).max_abs() <= 1e-9 * scale_of(g));
        }
    }
}

TEST_CASE("rescaling by any pure exponential keeps the jets invertible") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 300; ++i) {
        const QBasis q = solve_quasi_einstein(testing::random_connection(rng));
        for (const LinearForm& l : real_exponentials(q)) {
            const QBasis r = scale_q(q, -l);
            CHECK(std::abs(r.jets.determinant()) > 1e-10 * r.jets.colwise().norm().prod());
        }
    }
}

TEST_CASE("jet propagation") {
    const Eigen::Vector3d v0(0.3, -1, 2);
    CHECK((propagate_jet({1, 2, 3, 4, 5, 6}, {0, 0}, v0) - v0).norm() == 0.0);
    const Eigen::Vector3d e = propagate_jet({0, 0, 0, 0, 0, 1}, {0, 1}, {1, 0, 1});
    CHECK(e(0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(std::abs(e(1)) < 1e-12);
    CHECK(e(2) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 100; ++i) {
        const TypeAConnection g = testing::random_connection(rng, 1.5);
        const QBasis q = solve_quasi_einstein(g);
        const Eigen::Vector2d x(u(rng), u(rng));
        for (int k = 0; k < 3; ++k) {
            const Eigen::Vector3d want = q.functions[k].jet(x(0), x(1));
            const double size = 1 + want.norm();
            CHECK((propagate_jet_exact(g, x, q.jets.col(k)) - want).norm() <= 1e-8 * size);
            CHECK((propagate_jet(g, x, q.jets.col(k), 400) - want).norm() <= 1e-8 * size);
        }
    }
}

TEST_CASE("string tags") {
    for (auto tag : {CaseTag::ThreeRealExponentials, CaseTag::ComplexPair, CaseTag::DoubleRoot, CaseTag::TripleRoot}) {
        CHECK(case_tag_from_string(to_string(tag)) == tag);
    }
    for (auto rf : {RealForm::PureReal, RealForm::CosPart, RealForm::SinPart}) CHECK(real_form_from_string(to_string(rf)) == rf);
    CHECK(to_string(RealForm::CosPart) == "cos-part");
    CHECK_THROWS_AS(case_tag_from_string("nope"), Error);
}

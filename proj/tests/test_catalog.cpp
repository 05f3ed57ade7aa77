#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "affinelab/catalog.hpp"
#include "affinelab/json_io.hpp"
#include "affinelab/moduli.hpp"
#include "affinelab/quasi_einstein.hpp"

using namespace affinelab;

namespace {

std::string violation(const FamilyId& id) {
    try {
        construct(id);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainViolation);
        return e.what();
    }
    FAIL("expected DomainViolation for " << id.label());
    return "";
}

}  // namespace

TEST_CASE("documented constructions") {
    const CatalogEntry q = construct({Family::Gq2, {1}});
    CHECK(q.connection == TypeAConnection{2, 0, 0, 1, 1, 0});
    CHECK(distance(q.published_rho, SymmetricBilinear2{1, 0, 1}) == 0.0);
    REQUIRE(q.published_psi);
    CHECK(q.published_psi->psi == 7);
    CHECK(q.published_psi->Psi == 10);

    const CatalogEntry g5 = construct({Family::G5_1, {0}});
    CHECK(g5.connection == TypeAConnection{1, 0, 0, 0, 1, 0});
    CHECK(distance(g5.published_rho, SymmetricBilinear2{0, 0, 1}) == 0.0);

    const CatalogEntry r = construct({Family::Gr2, {2, 3}});
    CHECK(distance(r.connection, TypeAConnection{(4 + 3 - 1) / 4.0, 2 / 4.0, 6 / 4.0, 6 / 4.0, 6 / 4.0, (2 + 9 - 1) / 4.0}) == 0.0);
    CHECK(construct({Family::G2_1, {0.5}}).connection == TypeAConnection{-1, 0, 0.5, 0, 0, 2});
    CHECK(construct({Family::G0_0, {}}).connection == TypeAConnection{});
    CHECK(construct({Family::G5_0, {}}).connection == TypeAConnection{1, 0, 0, 1, -1, 0});
}

TEST_CASE("parameter domains are enforced strictly") {
    CHECK(violation({Family::Gr2, {0.25, 0.75}}).find("a1 + a2 != 1") != std::string::npos);
    CHECK(violation({Family::Gr2, {0, 2}}).find("a1 a2 != 0") != std::string::npos);
    CHECK(violation({Family::Gc2, {1, 2}}).find("b1 != 1") != std::string::npos);
    CHECK(violation({Family::Gc2, {0, 0}}).find("(b1, b2) != (0, 0)") != std::string::npos);
    CHECK(violation({Family::Gp2, {0}}).find("a != 0") != std::string::npos);
    CHECK(violation({Family::Gq2, {0.5}}).find("+1, -1") != std::string::npos);
    CHECK(violation({Family::G2_1, {0}}).find("c not in {0, -1}") != std::string::npos);
    CHECK(violation({Family::G3_1, {-1}}).find("c not in {0, -1}") != std::string::npos);
    CHECK(violation({Family::G1_1, {2}}).find("parameter") != std::string::npos);
    CHECK(violation({Family::Gr2, {1}}).find("parameter") != std::string::npos);
    // the rank-one double-root family is fine at c = 1
    CHECK_NOTHROW(construct({Family::G3_1, {1}}));
    CHECK_NOTHROW(construct({Family::G4_1, {0}}));
}

TEST_CASE("grid enumeration") {
    int flats = 0;
    for (Family f : {Family::G0_0, Family::G1_0, Family::G2_0, Family::G3_0, Family::G4_0, Family::G5_0}) {
        flats += static_cast<int>(enumerate_for_tests(default_grid(f)).size());
    }
    CHECK(flats == 6);
    CHECK(enumerate_for_tests({Family::G2_1, {-3, -2, -0.5, 0.5, 1, 2}, {}}).size() == 6);
    CHECK(enumerate_for_tests({Family::G2_1, {-1, 0, 1}, {}}).size() == 1);

    const auto gr2 = enumerate_for_tests(default_grid(Family::Gr2));
    CHECK(gr2.size() == 32);
    for (const auto& e : gr2) CHECK(rank_signature(ricci(e.connection), 1e-9).rank == 2);

    // deterministic order
    const auto again = enumerate_for_tests(default_grid(Family::Gr2));
    for (std::size_t i = 0; i < gr2.size(); ++i) CHECK(gr2[i].family.params == again[i].family.params);
}

TEST_CASE("every catalog entry matches its published data") {
    for (const CatalogEntry& e : enumerate_all()) {
        INFO(e.family.label());
        const double scale = 1 + e.connection.max_abs() * e.connection.max_abs();
        CHECK(distance(ricci(e.connection), e.published_rho) <= 1e-12 * scale);
        for (const auto& f : e.published_q.functions) CHECK(residual(e.connection, f) <= 1e-9 * scale);
        CHECK(distance(connection_from_q(e.published_q), e.connection) <= 1e-8 * scale);
        const QBasis solved = solve_quasi_einstein(e.connection);
        CHECK(solved.case_tag == e.published_q.case_tag);
        CHECK(distance(connection_from_q(solved), connection_from_q(e.published_q)) <= 1e-8 * scale);
        if (e.published_psi) {
            const PsiPair p = psi_Psi(e.connection);
            CHECK(std::abs(p.psi - e.published_psi->psi) <= 1e-10 * (1 + std::abs(p.psi)));
            CHECK(std::abs(p.Psi - e.published_psi->Psi) <= 1e-10 * (1 + std::abs(p.Psi)));
        }
        if (e.published_alpha) {
            const AlphaPair a = alpha_epsilon(e.connection);
            CHECK(std::abs(a.alpha - e.published_alpha->alpha) <= 1e-10 * (1 + std::abs(a.alpha)));
            CHECK(a.epsilon == e.published_alpha->epsilon);
        }
    }
}

TEST_CASE("names round trip and the shipped family table is current") {
    for (Family f : all_families()) CHECK(family_from_string(to_string(f)) == f);
    CHECK(all_families().size() == 15);
    CHECK_THROWS_AS(family_from_string("G9_9"), Error);

    std::ifstream in(AFFINELAB_SOURCE_DIR "/data/families.json");
    REQUIRE(in.good());
    std::stringstream s;
    s << in.rdbuf();
    CHECK(parse_json(s.str()) == families_json());
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affinelab/quasi_einstein.hpp"
#include "affinelab/tensor_core.hpp"

namespace affinelab {

enum class Family {
    Gr2, Gc2, Gp2, Gq2,
    G1_1, G2_1, G3_1, G4_1, G5_1,
    G0_0, G1_0, G2_0, G3_0, G4_0, G5_0,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);
const std::vector<Family>& all_families();
std::size_t parameter_count(Family f);

/// Named family with 0-2 parameters, e.g. {Gr2, {2, 3}}.
struct FamilyId {
    Family name = Family::G0_0;
    std::vector<double> params;

    std::string label() const;
};

/// Textual summary of the parameter domain, e.g. "a1 + a2 != 1 and a1 a2 != 0".
std::string parameter_domain(Family f);
/// What characterises the family's solution space, used in messages and JSON.
std::string family_description(Family f);

/// Throws DomainViolation naming the violated constraint.
void check_domain(const FamilyId& id);

struct PsiPair {
    double psi = 0;
    double Psi = 0;
};

struct AlphaPair {
    double alpha = 0;
    int epsilon = 1;
};

struct CatalogEntry {
    FamilyId family;
    TypeAConnection connection;
    QBasis published_q;
    SymmetricBilinear2 published_rho;
    std::optional<PsiPair> published_psi;
    std::optional<AlphaPair> published_alpha;
};

/// Connection constants of the family without domain checks.
TypeAConnection family_connection(const FamilyId& id);

CatalogEntry construct(const FamilyId& id);

/// Parameter grid for one family; one-parameter families use `first` only.
struct GridSpec {
    Family family = Family::G0_0;
    std::vector<double> first;
    std::vector<double> second;
};

/// Deterministic enumeration (row-major over the grid); excluded parameter
/// values are skipped.
std::vector<CatalogEntry> enumerate_for_tests(const GridSpec& grid);

/// The documented test grid of each family.
GridSpec default_grid(Family f);

/// Every family over its default grid.
std::vector<CatalogEntry> enumerate_all();

}  // namespace affinelab

#include "affinelab/catalog.hpp"

#include <cmath>
#include <sstream>

namespace affinelab {

namespace {

struct FamilyInfo {
    Family family;
    const char* name;
    std::size_t params;
    const char* domain;
    const char* description;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::Gr2, "Gr2", 2, "a1 + a2 != 1 and a1 a2 != 0",
     "three real exponentials, non-degenerate Ricci: Q = Span{e^x1, e^x2, e^(a1 x1 + a2 x2)}"},
    {Family::Gc2, "Gc2", 2, "b1 != 1 and (b1, b2) != (0, 0)",
     "complex exponential pair, non-degenerate Ricci: Q = Span{e^x1 cos x2, e^x1 sin x2, e^(b1 x1 + b2 x2)}"},
    {Family::Gp2, "Gp2", 1, "a != 0", "double root, non-degenerate Ricci: Q = e^x1 Span{1, x1 - a x2, e^x2}"},
    {Family::Gq2, "Gq2", 1, "param in {+1, -1}",
     "triple root, non-degenerate Ricci: Q = e^x1 Span{1, x2, 2 x1 +/- x2^2}"},
    {Family::G1_1, "G1_1", 0, "no parameters", "rank-one Ricci: Q = Span{e^(-x1 + x2), e^x2, x2 e^x2}"},
    {Family::G2_1, "G2_1", 1, "c not in {0, -1}", "rank-one Ricci: Q = Span{e^(c x2), e^((1 + c) x2), e^(-x1 + c x2)}"},
    {Family::G3_1, "G3_1", 1, "c not in {0, -1}", "rank-one Ricci: Q = Span{e^(c x2), x1 e^(c x2), e^((1 + c) x2)}"},
    {Family::G4_1, "G4_1", 1, "any c", "rank-one Ricci: Q = e^x2 Span{1, x2, 2 x1 + c x2^2}"},
    {Family::G5_1, "G5_1", 1, "any c", "rank-one Ricci: Q = Span{e^(c x2) cos x2, e^(c x2) sin x2, e^x1}"},
    {Family::G0_0, "G0_0", 0, "no parameters", "flat: Q = Span{1, x1, x2}"},
    {Family::G1_0, "G1_0", 0, "no parameters", "flat: Q = Span{1, e^x1, x2 e^x1}"},
    {Family::G2_0, "G2_0", 0, "no parameters", "flat: Q = Span{1, e^-x1, e^x2}"},
    {Family::G3_0, "G3_0", 0, "no parameters", "flat: Q = Span{1, x1, e^x2}"},
    {Family::G4_0, "G4_0", 0, "no parameters", "flat: Q = Span{1, x2, x2^2 + 2 x1}"},
    {Family::G5_0, "G5_0", 0, "no parameters", "flat: Q = Span{1, e^x1 cos x2, e^x1 sin x2}"},
};

const FamilyInfo& info(Family f) {
    for (const auto& i : kFamilies) {
        if (i.family == f) return i;
    }
    throw Error(ErrorKind::InternalConsistency, "unknown family");
}

// exclusions are exact: the hypotheses of the classification are sharp
constexpr double kExclusion = 1e-12;

[[noreturn]] void violate(const FamilyId& id, const std::string& what) {
    throw Error(ErrorKind::DomainViolation,
                id.label() + " violates its parameter domain: requires " + what + " (" + family_description(id.name) + ")");
}

QFunction cexp(Complex a1, Complex a2, RealForm rf) {
    QFunction f;
    f.exponent = {a1, a2};
    f.poly = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    f.real_form = rf;
    return f;
}

QBasis published_q(const FamilyId& id) {
    using Q = QFunction;
    const auto& p = id.params;
    auto real = [](double a1, double a2, std::array<double, 6> poly = {1, 0, 0, 0, 0, 0}) { return Q::real_exp(a1, a2, poly); };
    switch (id.name) {
        case Family::Gr2:
            return QBasis::make({real(1, 0), real(0, 1), real(p[0], p[1])}, CaseTag::ThreeRealExponentials);
        case Family::Gc2:
            return QBasis::make({cexp(1.0, Complex(0, 1), RealForm::CosPart), cexp(1.0, Complex(0, 1), RealForm::SinPart),
                                 real(p[0], p[1])},
                                CaseTag::ComplexPair);
        case Family::Gp2:
            return QBasis::make({real(1, 0), real(1, 0, {0, 1, -p[0], 0, 0, 0}), real(1, 1)}, CaseTag::DoubleRoot);
        case Family::Gq2:
            return QBasis::make({real(1, 0), real(1, 0, {0, 0, 1, 0, 0, 0}), real(1, 0, {0, 2, 0, 0, 0, p[0]})},
                                CaseTag::TripleRoot);
        case Family::G1_1:
            return QBasis::make({real(-1, 1), real(0, 1), real(0, 1, {0, 0, 1, 0, 0, 0})}, CaseTag::DoubleRoot);
        case Family::G2_1:
            return QBasis::make({real(0, p[0]), real(0, 1 + p[0]), real(-1, p[0])}, CaseTag::ThreeRealExponentials);
        case Family::G3_1:
            return QBasis::make({real(0, p[0]), real(0, p[0], {0, 1, 0, 0, 0, 0}), real(0, 1 + p[0])}, CaseTag::DoubleRoot);
        case Family::G4_1:
            return QBasis::make({real(0, 1), real(0, 1, {0, 0, 1, 0, 0, 0}), real(0, 1, {0, 2, 0, 0, 0, p[0]})},
                                CaseTag::TripleRoot);
        case Family::G5_1:
            return QBasis::make({cexp(0.0, Complex(p[0], 1), RealForm::CosPart), cexp(0.0, Complex(p[0], 1), RealForm::SinPart),
                                 real(1, 0)},
                                CaseTag::ComplexPair);
        case Family::G0_0:
            return QBasis::make({real(0, 0), real(0, 0, {0, 1, 0, 0, 0, 0}), real(0, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::TripleRoot);
        case Family::G1_0:
            return QBasis::make({real(0, 0), real(1, 0), real(1, 0, {0, 0, 1, 0, 0, 0})}, CaseTag::DoubleRoot);
        case Family::G2_0:
            return QBasis::make({real(0, 0), real(0, 1), real(-1, 0)}, CaseTag::ThreeRealExponentials);
        case Family::G3_0:
            return QBasis::make({real(0, 0), real(0, 0, {0, 1, 0, 0, 0, 0}), real(0, 1)}, CaseTag::DoubleRoot);
        case Family::G4_0:
            return QBasis::make({real(0, 0), real(0, 0, {0, 0, 1, 0, 0, 0}), real(0, 0, {0, 2, 0, 0, 0, 1})}, CaseTag::TripleRoot);
        case Family::G5_0:
            return QBasis::make({real(0, 0), cexp(1.0, Complex(0, 1), RealForm::CosPart), cexp(1.0, Complex(0, 1), RealForm::SinPart)},
                                CaseTag::ComplexPair);
    }
    throw Error(ErrorKind::InternalConsistency, "unknown family");
}

SymmetricBilinear2 published_rho(const FamilyId& id) {
    const auto& p = id.params;
    switch (id.name) {
        case Family::Gr2: {
            const double a1 = p[0], a2 = p[1], s = a1 + a2 - 1;
            return {(a1 * a1 - a1) / s, a1 * a2 / s, (a2 * a2 - a2) / s};
        }
        case Family::Gc2: return {p[0], p[1], (p[0] + p[1] * p[1]) / (p[0] - 1)};
        case Family::Gp2: return {1, 0, p[0]};
        case Family::Gq2: return {1, 0, p[0]};
        case Family::G1_1: return {0, 0, 1};
        case Family::G2_1:
        case Family::G3_1: return {0, 0, p[0] + p[0] * p[0]};
        case Family::G4_1: return {0, 0, 1};
        case Family::G5_1: return {0, 0, 1 + p[0] * p[0]};
        default: return {0, 0, 0};
    }
}

std::optional<PsiPair> published_psi(const FamilyId& id) {
    const auto& p = id.params;
    switch (id.name) {
        case Family::Gr2: {
            const double a1 = p[0], a2 = p[1], den = a1 * a2;
            const double psi = (a1 - a1 * a1 + a2 + 4 * a1 * a2 + a1 * a1 * a2 - a2 * a2 + a1 * a2 * a2) / den;
            const double Psi = (1 + a1 - a1 * a1 - a1 * a1 * a1 + a2 + 4 * a1 * a2 + a1 * a1 * a2 - a2 * a2 + a1 * a2 * a2 -
                                a2 * a2 * a2) / den;
            return PsiPair{psi, Psi};
        }
        case Family::Gc2: {
            const double b1 = p[0], b2 = p[1], den = b1 * b1 + b2 * b2;
            return PsiPair{(2 * b1 * b1 + b1 * b1 * b1 + 6 * b2 * b2 + 4 * b1 + b1 * b2 * b2) / den,
                           2 * (2 + b1 * b1 + 3 * b2 * b2 + 2 * b1 + 2 * b1 * b2 * b2) / den};
        }
        case Family::Gp2: return PsiPair{7 + 1 / p[0], 10 + 4 / p[0]};
        case Family::Gq2: return PsiPair{7, 10};
        default: return std::nullopt;
    }
}

std::optional<AlphaPair> published_alpha(const FamilyId& id) {
    const auto& p = id.params;
    switch (id.name) {
        case Family::G1_1:
        case Family::G4_1: return AlphaPair{16, 1};
        case Family::G2_1:
        case Family::G3_1: {
            const double c = p[0], s = c * c + c;
            return AlphaPair{4 * (1 + 2 * c) * (1 + 2 * c) / s, s > 0 ? 1 : -1};
        }
        case Family::G5_1: return AlphaPair{16 * p[0] * p[0] / (1 + p[0] * p[0]), 1};
        default: return std::nullopt;
    }
}

}  // namespace

std::string to_string(Family f) { return info(f).name; }

Family family_from_string(const std::string& s) {
    for (const auto& i : kFamilies) {
        if (s == i.name) return i.family;
    }
    throw Error(ErrorKind::MalformedInput, "unknown family '" + s + "'");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families = [] {
        std::vector<Family> out;
        for (const auto& i : kFamilies) out.push_back(i.family);
        return out;
    }();
    return families;
}

std::size_t parameter_count(Family f) { return info(f).params; }
std::string parameter_domain(Family f) { return info(f).domain; }
std::string family_description(Family f) { return info(f).description; }

std::string FamilyId::label() const {
    std::ostringstream out;
    out.precision(17);
    out << to_string(name);
    if (!params.empty()) {
        out << "(";
        for (std::size_t i = 0; i < params.size(); ++i) out << (i ? ", " : "") << params[i];
        out << ")";
    }
    return out.str();
}

void check_domain(const FamilyId& id) {
    if (id.params.size() != parameter_count(id.name)) {
        std::ostringstream msg;
        msg << to_string(id.name) << " takes " << parameter_count(id.name) << " parameter(s), got " << id.params.size();
        throw Error(ErrorKind::DomainViolation, msg.str());
    }
    for (double v : id.params) {
        if (!std::isfinite(v)) violate(id, "finite parameters");
    }
    const auto& p = id.params;
    switch (id.name) {
        case Family::Gr2:
            if (std::abs(p[0] + p[1] - 1) <= kExclusion) violate(id, "a1 + a2 != 1");
            if (std::abs(p[0] * p[1]) <= kExclusion) violate(id, "a1 a2 != 0");
            break;
        case Family::Gc2:
            if (std::abs(p[0] - 1) <= kExclusion) violate(id, "b1 != 1");
            if (std::abs(p[0]) <= kExclusion && std::abs(p[1]) <= kExclusion) violate(id, "(b1, b2) != (0, 0)");
            break;
        case Family::Gp2:
            if (std::abs(p[0]) <= kExclusion) violate(id, "a != 0");
            break;
        case Family::Gq2:
            if (p[0] != 1.0 && p[0] != -1.0) violate(id, "param in {+1, -1}");
            break;
        case Family::G2_1:
        case Family::G3_1:
            if (std::abs(p[0]) <= kExclusion || std::abs(p[0] + 1) <= kExclusion) violate(id, "c not in {0, -1}");
            break;
        default: break;
    }
}

TypeAConnection family_connection(const FamilyId& id) {
    const auto& p = id.params;
    switch (id.name) {
        case Family::Gr2: {
            // numerators first, one division at the end
            const double a1 = p[0], a2 = p[1], s = a1 + a2 - 1;
            return {(a1 * a1 + a2 - 1) / s, (a1 * a1 - a1) / s, a1 * a2 / s, a1 * a2 / s, (a2 * a2 - a2) / s,
                    (a1 + a2 * a2 - 1) / s};
        }
        case Family::Gc2: return {1 + p[0], 0, p[1], 1, (1 + p[1] * p[1]) / (p[0] - 1), 0};
        case Family::Gp2: return {2, 0, 0, 1, p[0], 1};
        case Family::Gq2: return {2, 0, 0, 1, p[0], 0};
        case Family::G1_1: return {-1, 0, 1, 0, 0, 2};
        case Family::G2_1: return {-1, 0, p[0], 0, 0, 1 + 2 * p[0]};
        case Family::G3_1: return {0, 0, p[0], 0, 0, 1 + 2 * p[0]};
        case Family::G4_1: return {0, 0, 1, 0, p[0], 2};
        case Family::G5_1: return {1, 0, 0, 0, 1 + p[0] * p[0], 2 * p[0]};
        case Family::G0_0: return {0, 0, 0, 0, 0, 0};
        case Family::G1_0: return {1, 0, 0, 1, 0, 0};
        case Family::G2_0: return {-1, 0, 0, 0, 0, 1};
        case Family::G3_0: return {0, 0, 0, 0, 0, 1};
        case Family::G4_0: return {0, 0, 0, 0, 1, 0};
        case Family::G5_0: return {1, 0, 0, 1, -1, 0};
    }
    throw Error(ErrorKind::InternalConsistency, "unknown family");
}

CatalogEntry construct(const FamilyId& id) {
    check_domain(id);
    CatalogEntry e;
    e.family = id;
    e.connection = family_connection(id);
    e.published_q = published_q(id);
    e.published_rho = published_rho(id);
    e.published_psi = published_psi(id);
    e.published_alpha = published_alpha(id);
    return e;
}

std::vector<CatalogEntry> enumerate_for_tests(const GridSpec& grid) {
    std::vector<CatalogEntry> out;
    const std::size_t n = parameter_count(grid.family);
    auto push = [&](std::vector<double> params) {
        FamilyId id{grid.family, std::move(params)};
        try {
            check_domain(id);
        } catch (const Error&) {
            return;
        }
        out.push_back(construct(id));
    };
    if (n == 0) {
        push({});
    } else if (n == 1) {
        for (double v : grid.first) push({v});
    } else {
        for (double u : grid.first)
            for (double v : grid.second) push({u, v});
    }
    return out;
}

GridSpec default_grid(Family f) {
    switch (f) {
        case Family::Gr2: return {f, {-3, -2, -1, 0, 1, 2, 3}, {-3, -2, -1, 0, 1, 2, 3}};
        case Family::Gc2: return {f, {-2, -1, -0.5, 0, 0.5, 2, 3}, {-2, -1, 0, 1, 2}};
        case Family::Gp2: return {f, {-3, -2, -1, -0.5, 0.5, 1, 2, 3}, {}};
        case Family::Gq2: return {f, {1, -1}, {}};
        case Family::G2_1:
        case Family::G3_1: return {f, {-3, -2, -0.5, 0.5, 1, 2}, {}};
        case Family::G4_1: return {f, {-2, -1, 0, 0.5, 1, 3}, {}};
        case Family::G5_1: return {f, {-2, -1, -0.5, 0, 0.5, 1, 2}, {}};
        default: return {f, {}, {}};
    }
}

std::vector<CatalogEntry> enumerate_all() {
    std::vector<CatalogEntry> out;
    for (Family f : all_families()) {
        auto part = enumerate_for_tests(default_grid(f));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace affinelab

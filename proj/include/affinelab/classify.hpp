#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affinelab/catalog.hpp"
#include "affinelab/moduli.hpp"
#include "affinelab/quasi_einstein.hpp"
#include "affinelab/tensor_core.hpp"

namespace affinelab {

struct NormalFormResult {
    FamilyId family;
    /// pullback(input, witness) equals the family connection.
    LinearMap2 witness;
    /// Set when the reduction first divides the solution space by e^L.
    std::optional<LinearForm> pre_shift;
    CaseTag case_tag = CaseTag::ThreeRealExponentials;
    int rank = 0;
    double verification_residual = 0;
};

/// Canonical representative of the linear equivalence class. Throws
/// WitnessVerificationFailed if the assembled witness does not reproduce the
/// catalog connection.
NormalFormResult normal_form(const TypeAConnection& conn, const Tolerances& tol = {});

/// Distinct images of (a1, a2) under the six relabelings.
std::vector<std::pair<double, double>> s3_orbit(double a1, double a2, double tol = 1e-12);

/// Lexicographically greatest orbit member, ties within `tol` decided by the
/// next coordinate.
std::pair<double, double> canonical_s3(double a1, double a2, double tol = 1e-7);

struct LinearDecision {
    bool equivalent = false;
    /// pullback(first input, witness) = second input.
    std::optional<LinearMap2> witness;
    /// Largest canonical parameter difference; infinite across families.
    double margin = 0;
    std::string reason;
    NormalFormResult first;
    NormalFormResult second;
};

LinearDecision linear_equivalent(const TypeAConnection& c1, const TypeAConnection& c2, const Tolerances& tol = {});

struct AffineDecision {
    bool equivalent = false;
    double margin = 0;
    std::string reason;
    InvariantReport first;
    InvariantReport second;
    /// Linear decision for rank-2 pairs; it must agree with `equivalent`.
    std::optional<bool> linear_cross_check;
};

AffineDecision affine_equivalent(const TypeAConnection& c1, const TypeAConnection& c2, const Tolerances& tol = {});

struct FlatNeighbor {
    LinearForm form;
    TypeAConnection connection;
    NormalFormResult normal_form;
    /// Intertwiner T with pullback(target, T) = connection, when one is listed.
    std::optional<LinearMap2> listed_map;
    std::optional<Family> listed_target;
    double listed_residual = 0;
};

/// All linear forms L for which projective_change(flat family i, L) stays
/// flat, each classified. These are exactly L = -ell for the real exponents
/// ell of the family's solution space.
std::vector<FlatNeighbor> flat_projective_neighbors(int index, const Tolerances& tol = {});

/// Affine vector fields (p0 + p1 x1 + p2 x2) d1 + (q0 + q1 x1 + q2 x2) d2,
/// stored as {p0, p1, p2, q0, q1, q2}.
struct KillingBasis {
    std::vector<std::array<double, 6>> generators;
    int dim = 0;
    double max_residual = 0;
};

/// The 6 x 4 system for the linear part of X, used by the solver and tests.
Eigen::Matrix<double, 6, 4> killing_system(const TypeAConnection& conn);

KillingBasis killing_affine(const TypeAConnection& conn, const Tolerances& tol = {});

}  // namespace affinelab

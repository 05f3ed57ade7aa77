#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "affinelab/catalog.hpp"
#include "affinelab/tensor_core.hpp"

namespace affinelab {

struct InvariantReport {
    int rank = 0;
    Signature signature = Signature::Degenerate;
    std::optional<double> psi;
    std::optional<double> Psi;
    std::optional<double> alpha;
    std::optional<int> epsilon;
    bool flat = false;
};

/// rho_v,ij = G_ik^l G_jl^k.
SymmetricBilinear2 rho_v(const TypeAConnection& conn);

/// Throws DegenerateRicci unless rho is non-degenerate.
PsiPair psi_Psi(const TypeAConnection& conn, const Tolerances& tol = {});

/// alpha_X for one direction; throws DegenerateRicci if rho(X, X) vanishes.
double alpha_for_direction(const TypeAConnection& conn, const Eigen::Vector2d& x);

/// Uses the unit eigenvector of the non-zero Ricci eigenvalue, plus one
/// spot check along a second direction. Throws DegenerateRicci unless rank 1.
AlphaPair alpha_epsilon(const TypeAConnection& conn, const Tolerances& tol = {});

/// Fields appropriate to the rank; never throws for rank reasons.
InvariantReport invariants(const TypeAConnection& conn, const Tolerances& tol = {});

/// Boundary curves of the definite regions in the (psi, Psi) plane.
PsiPair sigma_ell(double t);
PsiPair sigma_r(double t);
/// (7, 10) + sign t (1, 4), t >= 0.
PsiPair exceptional_ray(int sign, double t);

/// Region tag from the signs of det and trace.
Signature region_from(double det_rho, double tr_rho);

/// Images of (a1, a2) under the six relabelings, tagged "s123", "s213",
/// "s132", "s321", "s231", "s312"; images needing division by zero are skipped.
std::vector<std::pair<std::string, std::pair<double, double>>> s3_images(double a1, double a2);

/// Whether (x, y) lies in the fundamental triangle/wedge for the region.
bool in_fundamental_domain(Signature region, double x, double y);

/// Label of the relabeling that moves the point into the fundamental domain
/// of its region, or "none" when the orbit misses it.
std::string chamber_of(double a1, double a2);

struct FigureRow {
    FamilyId family;
    double det_rho = 0;
    double tr_rho = 0;
    Signature region = Signature::Degenerate;
    std::string chamber;
    double psi = 0;
    double Psi = 0;
};

/// Rows in grid order; entries with degenerate Ricci are skipped.
std::vector<FigureRow> region_sample(const GridSpec& grid, const Tolerances& tol = {});

/// Datasets behind the CLI figures: "moduli" covers all rank-2 families,
/// "domains" the three-exponential parameter plane.
std::vector<FigureRow> figure_rows(const std::string& name, const Tolerances& tol = {});

void write_csv(std::ostream& out, const std::vector<FigureRow>& rows);
/// Scatter in the (psi, Psi) plane with the boundary curves and rays, or the
/// parameter plane with the six lines when `parameter_plane` is set.
void write_svg(std::ostream& out, const std::vector<FigureRow>& rows, bool parameter_plane);

}  // namespace affinelab

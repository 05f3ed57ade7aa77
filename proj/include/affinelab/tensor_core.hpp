#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "affinelab/errors.hpp"
#include "affinelab/tolerances.hpp"

namespace affinelab {

/// Constant Christoffel symbols on R^2, Gamma_{ij}^k with
///   G_11^1 = a, G_11^2 = b, G_12^1 = G_21^1 = c,
///   G_12^2 = G_21^2 = d, G_22^1 = e, G_22^2 = f.
struct TypeAConnection {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    static TypeAConnection from_array(const std::array<double, 6>& g);
    std::array<double, 6> to_array() const { return {a, b, c, d, e, f}; }

    /// Gamma_{ij}^k with zero-based indices.
    double christoffel(int i, int j, int k) const;

    double max_abs() const;
    bool is_finite() const;

    friend bool operator==(const TypeAConnection&, const TypeAConnection&) = default;
};

/// Largest componentwise difference.
double distance(const TypeAConnection& x, const TypeAConnection& y);

struct SymmetricBilinear2 {
    double r11 = 0, r12 = 0, r22 = 0;

    Eigen::Matrix2d matrix() const;
    static SymmetricBilinear2 from_matrix(const Eigen::Matrix2d& m);
    double operator()(const Eigen::Vector2d& x, const Eigen::Vector2d& y) const;
    double det() const { return r11 * r22 - r12 * r12; }
    double trace() const { return r11 + r22; }
    double max_abs() const;
};

double distance(const SymmetricBilinear2& x, const SymmetricBilinear2& y);

/// Totally symmetric 3-tensor, t_{ijk} stored by index multiset.
struct CubicSymmetricTensor {
    double t111 = 0, t112 = 0, t122 = 0, t222 = 0;

    /// t(X, X, X).
    double cube(const Eigen::Vector2d& x) const;
    double max_abs() const;
};

/// Linear coordinate change x_old = T x_new.
struct LinearMap2 {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    static LinearMap2 identity() { return {}; }
    static LinearMap2 from_matrix(const Eigen::Matrix2d& m);
    Eigen::Matrix2d matrix() const;
    double det() const { return m11 * m22 - m12 * m21; }
    LinearMap2 inverse(const Tolerances& tol = {}) const;

    /// Matrix product, (this * rhs)(x) = this(rhs(x)).
    LinearMap2 operator*(const LinearMap2& rhs) const;
};

/// L = a1 x^1 + a2 x^2.
struct LinearForm {
    double a1 = 0, a2 = 0;

    LinearForm operator-() const { return {-a1, -a2}; }
    LinearForm operator+(const LinearForm& o) const { return {a1 + o.a1, a2 + o.a2}; }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Ricci tensor from the closed form, cross-checked against the general
/// contraction rho_jk = G_ip^i G_jk^p - G_jp^i G_ik^p.
SymmetricBilinear2 ricci(const TypeAConnection& conn);

/// The general contraction on its own (used as an independent route).
SymmetricBilinear2 ricci_by_contraction(const TypeAConnection& conn);

/// Full array rho_{ij;k} = -G_ki^l rho_lj - G_kj^l rho_il (index order i, j, k).
std::array<std::array<std::array<double, 2>, 2>, 2> nabla_ricci_components(const TypeAConnection& conn);

/// Covariant derivative of Ricci; throws InternalConsistency if the result is not
/// totally symmetric.
CubicSymmetricTensor nabla_ricci(const TypeAConnection& conn);

enum class Signature { NegativeDefinite, Indefinite, PositiveDefinite, Degenerate };

std::string to_string(Signature s);

struct RankSignature {
    int rank = 0;
    Signature signature = Signature::Degenerate;
};

/// Rank by eigenvalue thresholding against tol * max(1, |rho|).
RankSignature rank_signature(const SymmetricBilinear2& rho, double tol);

/// The connection T^* conn, i.e. conn expressed in coordinates x_new with
/// x_old = T x_new. Throws SingularMap if |det T| <= tol.inv.
TypeAConnection pullback(const TypeAConnection& conn, const LinearMap2& map, const Tolerances& tol = {});

/// Bilinear pullback T^T rho T.
SymmetricBilinear2 pullback(const SymmetricBilinear2& rho, const LinearMap2& map);

/// Linear strong projective change by the gradient of L.
TypeAConnection projective_change(const TypeAConnection& conn, const LinearForm& form);

}  // namespace affinelab

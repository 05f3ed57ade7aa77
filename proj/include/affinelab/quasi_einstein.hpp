#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affinelab/tensor_core.hpp"

namespace affinelab {

using Complex = std::complex<double>;

/// Jet propagation matrices: d/dx^i (f, f_1, f_2) = A_i (f, f_1, f_2) for every
/// solution f of the quasi-Einstein equation H f + f rho = 0.
struct JetMatrices {
    Eigen::Matrix3d a1;
    Eigen::Matrix3d a2;

    double commutator_norm() const;
};

/// Monomial order used for polynomial coefficients: 1, x1, x2, x1^2, x1 x2, x2^2.
enum Monomial : int { kOne = 0, kX1 = 1, kX2 = 2, kX1X1 = 3, kX1X2 = 4, kX2X2 = 5 };

using Poly2 = std::array<Complex, 6>;

enum class RealForm { PureReal, CosPart, SinPart };

std::string to_string(RealForm rf);
RealForm real_form_from_string(const std::string& s);

/// e^{alpha . x} p(x), realised as the real part (PureReal, CosPart) or the
/// imaginary part (SinPart) of the complex function.
struct QFunction {
    std::array<Complex, 2> exponent{};
    Poly2 poly{};
    RealForm real_form = RealForm::PureReal;

    double value(double x1, double x2) const;
    /// (f, d1 f, d2 f) at the point.
    Eigen::Vector3d jet(double x1, double x2) const;
    int degree(double tol = 0.0) const;
    bool is_zero() const;

    static QFunction real_exp(double alpha1, double alpha2, const std::array<double, 6>& poly = {1, 0, 0, 0, 0, 0});
};

enum class CaseTag { ThreeRealExponentials, ComplexPair, DoubleRoot, TripleRoot };

std::string to_string(CaseTag tag);
CaseTag case_tag_from_string(const std::string& s);

/// A basis of the three-dimensional solution space.
struct QBasis {
    std::array<QFunction, 3> functions;
    CaseTag case_tag = CaseTag::ThreeRealExponentials;
    /// Column g holds (f, d1 f, d2 f)(0) of generator g.
    Eigen::Matrix3d jets = Eigen::Matrix3d::Zero();

    /// Builds the basis and fills `jets` from the generators.
    static QBasis make(const std::array<QFunction, 3>& functions, CaseTag tag);
};

JetMatrices jet_matrices(const TypeAConnection& conn, const Tolerances& tol = {});

/// Max coefficient magnitude of the three components of H f + f rho, computed by
/// exact differentiation of the poly-exponential form.
double residual(const TypeAConnection& conn, const QFunction& f);

/// Closed-form basis of Q(conn). Throws ClusterAmbiguity if the joint spectral
/// decomposition cannot be made stable at the configured tolerance.
QBasis solve_quasi_einstein(const TypeAConnection& conn, const Tolerances& tol = {});

/// The unique connection whose solution space contains all three generators.
/// Throws Inconsistent if no Type A connection fits.
TypeAConnection connection_from_q(const QBasis& basis, const Tolerances& tol = {});

struct FlattenResult {
    LinearForm form;
    TypeAConnection flat;
};

/// Picks e^L in Q(conn) with the smallest exponent (Euclidean norm, then
/// lexicographic) and returns L with the flat connection projective_change(conn, -L).
FlattenResult flatten(const TypeAConnection& conn, const Tolerances& tol = {});

/// Real exponents ell with e^{ell . x} in Q(conn), sorted lexicographically.
std::vector<LinearForm> real_exponentials(const QBasis& basis, const Tolerances& tol = {});

/// Composition f -> f o T for every generator.
QBasis transform_q(const QBasis& basis, const LinearMap2& map, const Tolerances& tol = {});

/// Multiplication by e^L.
QBasis scale_q(const QBasis& basis, const LinearForm& form);

/// RK4 integration of the jet system along t -> t x for t in [0, 1].
Eigen::Vector3d propagate_jet(const TypeAConnection& conn, const Eigen::Vector2d& x, const Eigen::Vector3d& v0,
                              int steps = 200);

/// Closed form exp(x1 A1 + x2 A2) v0.
Eigen::Vector3d propagate_jet_exact(const TypeAConnection& conn, const Eigen::Vector2d& x, const Eigen::Vector3d& v0);

}  // namespace affinelab

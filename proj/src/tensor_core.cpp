#include "affinelab/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace affinelab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::SingularMap: return "SingularMap";
        case ErrorKind::NotIntegrable: return "NotIntegrable";
        case ErrorKind::ClusterAmbiguity: return "ClusterAmbiguity";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::DegenerateRicci: return "DegenerateRicci";
        case ErrorKind::WitnessVerificationFailed: return "WitnessVerificationFailed";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

Tolerances Tolerances::scaled(double factor) const {
    Tolerances t = *this;
    for (double* p : {&t.rank, &t.inv, &t.comm, &t.cluster, &t.res, &t.param, &t.witness, &t.invariant}) {
        *p *= factor;
    }
    return t;
}

Tolerances Tolerances::with_env_overrides() const {
    Tolerances t = *this;
    const std::pair<const char*, double*> table[] = {
        {"AFFINELAB_TOL_RANK", &t.rank},         {"AFFINELAB_TOL_INV", &t.inv},
        {"AFFINELAB_TOL_COMM", &t.comm},         {"AFFINELAB_TOL_CLUSTER", &t.cluster},
        {"AFFINELAB_TOL_RES", &t.res},           {"AFFINELAB_TOL_PARAM", &t.param},
        {"AFFINELAB_TOL_WITNESS", &t.witness},   {"AFFINELAB_TOL_INVARIANT", &t.invariant},
    };
    for (const auto& [name, slot] : table) {
        const char* raw = std::getenv(name);
        if (raw == nullptr) continue;
        char* end = nullptr;
        const double v = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(v > 0) || !std::isfinite(v)) {
            throw Error(ErrorKind::MalformedInput, std::string(name) + " must be a positive number, got '" + raw + "'");
        }
        *slot = v;
    }
    return t;
}

// ---------------------------------------------------------------------------
// TypeAConnection

TypeAConnection TypeAConnection::from_array(const std::array<double, 6>& g) {
    return {g[0], g[1], g[2], g[3], g[4], g[5]};
}

double TypeAConnection::christoffel(int i, int j, int k) const {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 0) return k == 0 ? a : b;
    if (i == 0 && j == 1) return k == 0 ? c : d;
    return k == 0 ? e : f;
}

double TypeAConnection::max_abs() const {
    double m = 0;
    for (double v : to_array()) m = std::max(m, std::abs(v));
    return m;
}

bool TypeAConnection::is_finite() const {
    for (double v : to_array()) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double distance(const TypeAConnection& x, const TypeAConnection& y) {
    const auto u = x.to_array();
    const auto v = y.to_array();
    double m = 0;
    for (std::size_t i = 0; i < 6; ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

// ---------------------------------------------------------------------------
// Small tensors

Eigen::Matrix2d SymmetricBilinear2::matrix() const {
    Eigen::Matrix2d m;
    m << r11, r12, r12, r22;
    return m;
}

SymmetricBilinear2 SymmetricBilinear2::from_matrix(const Eigen::Matrix2d& m) {
    return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

double SymmetricBilinear2::operator()(const Eigen::Vector2d& x, const Eigen::Vector2d& y) const {
    return x.dot(matrix() * y);
}

double SymmetricBilinear2::max_abs() const {
    return std::max({std::abs(r11), std::abs(r12), std::abs(r22)});
}

double distance(const SymmetricBilinear2& x, const SymmetricBilinear2& y) {
    return std::max({std::abs(x.r11 - y.r11), std::abs(x.r12 - y.r12), std::abs(x.r22 - y.r22)});
}

double CubicSymmetricTensor::cube(const Eigen::Vector2d& x) const {
    const double u = x(0), v = x(1);
    return t111 * u * u * u + 3 * t112 * u * u * v + 3 * t122 * u * v * v + t222 * v * v * v;
}

double CubicSymmetricTensor::max_abs() const {
    return std::max({std::abs(t111), std::abs(t112), std::abs(t122), std::abs(t222)});
}

LinearMap2 LinearMap2::from_matrix(const Eigen::Matrix2d& m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Eigen::Matrix2d LinearMap2::matrix() const {
    Eigen::Matrix2d m;
    m << m11, m12, m21, m22;
    return m;
}

LinearMap2 LinearMap2::inverse(const Tolerances& tol) const {
    const double dt = det();
    if (!(std::abs(dt) > tol.inv)) {
        std::ostringstream msg;
        msg << "linear map is singular (|det T| = " << std::abs(dt) << " <= " << tol.inv << ")";
        throw Error(ErrorKind::SingularMap, msg.str());
    }
    return {m22 / dt, -m12 / dt, -m21 / dt, m11 / dt};
}

LinearMap2 LinearMap2::operator*(const LinearMap2& rhs) const {
    return from_matrix(matrix() * rhs.matrix());
}

// ---------------------------------------------------------------------------
// Curvature

SymmetricBilinear2 ricci_by_contraction(const TypeAConnection& g) {
    Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            double s = 0;
            for (int i = 0; i < 2; ++i) {
                for (int p = 0; p < 2; ++p) {
                    s += g.christoffel(i, p, i) * g.christoffel(j, k, p) -
                         g.christoffel(j, p, i) * g.christoffel(i, k, p);
                }
            }
            rho(j, k) = s;
        }
    }
    return {rho(0, 0), rho(0, 1), rho(1, 1)};
}

SymmetricBilinear2 ricci(const TypeAConnection& g) {
    const auto& [a, b, c, d, e, f] = g;
    const SymmetricBilinear2 closed{-b * c + a * d - d * d + b * f, c * d - b * e, -c * c + a * e - d * e + c * f};

    const SymmetricBilinear2 general = ricci_by_contraction(g);
    const double scale = 1.0 + g.max_abs() * g.max_abs();
    if (distance(closed, general) > 1e-12 * scale) {
        throw Error(ErrorKind::InternalConsistency, "closed-form Ricci disagrees with the general contraction");
    }
    return closed;
}

std::array<std::array<std::array<double, 2>, 2>, 2> nabla_ricci_components(const TypeAConnection& g) {
    const Eigen::Matrix2d rho = ricci(g).matrix();
    std::array<std::array<std::array<double, 2>, 2>, 2> t{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                double s = 0;
                for (int l = 0; l < 2; ++l) {
                    s -= g.christoffel(k, i, l) * rho(l, j) + g.christoffel(k, j, l) * rho(i, l);
                }
                t[i][j][k] = s;
            }
        }
    }
    return t;
}

CubicSymmetricTensor nabla_ricci(const TypeAConnection& g) {
    const auto t = nabla_ricci_components(g);
    const double scale = 1.0 + std::pow(g.max_abs(), 3);
    const double asym = std::max({std::abs(t[0][0][1] - t[0][1][0]), std::abs(t[0][1][0] - t[1][0][0]),
                                  std::abs(t[0][1][1] - t[1][0][1]), std::abs(t[1][0][1] - t[1][1][0])});
    if (asym > 1e-11 * scale) {
        throw Error(ErrorKind::InternalConsistency, "covariant derivative of Ricci is not totally symmetric");
    }
    return {t[0][0][0], t[0][0][1], t[0][1][1], t[1][1][1]};
}

std::string to_string(Signature s) {
    switch (s) {
        case Signature::NegativeDefinite: return "neg-definite";
        case Signature::Indefinite: return "indefinite";
        case Signature::PositiveDefinite: return "pos-definite";
        case Signature::Degenerate: return "degenerate";
    }
    return "degenerate";
}

RankSignature rank_signature(const SymmetricBilinear2& rho, double tol) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rho.matrix(), Eigen::EigenvaluesOnly);
    const Eigen::Vector2d ev = es.eigenvalues();
    const double threshold = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0;
    for (int i = 0; i < 2; ++i) {
        if (ev(i) > threshold) ++pos;
        else if (ev(i) < -threshold) ++neg;
    }
    RankSignature out;
    out.rank = pos + neg;
    if (out.rank < 2) out.signature = Signature::Degenerate;
    else if (pos == 2) out.signature = Signature::PositiveDefinite;
    else if (neg == 2) out.signature = Signature::NegativeDefinite;
    else out.signature = Signature::Indefinite;
    return out;
}

// ---------------------------------------------------------------------------
// Coordinate changes

TypeAConnection pullback(const TypeAConnection& g, const LinearMap2& map, const Tolerances& tol) {
    const Eigen::Matrix2d t = map.matrix();
    const Eigen::Matrix2d tinv = map.inverse(tol).matrix();
    auto component = [&](int i, int j, int k) {
        double s = 0;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
                for (int r = 0; r < 2; ++r) s += tinv(k, r) * g.christoffel(p, q, r) * t(p, i) * t(q, j);
        return s;
    };
    return {component(0, 0, 0), component(0, 0, 1), component(0, 1, 0),
            component(0, 1, 1), component(1, 1, 0), component(1, 1, 1)};
}

SymmetricBilinear2 pullback(const SymmetricBilinear2& rho, const LinearMap2& map) {
    const Eigen::Matrix2d t = map.matrix();
    return SymmetricBilinear2::from_matrix(t.transpose() * rho.matrix() * t);
}

TypeAConnection projective_change(const TypeAConnection& g, const LinearForm& l) {
    return {g.a + 2 * l.a1, g.b, g.c + l.a2, g.d + l.a1, g.e, g.f + 2 * l.a2};
}

}  // namespace affinelab

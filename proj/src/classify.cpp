#include "affinelab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace affinelab {

namespace {

using Eigen::Matrix2d;
using Eigen::Vector2d;

Vector2d real_part(const std::array<Complex, 2>& a) { return {a[0].real(), a[1].real()}; }
Vector2d imag_part(const std::array<Complex, 2>& a) { return {a[0].imag(), a[1].imag()}; }
Vector2d linear_part(const Poly2& p) { return {p[kX1].real(), p[kX2].real()}; }
double cross(const Vector2d& u, const Vector2d& v) { return u(0) * v(1) - u(1) * v(0); }

// coordinates of `v` in the basis of covectors given by the rows of `lambda`
Vector2d coords(const Matrix2d& lambda, const Vector2d& v) { return lambda.transpose().fullPivLu().solve(v); }

Matrix2d rows(const Vector2d& y1, const Vector2d& y2) {
    Matrix2d m;
    m.row(0) = y1.transpose();
    m.row(1) = y2.transpose();
    return m;
}

struct Scales {
    double zero;      // a covector below this is zero
    double parallel;  // relative cross product below this means parallel
};

bool is_zero(const Vector2d& v, const Scales& s) { return v.norm() <= s.zero; }

bool parallel(const Vector2d& u, const Vector2d& v, const Scales& s) {
    const double n = u.norm() * v.norm();
    return n == 0.0 || std::abs(cross(u, v)) <= s.parallel * n;
}

// greater-than with ties inside tol decided by the next coordinate
bool lex_greater(const std::pair<double, double>& x, const std::pair<double, double>& y, double tol) {
    const double t1 = tol * (1 + std::max(std::abs(x.first), std::abs(y.first)));
    if (x.first > y.first + t1) return true;
    if (x.first < y.first - t1) return false;
    const double t2 = tol * (1 + std::max(std::abs(x.second), std::abs(y.second)));
    return x.second > y.second + t2;
}

struct Reduction {
    FamilyId family;
    Matrix2d lambda;  // rows are the new coordinates as covectors
    std::optional<LinearForm> pre_shift;
};

Reduction reduce_three_real(const QBasis& q, int rank, const Scales& s, double param_tol) {
    std::array<Vector2d, 3> l;
    for (int i = 0; i < 3; ++i) l[i] = real_part(q.functions[i].exponent);
    if (rank == 2) {
        Reduction best;
        bool have = false;
        std::pair<double, double> best_a;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const int k = 3 - i - j;
                const Matrix2d lambda = rows(l[i], l[j]);
                const Vector2d a = coords(lambda, l[k]);
                const std::pair<double, double> cand{a(0), a(1)};
                if (!have || lex_greater(cand, best_a, param_tol)) {
                    have = true;
                    best_a = cand;
                    best = {{Family::Gr2, {a(0), a(1)}}, lambda, std::nullopt};
                }
            }
        }
        return best;
    }
    if (rank == 1) {
        // the pair of parallel exponents carries the parameter
        int p = 0, q2 = 1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const double n = std::max(l[i].norm() * l[j].norm(), std::numeric_limits<double>::min());
                const double r = std::abs(cross(l[i], l[j])) / n;
                if (r < best) best = r, p = i, q2 = j;
            }
        }
        const int r = 3 - p - q2;
        Vector2d u = l[q2] - l[p];
        double c = l[p].dot(u) / u.squaredNorm();
        if (-1 - c > c) {
            std::swap(p, q2);
            u = -u;
            c = -1 - c;
        }
        return {{Family::G2_1, {c}}, rows(l[p] - l[r], u), std::nullopt};
    }
    int p = 0;
    for (int i = 1; i < 3; ++i) {
        if (l[i].norm() < l[p].norm()) p = i;
    }
    (void)s;
    const int q2 = p == 0 ? 1 : 0;
    const int r = 3 - p - q2;
    return {{Family::G2_0, {}}, rows(-l[r], l[q2]), std::nullopt};
}

Reduction reduce_complex(const QBasis& q, int rank, const Scales& s) {
    Vector2d l3 = Vector2d::Zero(), l1 = Vector2d::Zero(), l2 = Vector2d::Zero();
    for (const auto& f : q.functions) {
        if (f.real_form == RealForm::PureReal) l3 = real_part(f.exponent);
        if (f.real_form == RealForm::CosPart) l1 = real_part(f.exponent), l2 = imag_part(f.exponent);
    }
    if (rank == 1) {
        double c = l1.dot(l2) / l2.squaredNorm();
        if (c < 0) c = -c, l2 = -l2;
        return {{Family::G5_1, {c}}, rows(l3, l2), std::nullopt};
    }
    const Matrix2d lambda = rows(l1, l2);
    if (rank == 0 || is_zero(l3, s)) return {{Family::G5_0, {}}, lambda, std::nullopt};
    Vector2d b = coords(lambda, l3);
    if (b(1) < 0) return {{Family::Gc2, {b(0), -b(1)}}, rows(l1, -l2), std::nullopt};
    return {{Family::Gc2, {b(0), b(1)}}, lambda, std::nullopt};
}

Reduction reduce_double(const QBasis& q, int rank, const Scales& s) {
    // double exponent l1 with polynomials {1, L2}; simple exponent l3
    int lin = -1;
    for (int i = 0; i < 3; ++i) {
        if (linear_part(q.functions[i].poly).norm() > 0) lin = i;
    }
    if (lin < 0) throw Error(ErrorKind::WitnessVerificationFailed, "double root without a linear polynomial");
    const Vector2d l1 = real_part(q.functions[lin].exponent);
    const Vector2d lam2 = linear_part(q.functions[lin].poly);
    Vector2d l3 = l1;
    double far = -1;
    for (const auto& f : q.functions) {
        const Vector2d e = real_part(f.exponent);
        if ((e - l1).norm() > far) far = (e - l1).norm(), l3 = e;
    }
    if (rank == 2) {
        const Matrix2d lambda = rows(l1, l3 - l1);
        const Vector2d m = coords(lambda, lam2);
        return {{Family::Gp2, {-m(1) / m(0)}}, lambda, std::nullopt};
    }
    if (rank == 1) {
        if (!parallel(l1, l3, s)) return {{Family::G1_1, {}}, rows(l1 - l3, l1), std::nullopt};
        const Vector2d u = l3 - l1;
        return {{Family::G3_1, {l1.dot(u) / u.squaredNorm()}}, rows(lam2, u), std::nullopt};
    }
    if (is_zero(l1, s)) return {{Family::G3_0, {}}, rows(lam2, l3), std::nullopt};
    return {{Family::G1_0, {}}, rows(l1, lam2), std::nullopt};
}

Reduction reduce_triple(const QBasis& q, int rank, const Scales& s) {
    const Vector2d l1 = real_part(q.functions[0].exponent);
    std::optional<LinearForm> shift;
    if (!is_zero(l1, s)) shift = LinearForm{l1(0), l1(1)};

    int quad = -1;
    double quad_size = 0;
    for (int i = 0; i < 3; ++i) {
        const Poly2& p = q.functions[i].poly;
        const double size = std::max({std::abs(p[kX1X1]), std::abs(p[kX1X2]), std::abs(p[kX2X2])});
        if (size > quad_size) quad_size = size, quad = i;
    }
    if (quad < 0) {
        std::vector<Vector2d> lin;
        for (const auto& f : q.functions) {
            if (linear_part(f.poly).norm() > 0) lin.push_back(linear_part(f.poly));
        }
        if (lin.size() != 2) throw Error(ErrorKind::WitnessVerificationFailed, "triple root without two linear polynomials");
        if (!shift) return {{Family::G0_0, {}}, rows(lin[0], lin[1]), shift};
        return {{Family::G4_1, {0.0}}, rows(Vector2d(-l1(1), l1(0)), l1), shift};
    }
    Vector2d lam2 = Vector2d::Zero();
    for (int i = 0; i < 3; ++i) {
        if (i != quad && linear_part(q.functions[i].poly).norm() > 0) lam2 = linear_part(q.functions[i].poly);
    }
    const Poly2& p = q.functions[quad].poly;
    // quadratic part = k (lam2 . x)^2
    const Eigen::Vector3d v(lam2(0) * lam2(0), 2 * lam2(0) * lam2(1), lam2(1) * lam2(1));
    const Eigen::Vector3d w(p[kX1X1].real(), p[kX1X2].real(), p[kX2X2].real());
    const double k = w.dot(v) / v.squaredNorm();
    const Vector2d y1 = linear_part(p) / (2 * k);
    const Matrix2d lambda = rows(y1, lam2);
    if (!shift) return {{Family::G4_0, {}}, lambda, shift};
    const Vector2d b = coords(lambda, l1);
    if (rank <= 1) return {{Family::G4_1, {1.0}}, rows(b(1) * b(1) * y1, b(1) * lam2), shift};
    const double eps = b(0) > 0 ? 1.0 : -1.0;
    return {{Family::Gq2, {eps}}, rows(l1, std::sqrt(std::abs(b(0))) * lam2), shift};
}

double witness_scale(const TypeAConnection& target) { return std::max(1.0, target.max_abs()); }

bool continuous_parameters(Family f) {
    switch (f) {
        case Family::Gr2:
        case Family::Gc2:
        case Family::Gp2:
        case Family::G2_1:
        case Family::G3_1:
        case Family::G5_1: return true;
        default: return false;
    }
}

// Repeated exponents are only resolved to about sqrt(eps), so a few Gauss-Newton
// steps on pullback(conn, W) = family(params) recover full precision.
// `target` maps the (possibly adjusted) family to the connection to match; only
// continuous parameters move.
template <class Target>
void polish(const TypeAConnection& conn, LinearMap2& witness, FamilyId& family, Target target, const Tolerances& tol) {
    const std::size_t np = continuous_parameters(family.name) ? family.params.size() : 0;
    const Eigen::Index n = 4 + static_cast<Eigen::Index>(np);
    auto unpack = [&](const Eigen::VectorXd& z, LinearMap2& w, FamilyId& fam) {
        w = {z(0), z(1), z(2), z(3)};
        fam = family;
        for (std::size_t i = 0; i < np; ++i) fam.params[i] = z(4 + static_cast<Eigen::Index>(i));
    };
    auto residual = [&](const Eigen::VectorXd& z) {
        LinearMap2 w;
        FamilyId fam;
        unpack(z, w, fam);
        const auto x = pullback(conn, w, tol).to_array();
        const auto y = target(fam).to_array();
        Eigen::Matrix<double, 6, 1> r;
        for (int i = 0; i < 6; ++i) r(i) = x[i] - y[i];
        return r;
    };
    Eigen::VectorXd z(n);
    z.head<4>() << witness.m11, witness.m12, witness.m21, witness.m22;
    for (std::size_t i = 0; i < np; ++i) z(4 + static_cast<Eigen::Index>(i)) = family.params[i];
    try {
        Eigen::Matrix<double, 6, 1> r = residual(z);
        for (int it = 0; it < 6 && r.norm() > 1e-15 * witness_scale(target(family)); ++it) {
            Eigen::MatrixXd jac(6, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                const double h = 1e-6 * std::max(1.0, std::abs(z(k)));
                Eigen::VectorXd zp = z, zm = z;
                zp(k) += h;
                zm(k) -= h;
                jac.col(k) = (residual(zp) - residual(zm)) / (2 * h);
            }
            const Eigen::VectorXd next = z - jac.completeOrthogonalDecomposition().solve(r);
            const Eigen::Matrix<double, 6, 1> rn = residual(next);
            if (!(rn.norm() < r.norm())) break;
            z = next;
            r = rn;
        }
    } catch (const Error&) {
        // a step through a singular map; keep the best point so far
    }
    unpack(z, witness, family);
}

}  // namespace

NormalFormResult normal_form(const TypeAConnection& conn, const Tolerances& tol) {
    const QBasis q = solve_quasi_einstein(conn, tol);
    const int rank = rank_signature(ricci(conn), tol.rank).rank;
    const Scales s{tol.param * (1 + conn.max_abs()), tol.param};

    Reduction red;
    switch (q.case_tag) {
        case CaseTag::ThreeRealExponentials: red = reduce_three_real(q, rank, s, tol.param); break;
        case CaseTag::ComplexPair: red = reduce_complex(q, rank, s); break;
        case CaseTag::DoubleRoot: red = reduce_double(q, rank, s); break;
        case CaseTag::TripleRoot: red = reduce_triple(q, rank, s); break;
    }

    NormalFormResult out;
    out.family = red.family;
    out.pre_shift = red.pre_shift;
    out.case_tag = q.case_tag;
    out.rank = rank;
    TypeAConnection target;
    try {
        out.witness = LinearMap2::from_matrix(red.lambda).inverse(tol);
        const TypeAConnection rough = family_connection(out.family);
        if (distance(pullback(conn, out.witness, tol), rough) > 1e-11 * witness_scale(rough)) {
            polish(conn, out.witness, out.family, family_connection, tol);
        }
        // snap parameters that are zero or integral up to round-off
        for (double& v : out.family.params) {
            if (std::abs(v - std::round(v)) <= 1e-12 * (1 + std::abs(v))) v = std::round(v);
        }
        target = construct(out.family).connection;
    } catch (const Error& e) {
        throw Error(ErrorKind::WitnessVerificationFailed,
                    "reduction to " + out.family.label() + " failed: " + std::string(e.what()));
    }
    // an input already in normal form keeps the identity witness
    if (distance(conn, target) <= tol.witness * witness_scale(target)) out.witness = LinearMap2::identity();
    out.verification_residual = distance(pullback(conn, out.witness, tol), target);
    if (!(out.verification_residual <= tol.witness * witness_scale(target))) {
        std::ostringstream msg;
        msg << "witness for " << out.family.label() << " misses the catalog connection by " << out.verification_residual;
        throw Error(ErrorKind::WitnessVerificationFailed, msg.str());
    }
    return out;
}

std::vector<std::pair<double, double>> s3_orbit(double a1, double a2, double tol) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [label, p] : s3_images(a1, a2)) {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& o) {
            return std::abs(o.first - p.first) <= tol * (1 + std::abs(p.first)) &&
                   std::abs(o.second - p.second) <= tol * (1 + std::abs(p.second));
        });
        if (!seen) out.push_back(p);
    }
    return out;
}

std::pair<double, double> canonical_s3(double a1, double a2, double tol) {
    std::pair<double, double> best{a1, a2};
    for (const auto& p : s3_orbit(a1, a2)) {
        if (lex_greater(p, best, tol)) best = p;
    }
    return best;
}

LinearDecision linear_equivalent(const TypeAConnection& c1, const TypeAConnection& c2, const Tolerances& tol) {
    LinearDecision d;
    d.first = normal_form(c1, tol);
    d.second = normal_form(c2, tol);
    if (d.first.family.name != d.second.family.name) {
        d.margin = std::numeric_limits<double>::infinity();
        d.reason = "different normal forms: " + to_string(d.first.family.name) + " vs " + to_string(d.second.family.name);
        return d;
    }
    double margin = 0, scale = 0;
    for (std::size_t i = 0; i < d.first.family.params.size(); ++i) {
        const double u = d.first.family.params[i], v = d.second.family.params[i];
        margin = std::max(margin, std::abs(u - v));
        scale = std::max({scale, std::abs(u), std::abs(v)});
    }
    d.margin = margin;
    if (margin > tol.param * (1 + scale)) {
        d.reason = "canonical parameters differ: " + d.first.family.label() + " vs " + d.second.family.label();
        return d;
    }
    LinearMap2 w = d.first.witness * d.second.witness.inverse(tol);
    FamilyId fixed{Family::G0_0, {}};
    polish(c1, w, fixed, [&](const FamilyId&) { return c2; }, tol);
    const double res = distance(pullback(c1, w, tol), c2);
    if (!(res <= tol.witness * 10 * std::max({1.0, c1.max_abs(), c2.max_abs()}))) {
        std::ostringstream msg;
        msg << "composed witness misses the second connection by " << res;
        throw Error(ErrorKind::WitnessVerificationFailed, msg.str());
    }
    d.equivalent = true;
    d.witness = w;
    d.reason = "both reduce to " + d.first.family.label();
    return d;
}

AffineDecision affine_equivalent(const TypeAConnection& c1, const TypeAConnection& c2, const Tolerances& tol) {
    AffineDecision d;
    d.first = invariants(c1, tol);
    d.second = invariants(c2, tol);
    auto close = [&](double u, double v) { return std::abs(u - v) <= tol.invariant * (1 + std::max(std::abs(u), std::abs(v))); };
    if (d.first.rank != d.second.rank) {
        d.margin = std::numeric_limits<double>::infinity();
        d.reason = "Ricci ranks differ";
        return d;
    }
    if (d.first.rank == 0) {
        d.equivalent = true;
        d.reason = "both flat";
        return d;
    }
    if (d.first.rank == 1) {
        d.margin = std::abs(*d.first.alpha - *d.second.alpha);
        if (*d.first.epsilon != *d.second.epsilon) {
            d.reason = "epsilon differs";
            d.margin = std::numeric_limits<double>::infinity();
        } else if (!close(*d.first.alpha, *d.second.alpha)) {
            d.reason = "alpha differs";
        } else {
            d.equivalent = true;
            d.reason = "alpha and epsilon agree";
        }
        return d;
    }
    d.margin = std::max(std::abs(*d.first.psi - *d.second.psi), std::abs(*d.first.Psi - *d.second.Psi));
    if (d.first.signature != d.second.signature) {
        d.reason = "Ricci signatures differ";
        d.margin = std::numeric_limits<double>::infinity();
    } else if (!close(*d.first.psi, *d.second.psi) || !close(*d.first.Psi, *d.second.Psi)) {
        d.reason = "(psi, Psi) differ";
    } else {
        d.equivalent = true;
        d.reason = "signature and (psi, Psi) agree";
    }
    d.linear_cross_check = linear_equivalent(c1, c2, tol).equivalent;
    if (*d.linear_cross_check != d.equivalent) {
        throw Error(ErrorKind::InternalConsistency,
                    "linear and affine equivalence disagree for non-degenerate Ricci tensors");
    }
    return d;
}

std::vector<FlatNeighbor> flat_projective_neighbors(int index, const Tolerances& tol) {
    static const Family flats[] = {Family::G0_0, Family::G1_0, Family::G2_0, Family::G3_0, Family::G4_0, Family::G5_0};
    if (index < 0 || index > 5) throw Error(ErrorKind::DomainViolation, "flat family index must be in 0..5");
    const TypeAConnection base = family_connection({flats[index], {}});

    struct Listed {
        int index;
        LinearForm form;
        LinearMap2 map;
        Family target;
    };
    static const Listed listed[] = {
        {1, {-1, 0}, {0, 1, -1, 0}, Family::G3_0},
        {2, {1, 0}, {-1, 0, 1, 1}, Family::G2_0},
        {2, {0, -1}, {0, 1, -1, -1}, Family::G2_0},
        {3, {0, -1}, {0, -1, 1, 0}, Family::G1_0},
    };

    std::vector<FlatNeighbor> out;
    for (const LinearForm& ell : real_exponentials(solve_quasi_einstein(base, tol), tol)) {
        FlatNeighbor n;
        n.form = -ell;
        if (n.form.a1 == 0) n.form.a1 = 0;  // no negative zero in output
        if (n.form.a2 == 0) n.form.a2 = 0;
        n.connection = projective_change(base, n.form);
        if (ricci(n.connection).max_abs() > tol.res * (1 + n.connection.max_abs())) {
            throw Error(ErrorKind::InternalConsistency, "projective neighbour is not flat");
        }
        n.normal_form = normal_form(n.connection, tol);
        for (const Listed& l : listed) {
            if (l.index != index) continue;
            if (std::abs(l.form.a1 - n.form.a1) > tol.param || std::abs(l.form.a2 - n.form.a2) > tol.param) continue;
            n.listed_map = l.map;
            n.listed_target = l.target;
            n.listed_residual = distance(pullback(family_connection({l.target, {}}), l.map, tol), n.connection);
        }
        out.push_back(n);
    }
    std::sort(out.begin(), out.end(), [](const FlatNeighbor& x, const FlatNeighbor& y) {
        return std::pair(x.form.a1, x.form.a2) < std::pair(y.form.a1, y.form.a2);
    });
    return out;
}

Eigen::Matrix<double, 6, 4> killing_system(const TypeAConnection& g) {
    // unknown J^k_l = d_l X^k sits in column 2k + l; row 2 (component) + k
    Eigen::Matrix<double, 6, 4> m = Eigen::Matrix<double, 6, 4>::Zero();
    const int comp[3][2] = {{0, 0}, {0, 1}, {1, 1}};
    for (int c = 0; c < 3; ++c) {
        const int i = comp[c][0], j = comp[c][1];
        for (int k = 0; k < 2; ++k) {
            const int row = 2 * c + k;
            for (int l = 0; l < 2; ++l) {
                m(row, 2 * k + l) -= g.christoffel(i, j, l);
                m(row, 2 * l + i) += g.christoffel(l, j, k);
                m(row, 2 * l + j) += g.christoffel(i, l, k);
            }
        }
    }
    return m;
}

KillingBasis killing_affine(const TypeAConnection& conn, const Tolerances& tol) {
    KillingBasis out;
    out.generators.push_back({1, 0, 0, 0, 0, 0});
    out.generators.push_back({0, 0, 0, 1, 0, 0});
    const Eigen::Matrix<double, 6, 4> m = killing_system(conn);
    const Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>> svd(m, Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    const double cut = tol.rank * std::max(1.0, sv(0));
    const auto v = svd.matrixV();
    for (int col = 0; col < 4; ++col) {
        if (sv(col) > cut) continue;
        Eigen::Vector4d j = v.col(col);
        // sign convention: first significant entry positive
        for (int r = 0; r < 4; ++r) {
            if (std::abs(j(r)) > 1e-12) {
                if (j(r) < 0) j = -j;
                break;
            }
        }
        for (int r = 0; r < 4; ++r) {
            if (std::abs(j(r)) < 1e-14) j(r) = 0;
        }
        out.max_residual = std::max(out.max_residual, (m * j).cwiseAbs().maxCoeff());
        out.generators.push_back({0, j(0), j(1), 0, j(2), j(3)});
    }
    out.dim = static_cast<int>(out.generators.size());
    if (out.max_residual > 1e-10 * (1 + conn.max_abs())) {
        throw Error(ErrorKind::InternalConsistency, "Killing kernel vector fails the linear system");
    }
    return out;
}

}  // namespace affinelab

#include "affinelab/quasi_einstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace affinelab {

namespace {

using Matrix3cd = Eigen::Matrix3cd;
using Vector3cd = Eigen::Vector3cd;

Poly2 d1(const Poly2& p) { return {p[kX1], 2.0 * p[kX1X1], p[kX1X2], 0.0, 0.0, 0.0}; }
Poly2 d2(const Poly2& p) { return {p[kX2], p[kX1X2], 2.0 * p[kX2X2], 0.0, 0.0, 0.0}; }
Poly2 d(const Poly2& p, int k) { return k == 0 ? d1(p) : d2(p); }

Complex eval(const Poly2& p, double x1, double x2) {
    return p[kOne] + p[kX1] * x1 + p[kX2] * x2 + p[kX1X1] * x1 * x1 + p[kX1X2] * x1 * x2 + p[kX2X2] * x2 * x2;
}

Poly2 axpy(Complex s, const Poly2& x, const Poly2& y) {
    Poly2 out;
    for (int i = 0; i < 6; ++i) out[i] = s * x[i] + y[i];
    return out;
}

Poly2 scaled(Complex s, const Poly2& x) { return axpy(s, x, Poly2{}); }

double take(Complex z, RealForm rf) { return rf == RealForm::SinPart ? z.imag() : z.real(); }

/// Coefficients (in the unknowns Gamma_ij^1, Gamma_ij^2, rho_ij) of the (i,j)
/// component of H f + f rho, divided by the exponential: the component equals
///   rhs + u1 * col[0] + u2 * col[1] + rho * col[2].
struct ComponentTerms {
    Poly2 constant;
    std::array<Poly2, 3> column;
};

ComponentTerms component_terms(const QFunction& f, int i, int j) {
    const auto& al = f.exponent;
    const Poly2& p = f.poly;
    ComponentTerms t;
    // alpha_i alpha_j p + alpha_i d_j p + alpha_j d_i p + d_i d_j p
    t.constant = scaled(al[i] * al[j], p);
    t.constant = axpy(al[i], d(p, j), t.constant);
    t.constant = axpy(al[j], d(p, i), t.constant);
    t.constant = axpy(1.0, d(d(p, i), j), t.constant);
    for (int k = 0; k < 2; ++k) t.column[k] = scaled(-1.0, axpy(al[k], p, d(p, k)));
    t.column[2] = p;
    return t;
}

constexpr std::array<std::pair<int, int>, 3> kComponents{{{0, 0}, {0, 1}, {1, 1}}};

double poly_max_abs(const Poly2& p) {
    double m = 0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    return m;
}

double snap(double v, double eps) { return std::abs(v) <= eps ? 0.0 : v; }

Complex snap(Complex z, double eps) { return {snap(z.real(), eps), snap(z.imag(), eps)}; }

/// Polynomial part of the generator with initial jet v in a cluster with
/// nilpotent parts n1, n2.
Poly2 poly_from_jet(const Vector3cd& v, const Matrix3cd& n1, const Matrix3cd& n2) {
    const Vector3cd a = n1 * v;
    const Vector3cd b = n2 * v;
    return {v(0), a(0), b(0), 0.5 * (n1 * a)(0), (n1 * b)(0), 0.5 * (n2 * b)(0)};
}

/// Reduced row echelon form of a set of polynomials over the monomial order
/// x2^2 > x1x2 > x1^2 > x2 > x1 > 1; rows are returned lowest degree first.
/// Pivots below rel_eps times the largest coefficient count as zero.
std::vector<Poly2> echelon(std::vector<Poly2> rows, double rel_eps) {
    constexpr std::array<int, 6> order{kX2X2, kX1X2, kX1X1, kX2, kX1, kOne};
    double scale = 0;
    for (const auto& r : rows) scale = std::max(scale, poly_max_abs(r));
    const double eps = rel_eps * scale;

    std::size_t next = 0;
    for (int col : order) {
        if (next == rows.size()) break;
        std::size_t best = next;
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (std::abs(rows[r][col]) > std::abs(rows[best][col])) best = r;
        }
        if (std::abs(rows[best][col]) <= eps) continue;
        std::swap(rows[next], rows[best]);
        const Complex pivot = rows[next][col];
        for (auto& c : rows[next]) c /= pivot;
        rows[next][col] = 1.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next) continue;
            const Complex factor = rows[r][col];
            rows[r] = axpy(-factor, rows[next], rows[r]);
            rows[r][col] = 0.0;
        }
        ++next;
    }
    std::reverse(rows.begin(), rows.end());
    return rows;
}

/// Null vector of a rank-deficient 3x3 complex matrix.
Vector3cd null_vector(const Matrix3cd& m) {
    Eigen::JacobiSVD<Matrix3cd> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().col(2);
}

struct Cluster {
    std::array<Complex, 2> alpha{};
    bool complex_pair = false;
    std::vector<Poly2> polys;
};

bool lex_less(const std::array<Complex, 2>& x, const std::array<Complex, 2>& y) {
    const std::array<double, 4> u{x[0].real(), x[1].real(), x[0].imag(), x[1].imag()};
    const std::array<double, 4> v{y[0].real(), y[1].real(), y[0].imag(), y[1].imag()};
    return u < v;
}

struct Attempt {
    std::optional<QBasis> basis;
    double gap = 0;
    std::string reason;
};

double min_root_gap(const Eigen::Matrix3d& m) {
    const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(m, false).eigenvalues();
    return std::min({std::abs(ev(0) - ev(1)), std::abs(ev(0) - ev(2)), std::abs(ev(1) - ev(2))});
}

Attempt decompose(const TypeAConnection& conn, const JetMatrices& jm, double theta, const Tolerances& tol) {
    const Eigen::Matrix3d m = jm.a1 + theta * jm.a2;
    const double shift = m.trace() / 3.0;
    const Eigen::Matrix3d mt = m - shift * Eigen::Matrix3d::Identity();
    const double scale = std::max(mt.norm(), 1e-300);
    const double p = mt(0, 0) * mt(1, 1) - mt(0, 1) * mt(1, 0) + mt(0, 0) * mt(2, 2) - mt(0, 2) * mt(2, 0) +
                     mt(1, 1) * mt(2, 2) - mt(1, 2) * mt(2, 1);
    const double q = -mt.determinant();
    const double ph = p / (scale * scale);
    const double qh = q / (scale * scale * scale);

    const Matrix3cd a1 = jm.a1.cast<Complex>();
    const Matrix3cd a2 = jm.a2.cast<Complex>();
    const Matrix3cd id = Matrix3cd::Identity();
    const double a_scale = 1.0 + std::max(jm.a1.norm(), jm.a2.norm());
    const double snap_eps = 1e-14 * a_scale;

    Attempt attempt;
    attempt.gap = min_root_gap(m);
    // a repeated root is only resolved to about its computed split, so coefficients
    // at that level are noise
    const double poly_eps = std::max(1e-7, 10 * attempt.gap / scale);

    std::vector<Cluster> clusters;
    CaseTag tag;

    auto real_cluster = [&](const std::array<double, 2>& alpha, const Eigen::MatrixXd& span, int nil_power) {
        const Matrix3cd n1 = a1 - Complex(alpha[0]) * id;
        const Matrix3cd n2 = a2 - Complex(alpha[1]) * id;
        // nilpotency of the restriction certifies a single joint eigenvalue
        const Eigen::MatrixXcd s = span.cast<Complex>();
        Eigen::MatrixXcd r1 = s, r2 = s;
        for (int k = 0; k < nil_power; ++k) {
            r1 = n1 * r1;
            r2 = n2 * r2;
        }
        const double nil = std::max(r1.norm(), r2.norm());
        if (nil > 1e-6 * std::pow(a_scale, nil_power)) return false;
        Cluster c;
        c.alpha = {alpha[0], alpha[1]};
        std::vector<Poly2> rows;
        for (Eigen::Index col = 0; col < s.cols(); ++col) {
            Poly2 row = poly_from_jet(s.col(col), n1, n2);
            // N^2 vanishes on a two-dimensional cluster, so any quadratic part is round-off
            if (nil_power == 2) row[kX1X1] = row[kX1X2] = row[kX2X2] = 0.0;
            rows.push_back(row);
        }
        c.polys = rows.size() > 1 ? echelon(rows, poly_eps) : echelon(rows, 1e-9);
        clusters.push_back(std::move(c));
        return true;
    };

    auto simple_alpha = [&](Complex lambda) {
        const Vector3cd v = null_vector(Matrix3cd(m.cast<Complex>() - lambda * id));
        return std::array<Complex, 2>{v(1) / v(0), v(2) / v(0)};
    };

    if (std::max(std::abs(ph), std::abs(qh)) <= tol.cluster) {
        tag = CaseTag::TripleRoot;
        if (!real_cluster({jm.a1.trace() / 3.0, jm.a2.trace() / 3.0}, Eigen::Matrix3d::Identity(), 3)) {
            attempt.reason = "triple root without a single joint eigenvalue";
            return attempt;
        }
    } else {
        const double disc = -4 * ph * ph * ph - 27 * qh * qh;
        const double disc_scale = 4 * std::abs(ph * ph * ph) + 27 * qh * qh;
        // a defective double root splits by about sqrt(eps) under round-off, which the
        // discriminant ratio misses when the simple root is also close
        const bool close_pair = attempt.gap <= std::sqrt(tol.cluster) * scale;
        if (std::abs(disc) <= tol.cluster * disc_scale || close_pair) {
            tag = CaseTag::DoubleRoot;
            const double lambda_s = shift + 3 * q / p;
            const auto alpha_s = simple_alpha(lambda_s);
            const std::array<double, 2> as{alpha_s[0].real(), alpha_s[1].real()};
            const std::array<double, 2> ad{(jm.a1.trace() - as[0]) / 2.0, (jm.a2.trace() - as[1]) / 2.0};
            Eigen::JacobiSVD<Eigen::Matrix3d> svd(m - lambda_s * Eigen::Matrix3d::Identity(), Eigen::ComputeFullU);
            const Eigen::MatrixXd span = svd.matrixU().leftCols(2);
            if (!real_cluster(as, Eigen::Vector3d(1.0, as[0], as[1]), 1) || !real_cluster(ad, span, 2)) {
                attempt.reason = "repeated root of the combination is not a single joint eigenvalue";
                return attempt;
            }
        } else {
            const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(m, false).eigenvalues();
            if (disc > 0) {
                tag = CaseTag::ThreeRealExponentials;
                for (int i = 0; i < 3; ++i) {
                    const auto al = simple_alpha(ev(i).real());
                    if (!real_cluster({al[0].real(), al[1].real()}, Eigen::Vector3d(1.0, al[0].real(), al[1].real()), 1)) {
                        attempt.reason = "simple root without a joint eigenvector";
                        return attempt;
                    }
                }
            } else {
                tag = CaseTag::ComplexPair;
                int real_index = 0;
                for (int i = 1; i < 3; ++i) {
                    if (std::abs(ev(i).imag()) < std::abs(ev(real_index).imag())) real_index = i;
                }
                const auto al = simple_alpha(ev(real_index).real());
                if (!real_cluster({al[0].real(), al[1].real()}, Eigen::Vector3d(1.0, al[0].real(), al[1].real()), 1)) {
                    attempt.reason = "simple root without a joint eigenvector";
                    return attempt;
                }
                const int cpx_index = (real_index + 1) % 3;
                auto alc = simple_alpha(ev(cpx_index));
                const double im_eps = 1e-10 * a_scale;
                const bool flip = alc[0].imag() < -im_eps || (std::abs(alc[0].imag()) <= im_eps && alc[1].imag() < 0);
                if (flip) alc = {std::conj(alc[0]), std::conj(alc[1])};
                Cluster c;
                c.alpha = {snap(alc[0], snap_eps), snap(alc[1], snap_eps)};
                c.complex_pair = true;
                c.polys = {Poly2{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
                clusters.push_back(std::move(c));
            }
        }
    }

    std::sort(clusters.begin(), clusters.end(), [](const Cluster& x, const Cluster& y) { return lex_less(x.alpha, y.alpha); });

    std::array<QFunction, 3> gens;
    std::size_t n = 0;
    for (const auto& c : clusters) {
        for (const auto& poly : c.polys) {
            Poly2 clean;
            for (int i = 0; i < 6; ++i) clean[i] = snap(c.complex_pair ? poly[i] : Complex(poly[i].real()), snap_eps);
            const std::array<Complex, 2> alpha{snap(c.alpha[0], snap_eps), snap(c.alpha[1], snap_eps)};
            if (c.complex_pair) {
                if (n + 2 > 3) break;
                gens[n++] = QFunction{alpha, clean, RealForm::CosPart};
                gens[n++] = QFunction{alpha, clean, RealForm::SinPart};
            } else {
                if (n + 1 > 3) break;
                gens[n++] = QFunction{alpha, clean, RealForm::PureReal};
            }
        }
    }
    if (n != 3) {
        attempt.reason = "decomposition did not produce three generators";
        return attempt;
    }

    QBasis basis = QBasis::make(gens, tag);

    const double res_tol = tol.res * (1.0 + conn.max_abs());
    for (const auto& g : basis.functions) {
        if (residual(conn, g) > res_tol * std::max(1.0, poly_max_abs(g.poly))) {
            attempt.reason = "generator residual above tolerance";
            return attempt;
        }
    }
    const Eigen::Matrix3d jets = basis.jets;
    const double col_prod = jets.col(0).norm() * jets.col(1).norm() * jets.col(2).norm();
    if (!(std::abs(jets.determinant()) > 1e-10 * col_prod)) {
        attempt.reason = "generator jets are not independent";
        return attempt;
    }
    attempt.basis = std::move(basis);
    return attempt;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(RealForm rf) {
    switch (rf) {
        case RealForm::PureReal: return "pure-real";
        case RealForm::CosPart: return "cos-part";
        case RealForm::SinPart: return "sin-part";
    }
    return "pure-real";
}

RealForm real_form_from_string(const std::string& s) {
    if (s == "pure-real") return RealForm::PureReal;
    if (s == "cos-part") return RealForm::CosPart;
    if (s == "sin-part") return RealForm::SinPart;
    throw Error(ErrorKind::MalformedInput, "unknown real_form '" + s + "'");
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::ThreeRealExponentials: return "ThreeRealExponentials";
        case CaseTag::ComplexPair: return "ComplexPair";
        case CaseTag::DoubleRoot: return "DoubleRoot";
        case CaseTag::TripleRoot: return "TripleRoot";
    }
    return "ThreeRealExponentials";
}

CaseTag case_tag_from_string(const std::string& s) {
    for (auto t : {CaseTag::ThreeRealExponentials, CaseTag::ComplexPair, CaseTag::DoubleRoot, CaseTag::TripleRoot}) {
        if (to_string(t) == s) return t;
    }
    throw Error(ErrorKind::MalformedInput, "unknown case tag '" + s + "'");
}

double QFunction::value(double x1, double x2) const {
    return take(std::exp(exponent[0] * x1 + exponent[1] * x2) * eval(poly, x1, x2), real_form);
}

Eigen::Vector3d QFunction::jet(double x1, double x2) const {
    const Complex e = std::exp(exponent[0] * x1 + exponent[1] * x2);
    const Complex p = eval(poly, x1, x2);
    return {take(e * p, real_form), take(e * (exponent[0] * p + eval(d1(poly), x1, x2)), real_form),
            take(e * (exponent[1] * p + eval(d2(poly), x1, x2)), real_form)};
}

int QFunction::degree(double tol) const {
    if (std::max({std::abs(poly[kX1X1]), std::abs(poly[kX1X2]), std::abs(poly[kX2X2])}) > tol) return 2;
    if (std::max(std::abs(poly[kX1]), std::abs(poly[kX2])) > tol) return 1;
    return 0;
}

bool QFunction::is_zero() const { return poly_max_abs(poly) == 0.0; }

QFunction QFunction::real_exp(double alpha1, double alpha2, const std::array<double, 6>& poly) {
    QFunction f;
    f.exponent = {alpha1, alpha2};
    for (int i = 0; i < 6; ++i) f.poly[i] = poly[i];
    return f;
}

QBasis QBasis::make(const std::array<QFunction, 3>& functions, CaseTag tag) {
    QBasis b;
    b.functions = functions;
    b.case_tag = tag;
    for (int g = 0; g < 3; ++g) {
        if (functions[g].is_zero()) throw Error(ErrorKind::MalformedInput, "generator with zero polynomial");
        b.jets.col(g) = functions[g].jet(0.0, 0.0);
    }
    return b;
}

double JetMatrices::commutator_norm() const { return (a1 * a2 - a2 * a1).norm(); }

JetMatrices jet_matrices(const TypeAConnection& g, const Tolerances& tol) {
    const SymmetricBilinear2 rho = ricci(g);
    JetMatrices jm;
    jm.a1 << 0, 1, 0, -rho.r11, g.a, g.b, -rho.r12, g.c, g.d;
    jm.a2 << 0, 0, 1, -rho.r12, g.c, g.d, -rho.r22, g.e, g.f;
    const double size = std::max(jm.a1.norm(), jm.a2.norm());
    const double comm = jm.commutator_norm();
    if (!(comm <= tol.comm * (1.0 + size * size))) {
        std::ostringstream msg;
        msg << "jet matrices do not commute (|[A1,A2]| = " << comm << ")";
        throw Error(ErrorKind::NotIntegrable, msg.str());
    }
    return jm;
}

double residual(const TypeAConnection& conn, const QFunction& f) {
    const SymmetricBilinear2 rho = ricci(conn);
    const std::array<double, 3> rho_c{rho.r11, rho.r12, rho.r22};
    double worst = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        const auto [i, j] = kComponents[c];
        const ComponentTerms t = component_terms(f, i, j);
        Poly2 e = t.constant;
        e = axpy(conn.christoffel(i, j, 0), t.column[0], e);
        e = axpy(conn.christoffel(i, j, 1), t.column[1], e);
        e = axpy(rho_c[c], t.column[2], e);
        worst = std::max(worst, poly_max_abs(e));
    }
    return worst;
}

QBasis solve_quasi_einstein(const TypeAConnection& conn, const Tolerances& tol) {
    if (!conn.is_finite()) throw Error(ErrorKind::MalformedInput, "connection has non-finite entries");
    const JetMatrices jm = jet_matrices(conn, tol);
    Attempt last;
    for (double theta : {std::numbers::sqrt2, std::numbers::sqrt3}) {
        last = decompose(conn, jm, theta, tol);
        if (last.basis) return *last.basis;
    }
    std::ostringstream msg;
    msg << "joint eigenvalue clustering is unstable (" << last.reason << "; smallest root gap " << last.gap << ")";
    throw Error(ErrorKind::ClusterAmbiguity, msg.str());
}

TypeAConnection connection_from_q(const QBasis& basis, const Tolerances& tol) {
    std::array<double, 6> gamma{};
    std::array<double, 3> rho{};
    for (std::size_t c = 0; c < 3; ++c) {
        const auto [i, j] = kComponents[c];
        Eigen::MatrixXd lhs(3 * 6 * 2, 3);
        Eigen::VectorXd rhs(3 * 6 * 2);
        Eigen::Index row = 0;
        for (const auto& f : basis.functions) {
            const ComponentTerms t = component_terms(f, i, j);
            for (int mono = 0; mono < 6; ++mono) {
                for (int part = 0; part < 2; ++part) {
                    auto pick = [part](Complex z) { return part == 0 ? z.real() : z.imag(); };
                    for (int u = 0; u < 3; ++u) lhs(row, u) = pick(t.column[u][mono]);
                    rhs(row) = -pick(t.constant[mono]);
                    ++row;
                }
            }
        }
        const Eigen::Vector3d sol = lhs.colPivHouseholderQr().solve(rhs);
        if (lhs.colPivHouseholderQr().rank() < 3) {
            throw Error(ErrorKind::Inconsistent, "generators do not determine the connection (rank-deficient system)");
        }
        gamma[2 * c] = sol(0);
        gamma[2 * c + 1] = sol(1);
        rho[c] = sol(2);
    }
    const TypeAConnection out = TypeAConnection::from_array(gamma);
    const double res_tol = tol.res * (1.0 + out.max_abs());
    for (const auto& f : basis.functions) {
        const double r = residual(out, f);
        if (r > res_tol * std::max(1.0, poly_max_abs(f.poly))) {
            std::ostringstream msg;
            msg << "basis is not the solution space of a Type A connection (residual " << r << ")";
            throw Error(ErrorKind::Inconsistent, msg.str());
        }
    }
    const SymmetricBilinear2 rec{rho[0], rho[1], rho[2]};
    if (distance(rec, ricci(out)) > tol.res * (1.0 + out.max_abs() * out.max_abs())) {
        throw Error(ErrorKind::Inconsistent, "recovered Ricci tensor disagrees with the Ricci tensor of the recovered connection");
    }
    return out;
}

std::vector<LinearForm> real_exponentials(const QBasis& basis, const Tolerances& tol) {
    std::vector<LinearForm> out;
    for (const auto& f : basis.functions) {
        if (f.real_form != RealForm::PureReal) continue;
        const double scale = std::max(1.0, poly_max_abs(f.poly));
        if (f.degree(tol.res * scale) != 0) continue;
        out.push_back({f.exponent[0].real(), f.exponent[1].real()});
    }
    std::sort(out.begin(), out.end(), [](const LinearForm& x, const LinearForm& y) {
        return std::pair(x.a1, x.a2) < std::pair(y.a1, y.a2);
    });
    return out;
}

FlattenResult flatten(const TypeAConnection& conn, const Tolerances& tol) {
    const auto exps = real_exponentials(solve_quasi_einstein(conn, tol), tol);
    if (exps.empty()) throw Error(ErrorKind::InternalConsistency, "no real exponential in the solution space");
    LinearForm best = exps.front();
    auto norm = [](const LinearForm& l) { return std::hypot(l.a1, l.a2); };
    for (const auto& l : exps) {
        // exps is sorted lexicographically, so a strict improvement is needed to move
        if (norm(l) < norm(best) - 1e-12 * (1.0 + norm(best))) best = l;
    }
    const TypeAConnection flat = projective_change(conn, -best);
    if (ricci(flat).max_abs() > tol.res * (1.0 + conn.max_abs() * conn.max_abs())) {
        throw Error(ErrorKind::InternalConsistency, "flattened connection is not flat");
    }
    return {best, flat};
}

QBasis transform_q(const QBasis& basis, const LinearMap2& map, const Tolerances& tol) {
    (void)map.inverse(tol);  // throws SingularMap
    const double t11 = map.m11, t12 = map.m12, t21 = map.m21, t22 = map.m22;
    std::array<QFunction, 3> gens;
    for (int g = 0; g < 3; ++g) {
        const QFunction& f = basis.functions[g];
        const Poly2& p = f.poly;
        QFunction h;
        h.real_form = f.real_form;
        h.exponent = {t11 * f.exponent[0] + t21 * f.exponent[1], t12 * f.exponent[0] + t22 * f.exponent[1]};
        h.poly[kOne] = p[kOne];
        h.poly[kX1] = p[kX1] * t11 + p[kX2] * t21;
        h.poly[kX2] = p[kX1] * t12 + p[kX2] * t22;
        h.poly[kX1X1] = p[kX1X1] * t11 * t11 + p[kX1X2] * t11 * t21 + p[kX2X2] * t21 * t21;
        h.poly[kX1X2] = 2.0 * p[kX1X1] * t11 * t12 + p[kX1X2] * (t11 * t22 + t12 * t21) + 2.0 * p[kX2X2] * t21 * t22;
        h.poly[kX2X2] = p[kX1X1] * t12 * t12 + p[kX1X2] * t12 * t22 + p[kX2X2] * t22 * t22;
        gens[g] = h;
    }
    return QBasis::make(gens, basis.case_tag);
}

QBasis scale_q(const QBasis& basis, const LinearForm& form) {
    std::array<QFunction, 3> gens = basis.functions;
    for (auto& f : gens) {
        f.exponent[0] += form.a1;
        f.exponent[1] += form.a2;
    }
    return QBasis::make(gens, basis.case_tag);
}

Eigen::Vector3d propagate_jet(const TypeAConnection& conn, const Eigen::Vector2d& x, const Eigen::Vector3d& v0, int steps) {
    const JetMatrices jm = jet_matrices(conn);
    const Eigen::Matrix3d gen = x(0) * jm.a1 + x(1) * jm.a2;
    const double h = 1.0 / steps;
    Eigen::Vector3d v = v0;
    for (int s = 0; s < steps; ++s) {
        const Eigen::Vector3d k1 = gen * v;
        const Eigen::Vector3d k2 = gen * (v + 0.5 * h * k1);
        const Eigen::Vector3d k3 = gen * (v + 0.5 * h * k2);
        const Eigen::Vector3d k4 = gen * (v + h * k3);
        v += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return v;
}

Eigen::Vector3d propagate_jet_exact(const TypeAConnection& conn, const Eigen::Vector2d& x, const Eigen::Vector3d& v0) {
    const JetMatrices jm = jet_matrices(conn);
    const Eigen::Matrix3d gen = x(0) * jm.a1 + x(1) * jm.a2;
    return gen.exp() * v0;
}

}  // namespace affinelab

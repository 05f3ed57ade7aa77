#include "affinelab/moduli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace affinelab {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// grid value i * step computed from the integer index so rows are reproducible
std::vector<double> ticks(int lo, int hi, double step) {
    std::vector<double> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i * step);
    return out;
}

}  // namespace

SymmetricBilinear2 rho_v(const TypeAConnection& g) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(i, j) += g.christoffel(i, k, l) * g.christoffel(j, l, k);
    return SymmetricBilinear2::from_matrix(m);
}

PsiPair psi_Psi(const TypeAConnection& conn, const Tolerances& tol) {
    const SymmetricBilinear2 rho = ricci(conn);
    if (rank_signature(rho, tol.rank).rank < 2) {
        std::ostringstream msg;
        msg << "det rho = " << rho.det() << " is zero: psi and Psi need a non-degenerate Ricci tensor";
        throw Error(ErrorKind::DegenerateRicci, msg.str());
    }
    const SymmetricBilinear2 v = rho_v(conn);
    const Eigen::Matrix2d inv = rho.matrix().inverse();
    return {(inv * v.matrix()).trace(), v.det() / rho.det()};
}

double alpha_for_direction(const TypeAConnection& conn, const Eigen::Vector2d& x) {
    const SymmetricBilinear2 rho = ricci(conn);
    const double rxx = rho(x, x);
    if (rxx == 0.0) throw Error(ErrorKind::DegenerateRicci, "rho(X, X) = 0 for the chosen direction");
    const double t = nabla_ricci(conn).cube(x);
    return t * t / (rxx * rxx * rxx);
}

AlphaPair alpha_epsilon(const TypeAConnection& conn, const Tolerances& tol) {
    const SymmetricBilinear2 rho = ricci(conn);
    const int rank = rank_signature(rho, tol.rank).rank;
    if (rank != 1) {
        std::ostringstream msg;
        msg << "alpha and epsilon need a rank-one Ricci tensor, got rank " << rank;
        throw Error(ErrorKind::DegenerateRicci, msg.str());
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rho.matrix());
    const int big = std::abs(es.eigenvalues()(1)) >= std::abs(es.eigenvalues()(0)) ? 1 : 0;
    const Eigen::Vector2d x = es.eigenvectors().col(big);
    const Eigen::Vector2d n = es.eigenvectors().col(1 - big);
    const double alpha = alpha_for_direction(conn, x);
    const double check = alpha_for_direction(conn, x + 0.75 * n);
    if (std::abs(alpha - check) > 1e-6 * (1 + std::abs(alpha))) {
        std::ostringstream msg;
        msg << "alpha depends on the direction: " << alpha << " vs " << check;
        throw Error(ErrorKind::InternalConsistency, msg.str());
    }
    return {alpha, rho(x, x) > 0 ? 1 : -1};
}

InvariantReport invariants(const TypeAConnection& conn, const Tolerances& tol) {
    InvariantReport r;
    const RankSignature rs = rank_signature(ricci(conn), tol.rank);
    r.rank = rs.rank;
    r.signature = rs.signature;
    r.flat = rs.rank == 0;
    if (rs.rank == 2) {
        const PsiPair p = psi_Psi(conn, tol);
        r.psi = p.psi;
        r.Psi = p.Psi;
    } else if (rs.rank == 1) {
        const AlphaPair a = alpha_epsilon(conn, tol);
        r.alpha = a.alpha;
        r.epsilon = a.epsilon;
    }
    return r;
}

PsiPair sigma_ell(double t) {
    if (t == 0.0) throw Error(ErrorKind::DomainViolation, "boundary curve parameter must be non-zero");
    const double t2 = t * t;
    return {-4 * t2 - 1 / t2 + 2, 4 * t2 * t2 - 4 * t2 + 2};
}

PsiPair sigma_r(double t) {
    if (t == 0.0) throw Error(ErrorKind::DomainViolation, "boundary curve parameter must be non-zero");
    const double t2 = t * t;
    return {4 * t2 + 1 / t2 + 2, 4 * t2 * t2 + 4 * t2 + 2};
}

PsiPair exceptional_ray(int sign, double t) {
    if (t < 0) throw Error(ErrorKind::DomainViolation, "ray parameter must be non-negative");
    if (sign != 1 && sign != -1) throw Error(ErrorKind::DomainViolation, "ray sign must be +1 or -1");
    return {7 + sign * t, 10 + 4 * sign * t};
}

Signature region_from(double det_rho, double tr_rho) {
    if (det_rho < 0) return Signature::Indefinite;
    if (det_rho > 0 && tr_rho > 0) return Signature::PositiveDefinite;
    if (det_rho > 0 && tr_rho < 0) return Signature::NegativeDefinite;
    return Signature::Degenerate;
}

std::vector<std::pair<std::string, std::pair<double, double>>> s3_images(double a1, double a2) {
    std::vector<std::pair<std::string, std::pair<double, double>>> out;
    out.push_back({"s123", {a1, a2}});
    out.push_back({"s213", {a2, a1}});
    if (a2 != 0) out.push_back({"s132", {-a1 / a2, 1 / a2}});
    if (a1 != 0) out.push_back({"s321", {1 / a1, -a2 / a1}});
    if (a1 != 0) out.push_back({"s231", {-a2 / a1, 1 / a1}});
    if (a2 != 0) out.push_back({"s312", {1 / a2, -a1 / a2}});
    return out;
}

bool in_fundamental_domain(Signature region, double x, double y) {
    switch (region) {
        case Signature::NegativeDefinite: return -1 <= y && y < x && x < 0;
        case Signature::Indefinite: return 0 < y && y < x && x + y > 1;
        case Signature::PositiveDefinite: return 0 < y && (y < x || (y == x && x < 0.5)) && x + y < 1;
        case Signature::Degenerate: return false;
    }
    return false;
}

std::string chamber_of(double a1, double a2) {
    const SymmetricBilinear2 rho = ricci(family_connection({Family::Gr2, {a1, a2}}));
    const Signature region = region_from(rho.det(), rho.trace());
    for (const auto& [label, p] : s3_images(a1, a2)) {
        if (in_fundamental_domain(region, p.first, p.second)) return label;
    }
    return "none";
}

std::vector<FigureRow> region_sample(const GridSpec& grid, const Tolerances& tol) {
    std::vector<FigureRow> rows;
    for (const CatalogEntry& e : enumerate_for_tests(grid)) {
        const SymmetricBilinear2 rho = ricci(e.connection);
        if (rank_signature(rho, tol.rank).rank < 2) continue;
        FigureRow row;
        row.family = e.family;
        row.det_rho = rho.det();
        row.tr_rho = rho.trace();
        row.region = region_from(row.det_rho, row.tr_rho);
        if (e.family.name == Family::Gr2) row.chamber = chamber_of(e.family.params[0], e.family.params[1]);
        const PsiPair p = psi_Psi(e.connection, tol);
        row.psi = p.psi;
        row.Psi = p.Psi;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FigureRow> figure_rows(const std::string& name, const Tolerances& tol) {
    std::vector<FigureRow> rows;
    auto add = [&](const GridSpec& g) {
        auto part = region_sample(g, tol);
        rows.insert(rows.end(), part.begin(), part.end());
    };
    if (name == "moduli") {
        add({Family::Gr2, ticks(-12, 12, 0.25), ticks(-12, 12, 0.25)});
        add({Family::Gc2, ticks(-12, 12, 0.25), ticks(0, 12, 0.25)});
        std::vector<double> a = ticks(-12, 12, 0.25);
        add({Family::Gp2, a, {}});
        add({Family::Gq2, {1, -1}, {}});
    } else if (name == "domains") {
        add({Family::Gr2, ticks(-24, 24, 0.125), ticks(-24, 24, 0.125)});
    } else {
        throw Error(ErrorKind::MalformedInput, "unknown figure '" + name + "' (expected moduli or domains)");
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
    out << "family,p1,p2,det_rho,tr_rho,region,chamber,psi,Psi\n";
    for (const FigureRow& r : rows) {
        const auto& p = r.family.params;
        out << to_string(r.family.name) << ',' << (p.size() > 0 ? num(p[0]) : "") << ','
            << (p.size() > 1 ? num(p[1]) : "") << ',' << num(r.det_rho) << ',' << num(r.tr_rho) << ','
            << to_string(r.region) << ',' << r.chamber << ',' << num(r.psi) << ',' << num(r.Psi) << '\n';
    }
}

namespace {

struct Frame {
    double x0, x1, y0, y1;
    double size = 600;

    double px(double x) const { return (x - x0) / (x1 - x0) * size; }
    double py(double y) const { return size - (y - y0) / (y1 - y0) * size; }
    bool inside(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

const char* colour(Signature s) {
    switch (s) {
        case Signature::NegativeDefinite: return "#6baed6";
        case Signature::Indefinite: return "#74c476";
        case Signature::PositiveDefinite: return "#e6c229";
        default: return "#888888";
    }
}

void polyline(std::ostream& out, const Frame& f, const std::vector<PsiPair>& pts, const char* stroke) {
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const PsiPair& p : pts) out << num(f.px(p.psi)) << ',' << num(f.py(p.Psi)) << ' ';
    out << "\"/>\n";
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<FigureRow>& rows, bool parameter_plane) {
    // moduli view: psi in [-20, 30], Psi in [-10, 60]; parameter view: [-3.5, 3.5]^2
    const Frame f = parameter_plane ? Frame{-3.5, 3.5, -3.5, 3.5} : Frame{-20, 30, -10, 60};
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    out << "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"600\" height=\"600\"/></clipPath></defs>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\" stroke=\"black\"/>\n";
    out << "<g clip-path=\"url(#frame)\">\n";
    for (const FigureRow& r : rows) {
        const double x = parameter_plane ? r.family.params.at(0) : r.psi;
        const double y = parameter_plane ? r.family.params.at(1) : r.Psi;
        if (!f.inside(x, y)) continue;
        out << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\"1.6\" fill=\"" << colour(r.region)
            << "\"/>\n";
    }
    if (parameter_plane) {
        auto line = [&](double xa, double ya, double xb, double yb) {
            out << "<line x1=\"" << num(f.px(xa)) << "\" y1=\"" << num(f.py(ya)) << "\" x2=\"" << num(f.px(xb))
                << "\" y2=\"" << num(f.py(yb)) << "\" stroke=\"black\"/>\n";
        };
        line(0, -3.5, 0, 3.5);
        line(-1, -3.5, -1, 3.5);
        line(-3.5, 0, 3.5, 0);
        line(-3.5, -1, 3.5, -1);
        line(-3.5, 4.5, 4.5, -3.5);
        line(-3.5, -3.5, 3.5, 3.5);
    } else {
        std::vector<PsiPair> left, right, up, down;
        for (int i = 0; i <= 400; ++i) {
            const double t = 0.15 + i * (3.0 - 0.15) / 400;
            left.push_back(sigma_ell(t));
            right.push_back(sigma_r(t));
        }
        for (int i = 0; i <= 100; ++i) {
            up.push_back(exceptional_ray(1, i * 0.5));
            down.push_back(exceptional_ray(-1, i * 0.5));
        }
        polyline(out, f, left, "red");
        polyline(out, f, right, "blue");
        polyline(out, f, up, "darkred");
        polyline(out, f, down, "darkblue");
    }
    out << "</g>\n</svg>\n";
}

}  // namespace affinelab

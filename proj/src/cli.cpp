#include "affinelab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "affinelab/catalog.hpp"
#include "affinelab/classify.hpp"
#include "affinelab/json_io.hpp"
#include "affinelab/moduli.hpp"
#include "affinelab/quasi_einstein.hpp"

namespace affinelab {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput:
        case ErrorKind::DomainViolation: return 2;
        case ErrorKind::DegenerateRicci:
        case ErrorKind::SingularMap:
        case ErrorKind::ClusterAmbiguity:
        case ErrorKind::Inconsistent: return 3;
        case ErrorKind::NotIntegrable:
        case ErrorKind::WitnessVerificationFailed:
        case ErrorKind::InternalConsistency: return 4;
    }
    return 4;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string vec(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s + ")";
}

std::string matrix(const LinearMap2& m) {
    return "[[" + num(m.m11) + ", " + num(m.m12) + "], [" + num(m.m21) + ", " + num(m.m22) + "]]";
}

std::string gamma_text(const TypeAConnection& g) {
    const auto a = g.to_array();
    return "Gamma" + vec({a.begin(), a.end()});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::MalformedInput, "cannot write '" + path + "'");
    out << text;
}

// "-1,0,..." would otherwise be taken for a short flag
std::vector<std::string> normalise_args(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        const bool takes_list = a == "--gamma" || a == "--gamma1" || a == "--gamma2" || a == "--params";
        if (takes_list && i + 1 < argc && argv[i + 1][0] == '-' && argv[i + 1][1] != '-') {
            a += "=" + std::string(argv[++i]);
        }
        args.push_back(a);
    }
    return args;
}

struct Options {
    double tol = 1e-9;
    std::string format = "human";
    std::uint64_t seed = 20170523;
};

Tolerances tolerances(const Options& o) {
    if (!(o.tol > 0) || !std::isfinite(o.tol)) throw Error(ErrorKind::MalformedInput, "--tol must be positive");
    return Tolerances{}.scaled(o.tol / 1e-9).with_env_overrides();
}

struct ConnectionSource {
    std::string gamma;
    std::string json;

    void add(CLI::App* app, const std::string& suffix = "") {
        app->add_option("--gamma" + suffix, gamma, "Christoffel constants a,b,c,d,e,f");
        app->add_option("--json" + suffix, json, "JSON file {\"gamma\": [a,b,c,d,e,f]}");
    }

    TypeAConnection get(const std::string& suffix = "") const {
        if (!gamma.empty() && !json.empty()) {
            throw Error(ErrorKind::MalformedInput, "give either --gamma" + suffix + " or --json" + suffix + ", not both");
        }
        if (!gamma.empty()) return connection_from_string(gamma);
        if (!json.empty()) return connection_from_json(parse_json(read_file(json)));
        throw Error(ErrorKind::MalformedInput, "a connection is required (--gamma" + suffix + " or --json" + suffix + ")");
    }
};

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& human) {
    if (o.format == "json") out << j.dump(2) << "\n";
    else out << human;
}

std::string describe(const QFunction& f) {
    std::ostringstream s;
    s << to_string(f.real_form) << " exp(" << num(f.exponent[0].real());
    if (f.exponent[0].imag() != 0) s << (f.exponent[0].imag() > 0 ? "+" : "") << num(f.exponent[0].imag()) << "i";
    s << " x1 + " << num(f.exponent[1].real());
    if (f.exponent[1].imag() != 0) s << (f.exponent[1].imag() > 0 ? "+" : "") << num(f.exponent[1].imag()) << "i";
    s << " x2) * (";
    static const char* names[] = {"1", "x1", "x2", "x1^2", "x1 x2", "x2^2"};
    bool first = true;
    for (int m = 0; m < 6; ++m) {
        const Complex c = f.poly[m];
        if (c == Complex(0, 0)) continue;
        s << (first ? "" : " + ");
        first = false;
        if (c.imag() == 0) s << num(c.real());
        else s << "(" << num(c.real()) << (c.imag() > 0 ? "+" : "") << num(c.imag()) << "i)";
        if (m > 0) s << " " << names[m];
    }
    s << ")";
    return s.str();
}

std::string human(const NormalFormResult& nf) {
    std::ostringstream s;
    s << "family: " << to_string(nf.family.name) << "\n";
    if (!nf.family.params.empty()) s << "params: " << vec(nf.family.params) << "\n";
    s << "witness: " << matrix(nf.witness) << "\n";
    s << "case: " << to_string(nf.case_tag) << "\nrank: " << nf.rank << "\n";
    if (nf.pre_shift) s << "pre_shift: " << vec({nf.pre_shift->a1, nf.pre_shift->a2}) << "\n";
    s << "verification_residual: " << num(nf.verification_residual) << "\n";
    return s.str();
}

std::string human(const InvariantReport& r) {
    std::ostringstream s;
    s << "rank: " << r.rank << "\nsignature: " << to_string(r.signature) << "\nflat: " << (r.flat ? "yes" : "no") << "\n";
    if (r.psi) s << "psi: " << num(*r.psi) << "\nPsi: " << num(*r.Psi) << "\n";
    if (r.alpha) s << "alpha: " << num(*r.alpha) << "\nepsilon: " << *r.epsilon << "\n";
    return s.str();
}

int selfcheck(std::ostream& out, const Options& o, const Tolerances& tol) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-2, 2);
    const int n = 200;
    int ricci_ok = 0, comm_ok = 0, round_ok = 0, flat_ok = 0, nf_ok = 0, ambiguous = 0;
    for (int s = 0; s < n; ++s) {
        const TypeAConnection g{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        LinearMap2 t{u(rng), u(rng), u(rng), u(rng)};
        while (std::abs(t.det()) < 0.2) t = {u(rng), u(rng), u(rng), u(rng)};
        const double scale = 1 + g.max_abs() * g.max_abs();
        try {
            nabla_ricci(g);
            if (distance(ricci(g), ricci_by_contraction(g)) <= 1e-12 * scale) ++ricci_ok;
            const JetMatrices jm = jet_matrices(g, tol);
            const double a = std::max(jm.a1.norm(), jm.a2.norm());
            if (jm.commutator_norm() <= 1e-10 * (1 + a * a)) ++comm_ok;
            if (distance(connection_from_q(solve_quasi_einstein(g, tol), tol), g) <= 1e-8 * scale) ++round_ok;
            if (ricci(flatten(g, tol).flat).max_abs() <= 1e-9 * scale) ++flat_ok;
            const NormalFormResult x = normal_form(g, tol), y = normal_form(pullback(g, t, tol), tol);
            bool same = x.family.name == y.family.name;
            for (std::size_t i = 0; same && i < x.family.params.size(); ++i) {
                same = std::abs(x.family.params[i] - y.family.params[i]) <= 1e-7 * (1 + std::abs(x.family.params[i]));
            }
            if (same) ++nf_ok;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ClusterAmbiguity) ++ambiguous;
        }
    }
    const bool pass = ricci_ok == n && comm_ok == n && round_ok == n && flat_ok == n && nf_ok == n;
    Json j{{"seed", o.seed},    {"samples", n},           {"ricci", ricci_ok},    {"integrability", comm_ok},
           {"reconstruct", round_ok}, {"flatten", flat_ok}, {"normal_form", nf_ok}, {"ambiguous", ambiguous},
           {"passed", pass}};
    std::ostringstream h;
    h << "seed " << o.seed << ", " << n << " random connections\n"
      << "ricci closed form vs contraction: " << ricci_ok << "/" << n << "\n"
      << "jet matrices commute: " << comm_ok << "/" << n << "\n"
      << "reconstruct from solutions: " << round_ok << "/" << n << "\n"
      << "flatten gives zero Ricci: " << flat_ok << "/" << n << "\n"
      << "normal form conjugation invariant: " << nf_ok << "/" << n << "\n"
      << (pass ? "selfcheck passed\n" : "selfcheck FAILED\n");
    emit(out, o, j, h.str());
    return pass ? 0 : 4;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type A affine surface geometry: curvature, solution spaces, normal forms and moduli"};
    app.name("affinelab");
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol", o.tol, "master tolerance (default 1e-9), scaled per check");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--seed", o.seed, "seed for randomized checks");
    // global options are accepted after the subcommand as well
    app.fallthrough();

    ConnectionSource src, src1, src2;
    std::string mode = "linear", want = "psi", qfile, family, params, fig_name, fig_out, fig_svg;
    int flat_index = -1;
    bool grid = false;

    auto* ricci_cmd = app.add_subcommand("ricci", "Ricci tensor, its covariant derivative, rank and signature");
    src.add(ricci_cmd);
    auto* solve_cmd = app.add_subcommand("solve", "closed-form basis of the quasi-Einstein solution space");
    src.add(solve_cmd);
    auto* recon_cmd = app.add_subcommand("reconstruct", "connection from a solution basis (output of solve)");
    recon_cmd->add_option("--json,--q", qfile, "basis JSON file")->required();
    auto* classify_cmd = app.add_subcommand("classify", "normal form with witness");
    src.add(classify_cmd);
    auto* equiv_cmd = app.add_subcommand("equivalent", "decide linear or affine equivalence");
    equiv_cmd->add_option("--mode", mode, "linear or affine")->check(CLI::IsMember({"linear", "affine"}));
    src1.add(equiv_cmd, "1");
    src2.add(equiv_cmd, "2");
    auto* inv_cmd = app.add_subcommand("invariants", "psi, Psi (rank 2) or alpha, epsilon (rank 1)");
    src.add(inv_cmd);
    inv_cmd->add_option("--want", want, "invariant that must exist: psi, alpha or any")
        ->check(CLI::IsMember({"psi", "alpha", "any"}));
    auto* flatten_cmd = app.add_subcommand("flatten", "linear projective change to a flat connection");
    src.add(flatten_cmd);
    auto* killing_cmd = app.add_subcommand("killing", "affine Killing vector fields with affine coefficients");
    src.add(killing_cmd);
    auto* nb_cmd = app.add_subcommand("neighbors", "flat connections projectively linked to a flat family");
    nb_cmd->add_option("--flat-index", flat_index, "flat family index 0..5")->required();
    auto* cat_cmd = app.add_subcommand("catalog", "named families and their published data");
    cat_cmd->add_option("--family", family, "family name, e.g. Gr2 or G2_1");
    cat_cmd->add_option("--params", params, "comma-separated parameters");
    cat_cmd->add_flag("--grid", grid, "all entries of the documented test grid");
    auto* fig_cmd = app.add_subcommand("figure", "figure datasets as CSV with optional SVG");
    fig_cmd->add_option("--name", fig_name, "moduli or domains")->required()->check(CLI::IsMember({"moduli", "domains"}));
    fig_cmd->add_option("--out", fig_out, "CSV path (stdout when omitted)");
    fig_cmd->add_option("--svg", fig_svg, "SVG path");
    auto* self_cmd = app.add_subcommand("selfcheck", "randomized invariant checks");

    const std::vector<std::string> args = normalise_args(argc, argv);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error [MalformedInput]: " << e.what() << "\n";
        return 2;
    }

    try {
        const Tolerances tol = tolerances(o);
        if (ricci_cmd->parsed()) {
            const TypeAConnection g = src.get();
            const SymmetricBilinear2 rho = ricci(g);
            const CubicSymmetricTensor t = nabla_ricci(g);
            const RankSignature rs = rank_signature(rho, tol.rank);
            Json j{{"gamma", g.to_array()},
                   {"rho", to_json(rho)},
                   {"nabla_rho", {t.t111, t.t112, t.t122, t.t222}},
                   {"rank", rs.rank},
                   {"signature", to_string(rs.signature)}};
            std::ostringstream h;
            h << "rho: [[" << num(rho.r11) << ", " << num(rho.r12) << "], [" << num(rho.r12) << ", " << num(rho.r22) << "]]\n"
              << "nabla rho (111, 112, 122, 222): " << vec({t.t111, t.t112, t.t122, t.t222}) << "\n"
              << "rank: " << rs.rank << "\nsignature: " << to_string(rs.signature) << "\n";
            emit(out, o, j, h.str());
        } else if (solve_cmd->parsed()) {
            const QBasis q = solve_quasi_einstein(src.get(), tol);
            std::ostringstream h;
            h << "case: " << to_string(q.case_tag) << "\n";
            for (const auto& f : q.functions) h << "  " << describe(f) << "\n";
            emit(out, o, to_json(q), h.str());
        } else if (recon_cmd->parsed()) {
            const TypeAConnection g = connection_from_q(qbasis_from_json(parse_json(read_file(qfile))), tol);
            emit(out, o, to_json(g), gamma_text(g) + "\n");
        } else if (classify_cmd->parsed()) {
            const NormalFormResult nf = normal_form(src.get(), tol);
            emit(out, o, to_json(nf), human(nf));
        } else if (equiv_cmd->parsed()) {
            const TypeAConnection g1 = src1.get("1"), g2 = src2.get("2");
            if (mode == "linear") {
                const LinearDecision d = linear_equivalent(g1, g2, tol);
                std::ostringstream h;
                h << (d.equivalent ? "yes" : "no") << "\nreason: " << d.reason << "\nmargin: " << num(d.margin) << "\n";
                if (d.witness) h << "witness: " << matrix(*d.witness) << "\n";
                emit(out, o, to_json(d), h.str());
            } else {
                const AffineDecision d = affine_equivalent(g1, g2, tol);
                std::ostringstream h;
                h << (d.equivalent ? "yes" : "no") << "\nreason: " << d.reason << "\nmargin: " << num(d.margin) << "\n";
                emit(out, o, to_json(d), h.str());
            }
        } else if (inv_cmd->parsed()) {
            const InvariantReport r = invariants(src.get(), tol);
            emit(out, o, to_json(r), human(r));
            if (want == "psi" && !r.psi) {
                err << "error [DegenerateRicci]: det rho = 0 (rank " << r.rank
                    << "): psi and Psi need a non-degenerate Ricci tensor\n";
                return 3;
            }
            if (want == "alpha" && !r.alpha) {
                err << "error [DegenerateRicci]: alpha and epsilon need a rank-one Ricci tensor, got rank " << r.rank << "\n";
                return 3;
            }
        } else if (flatten_cmd->parsed()) {
            const FlattenResult f = flatten(src.get(), tol);
            Json j{{"L", to_json(f.form)}, {"flat", f.flat.to_array()}};
            emit(out, o, j, "L: " + vec({f.form.a1, f.form.a2}) + "\nflat: " + gamma_text(f.flat) + "\n");
        } else if (killing_cmd->parsed()) {
            const KillingBasis k = killing_affine(src.get(), tol);
            std::ostringstream h;
            h << "dim: " << k.dim << "\n";
            for (const auto& g : k.generators) {
                h << "  (" << num(g[0]) << " + " << num(g[1]) << " x1 + " << num(g[2]) << " x2) d1 + (" << num(g[3]) << " + "
                  << num(g[4]) << " x1 + " << num(g[5]) << " x2) d2\n";
            }
            emit(out, o, to_json(k), h.str());
        } else if (nb_cmd->parsed()) {
            const auto ns = flat_projective_neighbors(flat_index, tol);
            Json j = Json::array();
            std::ostringstream h;
            for (const auto& n : ns) {
                j.push_back(to_json(n));
                h << "L = " << vec({n.form.a1, n.form.a2}) << ": " << gamma_text(n.connection) << " -> "
                  << to_string(n.normal_form.family.name);
                if (n.listed_map) {
                    h << ", listed map " << matrix(*n.listed_map) << " to " << to_string(*n.listed_target)
                      << " (residual " << num(n.listed_residual) << ")";
                }
                h << "\n";
            }
            emit(out, o, j, h.str());
        } else if (cat_cmd->parsed()) {
            if (!family.empty()) {
                std::vector<double> p;
                if (!params.empty()) {
                    std::stringstream ss(params);
                    std::string field;
                    while (std::getline(ss, field, ',')) {
                        try {
                            p.push_back(std::stod(field));
                        } catch (const std::exception&) {
                            throw Error(ErrorKind::MalformedInput, "'" + field + "' is not a number");
                        }
                    }
                }
                const CatalogEntry e = construct({family_from_string(family), p});
                std::ostringstream h;
                h << e.family.label() << ": " << gamma_text(e.connection) << "\n"
                  << "rho: [[" << num(e.published_rho.r11) << ", " << num(e.published_rho.r12) << "], ["
                  << num(e.published_rho.r12) << ", " << num(e.published_rho.r22) << "]]\n";
                for (const auto& f : e.published_q.functions) h << "  " << describe(f) << "\n";
                emit(out, o, to_json(e), h.str());
            } else if (grid) {
                Json j = Json::array();
                std::ostringstream h;
                for (const auto& e : enumerate_all()) {
                    j.push_back(to_json(e));
                    h << e.family.label() << ": " << gamma_text(e.connection) << "\n";
                }
                emit(out, o, j, h.str());
            } else {
                std::ostringstream h;
                for (Family f : all_families()) {
                    h << to_string(f) << " [" << parameter_domain(f) << "] " << family_description(f) << "\n";
                }
                emit(out, o, families_json(), h.str());
            }
        } else if (fig_cmd->parsed()) {
            const auto rows = figure_rows(fig_name, tol);
            std::ostringstream csv;
            write_csv(csv, rows);
            if (fig_out.empty()) out << csv.str();
            else write_file(fig_out, csv.str());
            if (!fig_svg.empty()) {
                std::ostringstream svg;
                write_svg(svg, rows, fig_name == "domains");
                write_file(fig_svg, svg.str());
            }
        } else if (self_cmd->parsed()) {
            return selfcheck(out, o, tol);
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error [InternalConsistency]: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace affinelab

#include "affinelab/json_io.hpp"

#include <cmath>
#include <sstream>

namespace affinelab {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

double number(const Json& v, const std::string& where) {
    if (!v.is_number()) malformed(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) malformed(where + " must be finite");
    return x;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const TypeAConnection& conn) { return Json{{"gamma", conn.to_array()}}; }

TypeAConnection connection_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("gamma")) malformed("expected an object with a \"gamma\" array");
    const Json& g = doc["gamma"];
    if (!g.is_array() || g.size() != 6) malformed("\"gamma\" must hold exactly six numbers");
    std::array<double, 6> v{};
    for (std::size_t i = 0; i < 6; ++i) v[i] = number(g[i], "gamma[" + std::to_string(i) + "]");
    return TypeAConnection::from_array(v);
}

TypeAConnection connection_from_string(const std::string& text) {
    std::array<double, 6> v{};
    std::size_t count = 0, pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string field = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (count == 6) malformed("expected six comma-separated numbers, got more");
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(field, &used);
        } catch (const std::exception&) {
            malformed("'" + field + "' is not a number");
        }
        if (field.find_first_not_of(" \t", used) != std::string::npos) malformed("'" + field + "' is not a number");
        if (!std::isfinite(x)) malformed("'" + field + "' is not finite");
        v[count++] = x;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (count != 6) malformed("expected six comma-separated numbers, got " + std::to_string(count));
    return TypeAConnection::from_array(v);
}

Json to_json(const QBasis& basis) {
    Json gens = Json::array();
    for (const QFunction& f : basis.functions) {
        Json poly = Json::array();
        for (const Complex& c : f.poly) poly.push_back({c.real(), c.imag()});
        gens.push_back({{"alpha", {f.exponent[0].real(), f.exponent[0].imag(), f.exponent[1].real(), f.exponent[1].imag()}},
                        {"poly", poly},
                        {"real_form", to_string(f.real_form)}});
    }
    return Json{{"case", to_string(basis.case_tag)}, {"generators", gens}};
}

QBasis qbasis_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("case") || !doc.contains("generators")) {
        malformed("expected an object with \"case\" and \"generators\"");
    }
    if (!doc["case"].is_string()) malformed("\"case\" must be a string");
    CaseTag tag;
    try {
        tag = case_tag_from_string(doc["case"].get<std::string>());
    } catch (const Error& e) {
        malformed(e.what());
    }
    const Json& gens = doc["generators"];
    if (!gens.is_array() || gens.size() != 3) malformed("\"generators\" must hold exactly three entries");
    std::array<QFunction, 3> fs;
    for (std::size_t g = 0; g < 3; ++g) {
        const Json& j = gens[g];
        const std::string at = "generators[" + std::to_string(g) + "]";
        if (!j.is_object() || !j.contains("alpha") || !j.contains("poly")) malformed(at + " needs \"alpha\" and \"poly\"");
        const Json& a = j["alpha"];
        if (!a.is_array() || a.size() != 4) malformed(at + ".alpha must hold four numbers");
        fs[g].exponent = {Complex(number(a[0], at), number(a[1], at)), Complex(number(a[2], at), number(a[3], at))};
        const Json& p = j["poly"];
        if (!p.is_array() || p.size() != 6) malformed(at + ".poly must hold six [re, im] pairs");
        for (std::size_t m = 0; m < 6; ++m) {
            if (!p[m].is_array() || p[m].size() != 2) malformed(at + ".poly entries must be [re, im] pairs");
            fs[g].poly[m] = Complex(number(p[m][0], at), number(p[m][1], at));
        }
        if (j.contains("real_form")) {
            if (!j["real_form"].is_string()) malformed(at + ".real_form must be a string");
            try {
                fs[g].real_form = real_form_from_string(j["real_form"].get<std::string>());
            } catch (const Error& e) {
                malformed(e.what());
            }
        }
    }
    try {
        return QBasis::make(fs, tag);
    } catch (const Error& e) {
        malformed(e.what());
    }
}

Json to_json(const SymmetricBilinear2& rho) { return Json::array({Json::array({rho.r11, rho.r12}), Json::array({rho.r12, rho.r22})}); }

Json to_json(const LinearMap2& m) { return Json::array({Json::array({m.m11, m.m12}), Json::array({m.m21, m.m22})}); }

Json to_json(const LinearForm& l) { return Json::array({l.a1, l.a2}); }

Json to_json(const FamilyId& id) {
    return Json{{"name", to_string(id.name)}, {"params", id.params}, {"label", id.label()}};
}

Json to_json(const NormalFormResult& nf) {
    Json j{{"family", to_json(nf.family)},
           {"witness", to_json(nf.witness)},
           {"case", to_string(nf.case_tag)},
           {"rank", nf.rank},
           {"verification_residual", nf.verification_residual},
           {"description", family_description(nf.family.name)}};
    j["pre_shift"] = nf.pre_shift ? to_json(*nf.pre_shift) : Json(nullptr);
    return j;
}

Json to_json(const InvariantReport& r) {
    Json j{{"rank", r.rank}, {"signature", to_string(r.signature)}, {"flat", r.flat}};
    if (r.psi) j["psi"] = *r.psi;
    if (r.Psi) j["Psi"] = *r.Psi;
    if (r.alpha) j["alpha"] = *r.alpha;
    if (r.epsilon) j["epsilon"] = *r.epsilon;
    return j;
}

Json to_json(const LinearDecision& d) {
    Json j{{"mode", "linear"},
           {"equivalent", d.equivalent},
           {"margin", finite_or_null(d.margin)},
           {"reason", d.reason},
           {"first", to_json(d.first)},
           {"second", to_json(d.second)}};
    j["witness"] = d.witness ? to_json(*d.witness) : Json(nullptr);
    return j;
}

Json to_json(const AffineDecision& d) {
    Json j{{"mode", "affine"},
           {"equivalent", d.equivalent},
           {"margin", finite_or_null(d.margin)},
           {"reason", d.reason},
           {"first", to_json(d.first)},
           {"second", to_json(d.second)}};
    j["linear_cross_check"] = d.linear_cross_check ? Json(*d.linear_cross_check) : Json(nullptr);
    return j;
}

Json to_json(const FlatNeighbor& n) {
    Json j{{"L", to_json(n.form)}, {"gamma", n.connection.to_array()}, {"normal_form", to_json(n.normal_form)}};
    if (n.listed_map) {
        j["listed_map"] = to_json(*n.listed_map);
        j["listed_target"] = to_string(*n.listed_target);
        j["listed_residual"] = n.listed_residual;
    }
    return j;
}

Json to_json(const KillingBasis& k) {
    Json gens = Json::array();
    for (const auto& g : k.generators) gens.push_back(g);
    return Json{{"dim", k.dim}, {"coefficients", "p0,p1,p2,q0,q1,q2"}, {"generators", gens}, {"max_residual", k.max_residual}};
}

Json to_json(const CatalogEntry& e) {
    Json j{{"family", to_json(e.family)},
           {"description", family_description(e.family.name)},
           {"domain", parameter_domain(e.family.name)},
           {"gamma", e.connection.to_array()},
           {"rho", to_json(e.published_rho)},
           {"q", to_json(e.published_q)}};
    if (e.published_psi) j["psi_Psi"] = {e.published_psi->psi, e.published_psi->Psi};
    if (e.published_alpha) j["alpha_epsilon"] = {e.published_alpha->alpha, e.published_alpha->epsilon};
    return j;
}

Json families_json() {
    Json out = Json::array();
    for (Family f : all_families()) {
        out.push_back({{"name", to_string(f)},
                       {"parameters", parameter_count(f)},
                       {"domain", parameter_domain(f)},
                       {"description", family_description(f)}});
    }
    return Json{{"families", out}};
}

}  // namespace affinelab

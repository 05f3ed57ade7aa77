#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "affinelab/cli.hpp"
#include "affinelab/json_io.hpp"
#include "affinelab/quasi_einstein.hpp"

using namespace affinelab;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "affinelab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / ("affinelab_test_" + name); }

}  // namespace

TEST_CASE("classify reports the flat family with identity witness") {
    const Outcome o = call({"classify", "--gamma", "-1,0,0,0,0,1"});
    CHECK(o.code == 0);
    CHECK(has(o.out, "G2_0"));
    const Outcome j = call({"--format", "json", "classify", "--gamma", "-1,0,0,0,0,1"});
    CHECK(j.code == 0);
    const Json doc = Json::parse(j.out);
    CHECK(doc["family"]["name"] == "G2_0");
    CHECK(doc["witness"] == Json::parse("[[1.0,0.0],[0.0,1.0]]"));
}

TEST_CASE("linear equivalence of the documented rank-one pair") {
    const Outcome o = call({"equivalent", "--mode", "linear", "--gamma1", "-1,0,0.5,0,0,2", "--gamma2", "-1,0,-1.5,0,0,-2"});
    CHECK(o.code == 0);
    CHECK(o.out.rfind("yes", 0) == 0);
    const Outcome no = call({"equivalent", "--mode", "linear", "--gamma1", "-1,0,0.5,0,0,2", "--gamma2", "0,0,0.5,0,0,2"});
    CHECK(no.code == 0);
    CHECK(no.out.rfind("no", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(call({"ricci", "--gamma", "1,2,3,4,5,6"}).code == 0);
    const Outcome bad = call({"classify", "--gamma", "1,2,3"});
    CHECK(bad.code == 2);
    CHECK(has(bad.err, "MalformedInput"));
    CHECK(call({"classify", "--gamma", "1,2,x,4,5,6"}).code == 2);
    CHECK(call({"classify", "--json", temp_path("missing.json").string()}).code == 2);
    CHECK(call({"catalog", "--family", "G2_1", "--params", "-1"}).code == 2);
    CHECK(call({"neighbors", "--flat-index", "9"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);

    const Outcome deg = call({"invariants", "--gamma", "2,0,0,1,0,0"});
    CHECK(deg.code == 3);
    CHECK(has(deg.err, "det rho"));
    CHECK(has(deg.out, "alpha: 16"));
    CHECK(call({"invariants", "--want", "alpha", "--gamma", "2,0,0,1,0,0"}).code == 0);
    CHECK(call({"invariants", "--want", "alpha", "--gamma", "1,2,3,4,5,6"}).code == 3);
    CHECK(call({"invariants", "--want", "any", "--gamma", "0,0,0,0,0,0"}).code == 0);
}

TEST_CASE("json input files") {
    const auto path = temp_path("gamma.json");
    {
        std::ofstream f(path);
        f << R"({"gamma":[1,0,0,1,0,0]})";
    }
    const Outcome o = call({"classify", "--json", path.string()});
    CHECK(o.code == 0);
    CHECK(has(o.out, "G1_0"));
    {
        std::ofstream f(path);
        f << R"({"gamma":[1,0,0]})";
    }
    CHECK(call({"classify", "--json", path.string()}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("solve output reconstructs the connection") {
    const std::vector<std::string> gammas = {"1,2,3,4,5,6", "-1,0,0,0,0,1", "0,0,0,0,0,0", "0,0,0,1,0,0", "1,0,0,0,0,1",
                                             "-1,0,0.5,0,0,2", "0.3,-1.2,2.5,0.7,-0.4,1.9"};
    const auto path = temp_path("q.json");
    for (const auto& g : gammas) {
        INFO(g);
        const Outcome s = call({"--format", "json", "solve", "--gamma", g});
        REQUIRE(s.code == 0);
        {
            std::ofstream f(path);
            f << s.out;
        }
        const Outcome r = call({"--format", "json", "reconstruct", "--json", path.string()});
        REQUIRE(r.code == 0);
        const TypeAConnection back = connection_from_json(Json::parse(r.out));
        const TypeAConnection want = connection_from_string(g);
        CHECK(distance(back, want) <= 1e-8);
    }
    std::filesystem::remove(path);
}

TEST_CASE("identical inputs give identical output") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"--format", "json", "solve", "--gamma", "0.3,-1.2,2.5,0.7,-0.4,1.9"},
          std::vector<std::string>{"classify", "--gamma", "0.3,-1.2,2.5,0.7,-0.4,1.9"},
          std::vector<std::string>{"figure", "--name", "moduli"}, std::vector<std::string>{"--seed", "7", "selfcheck"}}) {
        const Outcome a = call(args);
        const Outcome b = call(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("figure files") {
    const auto csv = temp_path("fig.csv");
    const auto svg = temp_path("fig.svg");
    const Outcome o = call({"figure", "--name", "domains", "--out", csv.string(), "--svg", svg.string()});
    CHECK(o.code == 0);
    std::ifstream c(csv);
    std::string header;
    std::getline(c, header);
    CHECK(header == "family,p1,p2,det_rho,tr_rho,region,chamber,psi,Psi");
    std::ifstream s(svg);
    std::stringstream content;
    content << s.rdbuf();
    CHECK(content.str().rfind("<svg", 0) == 0);
    std::filesystem::remove(csv);
    std::filesystem::remove(svg);
}

TEST_CASE("catalog, neighbours and Killing output") {
    const Outcome all = call({"--format", "json", "catalog"});
    CHECK(all.code == 0);
    CHECK(Json::parse(all.out)["families"].size() == 15);
    const Outcome one = call({"--format", "json", "catalog", "--family", "Gr2", "--params", "2,2"});
    CHECK(one.code == 0);
    CHECK(Json::parse(one.out)["psi_Psi"][0].get<double>() == doctest::Approx(7));

    const Outcome nb = call({"neighbors", "--flat-index", "2"});
    CHECK(nb.code == 0);
    CHECK(std::count(nb.out.begin(), nb.out.end(), '\n') == 3);
    CHECK(has(nb.out, "listed map"));

    const Outcome k = call({"--format", "json", "killing", "--gamma", "0,0,0,0,0,0"});
    CHECK(k.code == 0);
    CHECK(Json::parse(k.out)["dim"] == 6);
    const Outcome k2 = call({"--format", "json", "killing", "--gamma", "1,2,3,4,5,6"});
    CHECK(Json::parse(k2.out)["dim"] == 2);

    const Outcome fl = call({"--format", "json", "flatten", "--gamma", "1,2,3,4,5,6"});
    CHECK(fl.code == 0);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_util.hpp"

using namespace nsbox;
using nsbox::fixtures::Rng;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(NSBOX_SAMPLES_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("nsbox_test_" + name)).string();
}

}  // namespace

TEST(Io, BoxStateRoundTrip) {
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        const auto s = fixtures::random_ns_four(rng);
        const auto text = io::to_json(s).dump();
        EXPECT_EQ(io::box_state_from_json(nlohmann::json::parse(text)), s);
    }
}

TEST(Io, PolyhedronRoundTrip) {
    const auto h = build_coupler_polytope();
    const auto h2 = io::hrep_from_json(nlohmann::json::parse(io::to_json(h).dump()));
    EXPECT_EQ(h2.inequalities, h.inequalities);
    EXPECT_EQ(h2.ambient_dim, h.ambient_dim);
    const auto v = enumerate_vertices(h);
    const auto v2 = io::vrep_from_json(nlohmann::json::parse(io::to_json(v).dump()));
    EXPECT_EQ(v2.vertices, v.vertices);
    EXPECT_EQ(v2.linearities, v.linearities);
    EXPECT_EQ(v2.dimension, v.dimension);
}

TEST(Io, RejectsMalformedStates) {
    using nlohmann::json;
    EXPECT_THROW(io::box_state_from_json(json::parse(R"({"table": []})")), ParseError);
    EXPECT_THROW(io::box_state_from_json(json::parse(R"({"signature": [[2,2]], "table": [["1","0"]]})")),
                 ParseError);
    EXPECT_THROW(io::box_state_from_json(json::parse(R"({"signature": [[2,2]], "table": [["1","0"],["1/2","1/3"]]})")),
                 InvalidState);
    EXPECT_THROW(io::box_state_from_json(json::parse(R"({"signature": [[2,2]], "table": [["1","0"],["x","1"]]})")),
                 ParseError);
}

TEST(Cli, CatalogWritesReadableState) {
    const auto path = temp_path("pr.json");
    auto r = run({"catalog", "--nonlocal", "000", "-o", path});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::read_box_state(path), pr_state());
    r = run({"chsh", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4\n");
    r = run({"--format", "json", "chsh", path});
    EXPECT_EQ(nlohmann::json::parse(r.out)["chsh"], "4");
    std::filesystem::remove(path);
}

TEST(Cli, CatalogList) {
    const auto r = run({"--format", "json", "catalog", "--list"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 24u);
    EXPECT_EQ(io::box_state_from_json(j[16]["state"]), pr_state());
}

TEST(Cli, VerifyNs) {
    auto r = run({"verify-ns", sample("pr_state.json")});
    EXPECT_EQ(r.code, 0);
    r = run({"verify-ns", sample("signalling.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("senders {1} -> receivers {0}"), std::string::npos);
}

TEST(Cli, Membership) {
    auto r = run({"membership", sample("pr_state.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "not local\n");
    r = run({"--format", "json", "membership", sample("noisy_pr_state.json")});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["local"].get<bool>());
    r = run({"membership", sample("signalling.json")});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, ErrorsCarryPathAndExitCodes) {
    const auto missing = temp_path("does_not_exist.json");
    auto r = run({"chsh", missing});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(missing), std::string::npos);

    const auto bad = temp_path("bad.json");
    std::ofstream(bad) << "{ not json";
    r = run({"chsh", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(bad), std::string::npos);
    std::filesystem::remove(bad);

    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"no-such-verb"}).code, 2);
    EXPECT_EQ(run({"catalog", "--local", "12"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "repro"}).code, 2);
    EXPECT_EQ(run({"couplers", "swap", "--coupler", "Z9"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, WiringsAndSwapDemo) {
    auto r = run({"--format", "json", "wirings", "--list"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["count"], 82);
    r = run({"--format", "json", "swap-demo", "--lambda", "1", "--mu", "1", "--nu", "1"});
    ASSERT_EQ(r.code, 0);
    const auto branches = nlohmann::json::parse(r.out);
    ASSERT_EQ(branches.size(), 4u);
    for (const auto& b : branches) {
        EXPECT_TRUE(b["local"].get<bool>());
        EXPECT_TRUE(b["matches_prediction"].get<bool>());
    }
    EXPECT_EQ(branches[2]["predicted"], "L1100");
}

TEST(Cli, Couplers) {
    auto r = run({"--format", "json", "couplers", "enumerate"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["summary"]["vertices"], 82);
    EXPECT_EQ(j["summary"]["dimension"], 9);
    EXPECT_EQ(j["summary"]["linearities"], 7);
    EXPECT_EQ(j["summary"]["inequalities"], 48);

    r = run({"--format", "json", "couplers", "naive"});
    ASSERT_EQ(r.code, 0);
    const auto n = nlohmann::json::parse(r.out);
    EXPECT_FALSE(n["local_rule_chi_feasible"].get<bool>());
    EXPECT_EQ(n["affine_solution"], nlohmann::json::array({"3/2", "-1/2"}));

    r = run({"--format", "json", "couplers", "swap", "--coupler", "X000"});
    ASSERT_EQ(r.code, 0);
    for (const auto& b : nlohmann::json::parse(r.out)) EXPECT_TRUE(b["local"].get<bool>());
    EXPECT_EQ(run({"couplers", "swap", "--coupler", "81"}).code, 0);
    EXPECT_EQ(run({"couplers", "swap", "--coupler", "82"}).code, 2);
}

TEST(Cli, PolytopeVertices) {
    auto r = run({"--format", "json", "polytope", "vertices", sample("unit_square.hrep.json")});
    ASSERT_EQ(r.code, 0);
    const auto v = io::vrep_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(v.vertices.size(), 4u);

    const auto path = temp_path("ns.hrep.json");
    r = run({"polytope", "hrep", "no-signalling"});
    ASSERT_EQ(r.code, 0);
    std::ofstream(path) << r.out;
    r = run({"--format", "json", "polytope", "vertices", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(io::vrep_from_json(nlohmann::json::parse(r.out)).vertices.size(), 24u);
    std::filesystem::remove(path);
}

TEST(Cli, Repro) {
    const auto r = run({"--format", "json", "repro"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["pass"].get<bool>());
}

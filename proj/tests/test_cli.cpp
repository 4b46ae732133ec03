#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uqsl3/cli.hpp"

using namespace uqsl3;

namespace {
std::string write_temp_config(const std::string& body) {
    std::string path = "uqsl3_test_config.toml";
    std::ofstream out(path);
    out << body;
    return path;
}
const char* kGolden = R"(
# golden verification point
[params]
hbar = [-0.5108256237659907, 0.05]
s = [1, 1, 1]
phi = [0.31, -0.17]
cutoff = 14
tol = 1e-7

[run]
n = 1
eta_mode = "homogeneous"
seed = 1
zeta_grid = [[-1.2039728043259361, 0.2]]
suites = ["core"]
)";
}

TEST_CASE("config parsing") {
    std::string path = write_temp_config(kGolden);
    RunConfig cfg = load_config(path);
    CHECK(cfg.params.cutoff == 14);
    CHECK(cfg.n == 1);
    CHECK(cfg.params.s() == 3);
    CHECK(std::abs(cfg.params.phi[2] - cplx(-0.14, 0.0)) < 1e-15);
    CHECK(cfg.suites.size() == 1);
    std::remove(path.c_str());
}

TEST_CASE("invalid suite label rejected before any computation") {
    std::string path = write_temp_config(std::string(kGolden) + "\n");
    RunConfig cfg = load_config(path);
    cfg.suites = {"nonsense"};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    std::remove(path.c_str());
}

TEST_CASE("core suite passes and reports round-trip through JSON") {
    std::string path = write_temp_config(kGolden);
    RunConfig cfg = load_config(path);
    auto reports = run_verify(cfg);
    CHECK(!reports.empty());
    for (const auto& r : reports) CHECK(r.pass);
    CHECK(exit_status(reports) == 0);

    const std::string json_path = "uqsl3_test_report.json";
    emit_report(reports, json_path);
    std::ifstream in(json_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["schema"] == 1);
    REQUIRE(doc["reports"].size() == reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(doc["reports"][i]["relation_id"] == reports[i].relation_id);
        CHECK(std::abs(doc["reports"][i]["residual"].get<double>() - reports[i].residual) <
              1e-300 + 1e-12 * std::abs(reports[i].residual));
        CHECK(doc["reports"][i]["pass"] == reports[i].pass);
    }
    std::remove(json_path.c_str());
    std::remove(path.c_str());

    // empty report list still emits valid JSON
    emit_report({}, json_path);
    std::ifstream in2(json_path);
    nlohmann::json doc2 = nlohmann::json::parse(in2);
    CHECK(doc2["reports"].is_array());
    CHECK(doc2["reports"].empty());
    std::remove(json_path.c_str());
}

TEST_CASE("determinism: identical config and seed give identical residual arrays") {
    std::string path = write_temp_config(kGolden);
    RunConfig cfg = load_config(path);
    cfg.suites = {"core", "fock"};
    auto a = run_verify(cfg);
    auto b = run_verify(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].relation_id == b[i].relation_id);
        CHECK(a[i].residual == b[i].residual);
    }
    std::remove(path.c_str());
}

TEST_CASE("summary counts match the array") {
    RelationReport ok = make_report("a", 0.0, 0.0, 1.0, "");
    RelationReport bad = make_report("b", 2.0, 0.0, 1.0, "");
    RelationReport sk;
    sk.relation_id = "c";
    sk.skipped = true;
    std::ostringstream os;
    print_summary({ok, bad, sk}, os);
    CHECK(os.str().find("1 passed, 1 failed, 1 skipped") != std::string::npos);
    CHECK(exit_status({ok}) == 0);
    CHECK(exit_status({ok, bad}) == 1);
    CHECK(exit_status({ok, sk}) == 1);
}

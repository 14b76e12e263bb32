#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "riesz/cli.hpp"

using namespace riesz;
using Json = nlohmann::json;

namespace {
cli::CommandResult call(const std::string& sub, std::map<std::string, std::string> params) {
    return cli::run({sub, std::move(params)});
}
Json result_of(const cli::CommandResult& r) {
    REQUIRE(r.status == cli::kOk);
    return Json::parse(r.output).at("result");
}
int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}
}  // namespace

TEST_CASE("every subcommand knows its options") {
    CHECK(cli::subcommands().size() == 10);
    for (const auto& s : cli::subcommands()) CHECK_FALSE(cli::options_for(s).empty());
}

TEST_CASE("sphere-energy") {
    auto j = result_of(call("sphere-energy", {{"d", "3"}, {"s", "1"}}));
    CHECK(j["W"].get<double>() == doctest::Approx(8.0 / (3 * M_PI)).epsilon(1e-14));
    j = result_of(call("sphere-energy", {{"d", "2"}, {"s", "log"}}));
    CHECK(j["W"].get<double>() == doctest::Approx(0.5 - std::log(2.0)).epsilon(1e-14));
    const auto env = Json::parse(call("sphere-energy", {{"d", "2"}, {"s", "0.5"}}).output);
    CHECK(env["command"] == "sphere-energy");
    CHECK(env["params"]["s"].get<double>() == 0.5);
    const auto csv = call("sphere-energy", {{"format", "csv"}});
    CHECK(csv.output.rfind("# sphere-energy d=2 s=1.0\nW\n1\n", 0) == 0);
}

TEST_CASE("signed-sphere and critical-t") {
    auto j = result_of(call("signed-sphere", {{"q", "-1"}, {"grid", "3"}}));
    CHECK(j["constant"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(j["full_sphere_support"] == true);
    CHECK(j["density_south"].get<double>() == 3.5);
    j = result_of(call("critical-t", {{"q", "-5"}}));
    CHECK(j["t_c"].get<double>() == doctest::Approx(-0.548346306356).epsilon(1e-10));
    CHECK(j["root_residual"].get<double>() <= 1e-10);
    j = result_of(call("signed-cap", {{"q", "-5"}, {"t", "0"}, {"grid", "5"}}));
    CHECK(j["phi"].get<double>() == doctest::Approx(-1.6581458384990).epsilon(1e-12));
    CHECK(j["density"].size() == 5);
}

TEST_CASE("phi-scan is CSV by default") {
    const auto r = call("phi-scan", {{"q", "-5"}, {"grid", "11"}});
    REQUIRE(r.status == cli::kOk);
    std::istringstream in(r.output);
    std::string head, cols;
    std::getline(in, head);
    std::getline(in, cols);
    CHECK(head.rfind("# phi-scan", 0) == 0);
    CHECK(cols == "t,phi,rhs,diff");
    CHECK(count_lines(r.output) == 13);
}

TEST_CASE("fekete output is byte-identical across runs and thread counts") {
    std::map<std::string, std::string> p{{"n", "7"}, {"q", "0.5"}, {"R", "1.5"}, {"multistarts", "6"},
                                         {"seed", "3"}, {"threads", "1"}};
    const auto a = call("fekete", p);
    p["threads"] = "4";
    const auto b = call("fekete", p);
    REQUIRE(a.status == cli::kOk);
    // the resolved params differ only in the thread count
    auto ja = Json::parse(a.output), jb = Json::parse(b.output);
    CHECK(ja["result"].dump() == jb["result"].dump());
    p["threads"] = "1";
    CHECK(call("fekete", p).output == a.output);
    CHECK(ja["result"]["points"].size() == 7);
    CHECK(ja["result"]["converged"] == true);
}

TEST_CASE("four-point-scan rows") {
    const auto r = call("four-point-scan", {{"q", "1"}, {"kmin", "5"}, {"kmax", "6"}, {"free", "0"}});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.output.find("R,E_A,E_B,E_C,winner,E_free,free_kind,agrees\n") != std::string::npos);
    CHECK(count_lines(r.output) == 4);
}

TEST_CASE("separation") {
    auto j = result_of(call("separation", {{"d", "2"}, {"s", "1"}}));
    CHECK(j["K"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    j = result_of(call("separation", {{"s", "log"}}));
    CHECK(j["K"].get<double>() == doctest::Approx(2.0));
    j = result_of(call("separation", {{"s", "4"}, {"n", "100"}}));
    CHECK(j["bound"].get<double>() > 0.0);
    CHECK(call("separation", {{"s", "4"}}).status == cli::kInvalid);  // n is required
}

TEST_CASE("verify suites") {
    const auto r = call("verify", {{"suite", "all"}, {"q", "-5"}, {"grid", "50"}});
    CHECK(r.status == cli::kOk);
    CHECK(r.output.find("PASS variational") != std::string::npos);
    CHECK(r.output.find("PASS mass") != std::string::npos);
    CHECK(r.output.find("PASS max-principle") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(call("verify", {{"suite", "nope"}}).status == cli::kInvalid);
}

TEST_CASE("figure data") {
    const auto phi = cli::emit_figure_data("phi-curve", {{"q", "-5"}, {"grid", "9"}});
    CHECK(phi.rfind("# figure-data", 0) == 0);
    const auto dens = cli::emit_figure_data("density-curves", {{"mode", "charge"}, {"grid", "5"}});
    CHECK(dens.find("u,eta_a,eta_b") != std::string::npos);
    CHECK_THROWS(cli::emit_figure_data("nope", {}));
}

TEST_CASE("exit codes") {
    CHECK(call("sphere-energy", {{"d", "2"}, {"s", "2"}}).status == cli::kInvalid);
    CHECK(call("sphere-energy", {{"d", "x"}}).status == cli::kInvalid);
    CHECK(call("sphere-energy", {{"bogus", "1"}}).status == cli::kInvalid);
    CHECK(call("signed-sphere", {{"R", "0.5"}}).status == cli::kInvalid);
    CHECK(call("fekete", {}).status == cli::kInvalid);  // missing n
    CHECK(call("nope", {}).status == cli::kInvalid);
    // balance distance with s = 1/2 has no solution
    const auto r = call("figure-data", {{"kind", "density-curves"}, {"mode", "distance"}, {"s", "0.5"}});
    CHECK(r.status == cli::kNumeric);
    CHECK(r.output.empty());
    CHECK_FALSE(r.error.empty());
    // the maximum principle is only claimed for d-2 <= s < d
    const auto v = call("verify", {{"suite", "max-principle"}, {"s", "2.5"}, {"d", "2"}});
    CHECK(v.status == cli::kInvalid);
}

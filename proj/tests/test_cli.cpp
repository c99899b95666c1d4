#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <metriq/ext/json.hpp>

#include "corpus.hpp"
#include "metriq/cli.hpp"
#include "metriq/json_io.hpp"
#include "metriq/metric.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string raw;
    json body;
};

CliResult run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    CliResult r;
    r.code = metriq::run_cli(args, in, out);
    r.raw = out.str();
    if (!r.raw.empty() && r.raw.front() == '{')
        r.body = json::parse(r.raw);
    return r;
}

// The degenerate q(g) = i^{g^2} table on Z_4.
std::string z4_doc(const char* extra = "") {
    return std::string(R"({"orders":[4],"q":[0,2,0,2])") + extra + "}";
}

std::string temp_doc(const std::string& name, const json& j) {
    std::string path = "/tmp/metriq_cli_" + name + ".json";
    std::ofstream f(path);
    f << j.dump();
    return path;
}

} // namespace

TEST_CASE("analyze reports the metric invariants", "[cli]") {
    auto r = run({"analyze"}, z4_doc());
    REQUIRE(r.code == 0);
    CHECK(r.body["orders"] == json::array({4}));
    CHECK(r.body["modulus"] == 8);
    CHECK(r.body["nondegenerate"] == false);
    CHECK(r.body["radical"]["order"] == 2);
    CHECK(r.body["gauss_sum"] ==
          metriq::cyclotomic_to_json(metriq::gauss_sum(corpus::cyclic_form(4, 2))));
    CHECK(r.body["isotropic_subgroups"].size() == 2);
    CHECK(r.body["lagrangian_subgroups"].empty());
    CHECK_FALSE(r.body.contains("ribbon_valid"));

    auto nd = run({"analyze"}, R"({"orders":[4],"q":[0,1,4,1]})");
    REQUIRE(nd.code == 0);
    CHECK(nd.body["nondegenerate"] == true);
    CHECK(nd.body["lagrangian_subgroups"].empty());

    auto hyp = run({"analyze"}, metriq::metric_to_json(corpus::hyperbolic_form(2)).dump());
    REQUIRE(hyp.code == 0);
    CHECK(hyp.body["lagrangian_subgroups"].size() == 2);

    auto ribbon = run({"analyze"}, z4_doc(R"(,"chi":[0,0,0,0])"));
    REQUIRE(ribbon.code == 0);
    CHECK(ribbon.body["ribbon_valid"] == true);
}

TEST_CASE("analyze rejects invalid forms as domain errors", "[cli]") {
    auto r = run({"analyze"}, R"({"orders":[4],"q":[0,1,0,1]})");
    CHECK(r.code == 1);
    CHECK(r.body["error"]["code"] == "InvalidInput");
}

TEST_CASE("condense emits the induced form", "[cli]") {
    auto r = run({"condense"}, z4_doc(R"(,"H":{"generators":[[2]]})"));
    REQUIRE(r.code == 0);
    CHECK(r.body["condensed"]["orders"] == json::array({2}));
    CHECK(r.body["condensed"]["q"] == json::array({0, 1}));
    CHECK(r.body["flags"]["is_ftc"] == true);
    CHECK(r.body["flags"]["is_lagrangian"] == false);
    CHECK(r.body["subgroup"]["order"] == 2);
    // For this degenerate form b(x, 2) = 1 for every x, so hperp is everything.
    CHECK(r.body["hperp"]["order"] == 4);

    // Round trip: the emitted condensed block re-parses to the same form.
    metriq::MetricGroup parsed = metriq::metric_from_json(r.body["condensed"]);
    auto direct = metriq::condense(
        corpus::cyclic_form(4, 2),
        metriq::subgroup_generated(metriq::FinAbGroup{{4}}, {{2}}));
    CHECK(parsed.group.orders == direct.condensed.group.orders);
    CHECK(parsed.q_exp == direct.condensed.q_exp);
}

TEST_CASE("condense surfaces domain errors with exit code 1", "[cli]") {
    auto r = run({"condense"}, R"({"orders":[2],"q":[0,1],"H":{"generators":[[1]]}})");
    CHECK(r.code == 1);
    CHECK(r.body["error"]["code"] == "NotIsotropic");
}

TEST_CASE("usage and schema errors exit with code 2", "[cli]") {
    CHECK(run({"condense"}, "{not json").code == 2);
    CHECK(run({"analyze"}, R"({"orders":[4]})").code == 2); // missing q
    CHECK(run({"analyze"}, R"({"orders":[4],"q":[0,1]})").code == 2); // wrong length
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"analyze", "--no-such-flag"}, z4_doc()).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"analyze", "/no/such/file.json"}).code == 2);
    auto r = run({"condense"}, "{not json");
    CHECK(r.body["error"]["code"] == "Usage");
}

TEST_CASE("help exits zero", "[cli]") {
    std::istringstream in;
    std::ostringstream out;
    CHECK(metriq::run_cli({"--help"}, in, out) == 0);
    CHECK(out.str().find("analyze") != std::string::npos);
}

TEST_CASE("algebra reports the cochain tables and axioms", "[cli]") {
    auto r = run({"algebra"}, z4_doc(R"(,"H":{"generators":[[2]]})"));
    REQUIRE(r.code == 0);
    CHECK(r.body["axioms"]["all_pass"] == true);
    CHECK(r.body["axioms"]["specialness"]["str"] == "2");
    CHECK(r.body["axioms"]["nakayama_trace"]["str"] == "2");
    CHECK(r.body["psi"] == json::array({json::array({0, 0}), json::array({0, 0})}));
    CHECK(r.body["delta_exp"] == json::array({json::array({0, 0}), json::array({0, 0})}));
    CHECK(r.body["classification"]["symmetric"] == true);
    CHECK(r.body["subgroup_elements"] == json::array({json::array({0}), json::array({2})}));
}

TEST_CASE("classify runs the condensation ladder", "[cli]") {
    auto r = run({"classify"}, z4_doc(R"(,"H":{"generators":[[2]]})"));
    REQUIRE(r.code == 0);
    CHECK(r.body["ftc"] == true);
    CHECK(r.body["frobenius"] == true);
    CHECK(r.body["special"] == true);
    CHECK(r.body["symmetric"] == true); // canonical twist theta = q
    CHECK(r.body["mtc"] == false);      // ambient form degenerate
    CHECK(r.body["condensation"]["condensed"]["orders"] == json::array({2}));

    // theta(psi) = -1 on Z_2: Frobenius but not symmetric.
    auto ns = run({"classify"},
                  R"({"orders":[2],"q":[0,0],"chi":[0,2],"H":{"generators":[[1]]}})");
    REQUIRE(ns.code == 0);
    CHECK(ns.body["frobenius"] == true);
    CHECK(ns.body["symmetric"] == false);
}

TEST_CASE("witt-class reports the kernel and Gauss invariant", "[cli]") {
    auto r = run({"witt-class"}, R"({"orders":[4],"q":[0,1,4,1]})");
    REQUIRE(r.code == 0);
    CHECK(r.body["order"] == 4);
    CHECK(r.body["kernel"]["orders"] == json::array({4}));
    CHECK(r.body["sigma"] ==
          metriq::cyclotomic_to_json(metriq::gauss_sum(corpus::cyclic_form(4, 1))));

    auto deg = run({"witt-class"}, z4_doc());
    CHECK(deg.code == 1);
    CHECK(deg.body["error"]["code"] == "Degenerate");
}

TEST_CASE("witt-equal compares anisotropic kernels", "[cli]") {
    std::string semion = temp_doc("semion", metriq::metric_to_json(corpus::cyclic_form(2, 1)));
    std::string anti = temp_doc("anti", metriq::metric_to_json(corpus::cyclic_form(2, 3)));
    auto r = run({"witt-equal", semion, anti});
    REQUIRE(r.code == 0);
    CHECK(r.body["equal"] == false);
    CHECK(r.body["kernel_orders"] == json::array({2, 2}));

    auto same = run({"witt-equal", "-", anti},
                    metriq::metric_to_json(corpus::cyclic_form(2, 3)).dump());
    REQUIRE(same.code == 0);
    CHECK(same.body["equal"] == true);

    CHECK(run({"witt-equal", "-", "-"}, "{}").code == 2);
}

TEST_CASE("verify-appendix pins the closed forms", "[cli]") {
    auto r = run({"verify-appendix", "--case", "even-twist", "--param", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.body["value"] == "-1");
    CHECK(r.body["expected"] == "-1");
    CHECK(r.body["pass"] == true);

    auto br = run({"verify-appendix", "--case", "even-braiding", "--param", "2"});
    REQUIRE(br.code == 0);
    CHECK(br.body["value"] == "-1");

    auto odd = run({"verify-appendix", "--case", "odd-theta", "--param", "3"});
    REQUIRE(odd.code == 0);
    CHECK(odd.body["value"] == "1");
    CHECK(odd.body["pass"] == true);

    auto taft = run({"verify-appendix", "--case", "taft", "--param", "3"});
    REQUIRE(taft.code == 0);
    CHECK(taft.body["pass"] == true);

    CHECK(run({"verify-appendix", "--case", "no-such-case", "--param", "2"}).code == 2);
    CHECK(run({"verify-appendix", "--case", "odd-theta", "--param", "4"}).code == 1);
}

TEST_CASE("deligne verb emits data plus admissible subset", "[cli]") {
    auto r = run({"deligne", "2", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.body["ribbon_valid"] == true);
    CHECK(r.body["data"]["orders"] == json::array({2, 2}));
    CHECK(r.body["admissible"]["elements"] == json::array({0, 3}));
    CHECK(r.body["admissible"]["closed"] == true);
    CHECK(r.body["admissible"]["subgroups"].size() == 2);

    auto empty = run({"deligne"});
    REQUIRE(empty.code == 0);
    CHECK(empty.body["data"]["orders"] == json::array());

    CHECK(run({"deligne", "1"}).code == 1); // entries must be >= 2
}

TEST_CASE("taft verb emits honest ribbon flags", "[cli]") {
    auto r = run({"taft", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.body["data"]["q"] == json::array({0, 6, 0, 6}));
    CHECK(r.body["form_valid"] == true);
    CHECK(r.body["ribbon_valid"] == true);
    CHECK(r.body["isotropic_subgroups"].size() == 2);

    auto r9 = run({"taft", "9"});
    REQUIRE(r9.code == 0);
    CHECK(r9.body["form_valid"] == true);
    CHECK(r9.body["ribbon_valid"] == false); // chi is not additive for n = 9
}

TEST_CASE("enumeration bounds are flag- and env-controllable", "[cli]") {
    auto r = run({"analyze", "--enum-bound", "1"}, z4_doc());
    CHECK(r.code == 1);
    CHECK(r.body["error"]["code"] == "TooLarge");

    setenv("METRIQ_ENUM_BOUND", "1", 1);
    auto env = run({"analyze"}, z4_doc());
    unsetenv("METRIQ_ENUM_BOUND");
    CHECK(env.code == 1);
    CHECK(env.body["error"]["code"] == "TooLarge");

    // Flag overrides environment.
    setenv("METRIQ_ENUM_BOUND", "1", 1);
    auto flag = run({"analyze", "--enum-bound", "4096"}, z4_doc());
    unsetenv("METRIQ_ENUM_BOUND");
    CHECK(flag.code == 0);
}

TEST_CASE("output is byte-deterministic", "[cli]") {
    auto a = run({"analyze"}, z4_doc(R"(,"chi":[0,0,0,0])"));
    auto b = run({"analyze"}, z4_doc(R"(,"chi":[0,0,0,0])"));
    CHECK(a.raw == b.raw);
    auto c = run({"deligne", "2", "2", "2", "2"});
    auto d = run({"deligne", "2", "2", "2", "2"});
    CHECK(c.raw == d.raw);
}

TEST_CASE("emitted metric JSON round-trips through the parser", "[cli]") {
    for (const auto& m : corpus::metric_corpus()) {
        if (m.group.size() > 16)
            continue;
        json doc = metriq::metric_to_json(m);
        metriq::MetricGroup back = metriq::metric_from_json(doc);
        CHECK(back.group.orders == m.group.orders);
        CHECK(back.modulus == m.modulus);
        CHECK(back.q_exp == m.q_exp);
    }
    // Cyclotomic payloads round-trip as exact values.
    metriq::Cyclotomic tau = metriq::gauss_sum(corpus::cyclic_form(4, 1));
    CHECK(metriq::cyclotomic_from_json(metriq::cyclotomic_to_json(tau)) == tau);
}

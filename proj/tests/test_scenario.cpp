#include <algorithm>

#include "doctest.h"
#include "sfcsim/scenario.hpp"
#include "sfcsim/toml_lite.hpp"

using namespace sfcsim;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
    return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
        return e.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("the shipped experiment scenario loads and validates") {
    const auto load =
        load_scenario_file(std::string(SCENARIO_DIR) + "/paper_phase2.toml");
    REQUIRE(load.ok());
    const Scenario& s = load.scenario;
    CHECK(validate_scenario(s).empty());

    CHECK(s.name == "paper_phase2");
    CHECK(s.duration == 300.0);
    CHECK(s.seed == 42);
    CHECK(s.runs == 20);
    CHECK(s.nodes == std::vector<std::string>{"A", "B", "C", "D"});
    REQUIRE(s.links.size() == 3);
    CHECK(s.links[0].cost == 160);
    CHECK(s.links[2].cost == 30);
    CHECK(s.links[0].delay == doctest::Approx(0.001));
    CHECK(s.vnfs.size() == 2);
    CHECK(s.traffic.flow_rate == 2.0);
    CHECK(s.traffic.flow_duration == 50.0);
    CHECK(s.traffic.flow_pps == 2.0);
    REQUIRE(s.events.size() == 1);
    CHECK(s.events[0].at == 150.0);
    CHECK(s.dmano.cycle_period == 2.0);

    const auto catalog = s.catalog();
    REQUIRE(catalog.find(1) != nullptr);
    CHECK(catalog.find(1)->size() == 1);
    CHECK(s.classifier_rules().size() == 1);
}

TEST_CASE("validation collects every violation at once") {
    Scenario s;
    s.duration = 0.0;  // bad
    s.runs = 0;        // bad
    s.nodes = {"A", "A"};  // duplicate
    s.links.push_back(LinkSpec{"A", "Z", 0, -1.0});  // unknown node, cost, delay
    s.chains.push_back(ChainSpec{0, {}});            // bad spi, empty chain
    s.rules.push_back(RuleSpec{.spi = 9});           // chainless spi
    s.vnfs.push_back(VnfSpec{"v", "Z", "svc", 0.0}); // unknown node, capacity
    s.traffic = TrafficSpec{"Z", "Z", 1.0, 0.0, 0.0, ArrivalProcess::Deterministic};
    EventSpec ev;
    ev.at = 500.0;  // outside duration
    ev.action = EventSpec::Action::WithdrawVnf;
    s.events.push_back(ev);
    s.resolve();

    const auto errors = validate_scenario(s);
    CHECK(errors.size() >= 12);
    CHECK(mentions(errors, "duration_s"));
    CHECK(mentions(errors, "runs"));
    CHECK(mentions(errors, "duplicate node"));
    CHECK(mentions(errors, "unknown node 'Z'"));
    CHECK(mentions(errors, "link cost"));
    CHECK(mentions(errors, "spi"));
    CHECK(mentions(errors, "at least one service"));
    CHECK(mentions(errors, "capacity_pps"));
    CHECK(mentions(errors, "flow_duration_s"));
    CHECK(mentions(errors, "at_s outside"));
    CHECK(mentions(errors, "withdraw_vnf needs"));
}

TEST_CASE("disconnected topologies are rejected") {
    Scenario s;
    s.duration = 10.0;
    s.nodes = {"A", "B", "C"};
    s.links.push_back(LinkSpec{"A", "B", 1, 0.001});
    s.resolve();
    CHECK(mentions(validate_scenario(s), "not connected"));
}

TEST_CASE("schema errors are reported with their location") {
    const auto load = scenario_from_json(parse_toml(R"(
[scenario]
duration_s = "soon"

[topology]
nodes = ["A"]
typo_key = 1
)"));
    CHECK(!load.ok());
    CHECK(mentions(load.errors, "'duration_s' must be a number"));
    CHECK(mentions(load.errors, "unknown key 'typo_key'"));
}

TEST_CASE("service ids are stable and sorted") {
    Scenario s;
    s.nodes = {"A"};
    s.chains.push_back(ChainSpec{1, {"zeta", "alpha"}});
    s.vnfs.push_back(VnfSpec{"", "A", "middle", 10.0});
    s.resolve();
    CHECK(s.service_id("alpha") == 1);
    CHECK(s.service_id("middle") == 2);
    CHECK(s.service_id("zeta") == 3);
}

TEST_CASE("chains longer than the SI budget are rejected") {
    Scenario s;
    s.duration = 10.0;
    s.nodes = {"A"};
    ChainSpec chain;
    chain.spi = 1;
    for (int i = 0; i < 64; ++i) chain.services.push_back("s" + std::to_string(i));
    s.chains.push_back(chain);
    s.resolve();
    CHECK(mentions(validate_scenario(s), "longer than"));
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sfcsim/chain.hpp"
#include "sfcsim/dmano.hpp"
#include "sfcsim/types.hpp"

namespace sfcsim {

struct LinkSpec {
    std::string a;
    std::string b;
    std::uint32_t cost = 1;
    double delay = 0.001;  // seconds
};

struct ChainSpec {
    std::uint32_t spi = 0;
    std::vector<std::string> services;
};

struct RuleSpec {
    std::optional<std::uint32_t> src_addr;
    std::optional<std::uint32_t> dst_addr;
    std::optional<std::uint16_t> src_port;
    std::optional<std::uint16_t> dst_port;
    std::optional<std::uint8_t> protocol;
    std::uint32_t spi = 0;
};

struct VnfSpec {
    std::string name;  // optional display/reference label
    std::string node;
    std::string service;
    double capacity_pps = 0.0;
};

struct EventSpec {
    enum class Action { InstantiateVnf, WithdrawVnf };

    double at = 0.0;
    Action action = Action::InstantiateVnf;
    std::string node;
    std::string service;
    std::string name;
    double capacity_pps = 0.0;
};

enum class ArrivalProcess { Deterministic, Poisson };

struct TrafficSpec {
    std::string ingress;
    std::string egress;
    double flow_rate = 0.0;      // flows per second; 0 disables traffic
    double flow_duration = 0.0;  // seconds
    double flow_pps = 0.0;       // packets per second per flow
    ArrivalProcess arrival = ArrivalProcess::Deterministic;
};

// Declarative experiment description, loaded from a TOML file.
struct Scenario {
    std::string name;
    double duration = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t runs = 1;

    std::vector<std::string> nodes;
    std::vector<LinkSpec> links;
    std::vector<ChainSpec> chains;
    std::vector<RuleSpec> rules;
    std::vector<VnfSpec> vnfs;
    TrafficSpec traffic;
    std::vector<EventSpec> events;
    DmanoConfig dmano;
    double cache_idle_timeout = 60.0;

    // Resolved id maps (filled by resolve()).
    std::map<std::string, NodeId> node_ids;          // file order
    std::map<std::string, ServiceTypeId> service_ids;  // sorted names, 1-based

    void resolve();

    NodeId node_id(const std::string& n) const { return node_ids.at(n); }
    ServiceTypeId service_id(const std::string& s) const {
        return service_ids.at(s);
    }

    ChainCatalog catalog() const;
    std::vector<ClassifierRule> classifier_rules() const;
};

// Parse errors and semantic violations are both reported as plain strings so
// the CLI can list everything at once.
struct ScenarioLoad {
    Scenario scenario;
    std::vector<std::string> errors;

    bool ok() const { return errors.empty(); }
};

ScenarioLoad scenario_from_json(const nlohmann::json& doc);
ScenarioLoad load_scenario_file(const std::string& path);

// Semantic validation; returns every violation found.
std::vector<std::string> validate_scenario(const Scenario& s);

}  // namespace sfcsim

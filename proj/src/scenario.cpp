#include "sfcsim/scenario.hpp"

#include <algorithm>
#include <set>

#include "sfcsim/toml_lite.hpp"

namespace sfcsim {

namespace {

using nlohmann::json;

// Field extraction with error accumulation instead of exceptions, so a
// single `validate` pass reports every problem in the file.
struct Reader {
    std::vector<std::string>& errors;

    void error(const std::string& where, const std::string& what) {
        errors.push_back(where + ": " + what);
    }

    bool require(const json& obj, const std::string& where,
                 const std::string& key) {
        if (!obj.is_object() || !obj.contains(key)) {
            error(where, "missing required key '" + key + "'");
            return false;
        }
        return true;
    }

    template <typename T>
    T number(const json& obj, const std::string& where, const std::string& key,
             T fallback, bool required = false) {
        if (!obj.is_object() || !obj.contains(key)) {
            if (required) error(where, "missing required key '" + key + "'");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(where, "'" + key + "' must be a number");
            return fallback;
        }
        return v.get<T>();
    }

    std::string text(const json& obj, const std::string& where,
                     const std::string& key, const std::string& fallback = "",
                     bool required = false) {
        if (!obj.is_object() || !obj.contains(key)) {
            if (required) error(where, "missing required key '" + key + "'");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            error(where, "'" + key + "' must be a string");
            return fallback;
        }
        return v.get<std::string>();
    }

    bool boolean(const json& obj, const std::string& where,
                 const std::string& key, bool fallback) {
        if (!obj.is_object() || !obj.contains(key)) return fallback;
        const json& v = obj.at(key);
        if (!v.is_boolean()) {
            error(where, "'" + key + "' must be a boolean");
            return fallback;
        }
        return v.get<bool>();
    }

    void check_keys(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
        if (!obj.is_object()) return;
        for (const auto& [key, value] : obj.items()) {
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                    return key == a;
                }) == allowed.end()) {
                error(where, "unknown key '" + key + "'");
            }
        }
    }
};

template <typename T>
std::optional<T> opt_number(Reader& r, const json& obj, const std::string& where,
                            const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        r.error(where, "'" + key + "' must be a number");
        return std::nullopt;
    }
    return v.get<T>();
}

}  // namespace

void Scenario::resolve() {
    node_ids.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        node_ids.emplace(nodes[i], static_cast<NodeId>(i));
    }
    std::set<std::string> services;
    for (const auto& c : chains) services.insert(c.services.begin(), c.services.end());
    for (const auto& v : vnfs) services.insert(v.service);
    for (const auto& e : events) {
        if (!e.service.empty()) services.insert(e.service);
    }
    service_ids.clear();
    ServiceTypeId next = 1;
    for (const auto& s : services) service_ids.emplace(s, next++);
}

ChainCatalog Scenario::catalog() const {
    ChainCatalog cat;
    for (const auto& c : chains) {
        std::vector<ServiceTypeId> ids;
        ids.reserve(c.services.size());
        for (const auto& s : c.services) ids.push_back(service_ids.at(s));
        cat.chains.emplace(c.spi, std::move(ids));
    }
    return cat;
}

std::vector<ClassifierRule> Scenario::classifier_rules() const {
    std::vector<ClassifierRule> out;
    out.reserve(rules.size());
    for (const auto& r : rules) {
        ClassifierRule rule;
        rule.src_addr = r.src_addr;
        rule.dst_addr = r.dst_addr;
        rule.src_port = r.src_port;
        rule.dst_port = r.dst_port;
        rule.protocol = r.protocol;
        rule.spi = r.spi;
        out.push_back(rule);
    }
    return out;
}

ScenarioLoad scenario_from_json(const json& doc) {
    ScenarioLoad load;
    Reader r{load.errors};
    Scenario& s = load.scenario;

    if (!doc.is_object()) {
        r.error("scenario", "document root must be a table");
        return load;
    }
    r.check_keys(doc, "scenario",
                 {"scenario", "dmano", "dataplane", "topology", "chains",
                  "classifier", "vnfs", "traffic", "events"});

    const json& meta = doc.value("scenario", json::object());
    r.check_keys(meta, "scenario", {"name", "duration_s", "seed", "runs"});
    s.name = r.text(meta, "scenario", "name", "unnamed");
    s.duration = r.number<double>(meta, "scenario", "duration_s", 0.0, true);
    s.seed = r.number<std::uint64_t>(meta, "scenario", "seed", 0);
    s.runs = r.number<std::uint32_t>(meta, "scenario", "runs", 1);

    if (doc.contains("dmano")) {
        const json& d = doc.at("dmano");
        r.check_keys(d, "dmano",
                     {"cycle_period_s", "cost_policy", "min_cost_delta",
                      "announce_immediately", "cost_ceiling", "max_age_s"});
        s.dmano.cycle_period = r.number<double>(d, "dmano", "cycle_period_s", 2.0);
        const std::string policy = r.text(d, "dmano", "cost_policy", "remaining_capacity");
        if (!cost_policy_from_string(policy, s.dmano.cost_policy)) {
            r.error("dmano", "unknown cost_policy '" + policy + "'");
        }
        s.dmano.min_cost_delta =
            r.number<std::uint32_t>(d, "dmano", "min_cost_delta", 0);
        s.dmano.announce_immediately =
            r.boolean(d, "dmano", "announce_immediately", true);
        s.dmano.cost_ceiling =
            r.number<std::uint32_t>(d, "dmano", "cost_ceiling", 65535);
        s.dmano.max_age = r.number<double>(d, "dmano", "max_age_s", 3600.0);
    }

    if (doc.contains("dataplane")) {
        const json& d = doc.at("dataplane");
        r.check_keys(d, "dataplane", {"cache_idle_timeout_s"});
        s.cache_idle_timeout =
            r.number<double>(d, "dataplane", "cache_idle_timeout_s", 60.0);
    }

    const json& topo = doc.value("topology", json::object());
    r.check_keys(topo, "topology", {"nodes", "links", "default_delay_ms"});
    const double default_delay =
        r.number<double>(topo, "topology", "default_delay_ms", 1.0) / 1000.0;
    if (topo.contains("nodes") && topo.at("nodes").is_array()) {
        for (const auto& n : topo.at("nodes")) {
            if (n.is_string()) {
                s.nodes.push_back(n.get<std::string>());
            } else {
                r.error("topology.nodes", "node names must be strings");
            }
        }
    } else {
        r.error("topology", "missing required key 'nodes'");
    }
    for (const auto& l : topo.value("links", json::array())) {
        const std::string where = "topology.links[" + std::to_string(s.links.size()) + "]";
        r.check_keys(l, where, {"a", "b", "cost", "delay_ms"});
        LinkSpec link;
        link.a = r.text(l, where, "a", "", true);
        link.b = r.text(l, where, "b", "", true);
        link.cost = r.number<std::uint32_t>(l, where, "cost", 1, true);
        link.delay =
            r.number<double>(l, where, "delay_ms", default_delay * 1000.0) / 1000.0;
        s.links.push_back(link);
    }

    for (const auto& c : doc.value("chains", json::array())) {
        const std::string where = "chains[" + std::to_string(s.chains.size()) + "]";
        r.check_keys(c, where, {"spi", "services"});
        ChainSpec chain;
        chain.spi = r.number<std::uint32_t>(c, where, "spi", 0, true);
        if (c.contains("services") && c.at("services").is_array()) {
            for (const auto& svc : c.at("services")) {
                if (svc.is_string()) {
                    chain.services.push_back(svc.get<std::string>());
                } else {
                    r.error(where, "services must be strings");
                }
            }
        } else {
            r.error(where, "missing required key 'services'");
        }
        s.chains.push_back(chain);
    }

    for (const auto& c : doc.value("classifier", json::array())) {
        const std::string where = "classifier[" + std::to_string(s.rules.size()) + "]";
        r.check_keys(c, where,
                     {"spi", "src_addr", "dst_addr", "src_port", "dst_port",
                      "protocol"});
        RuleSpec rule;
        rule.spi = r.number<std::uint32_t>(c, where, "spi", 0, true);
        rule.src_addr = opt_number<std::uint32_t>(r, c, where, "src_addr");
        rule.dst_addr = opt_number<std::uint32_t>(r, c, where, "dst_addr");
        rule.src_port = opt_number<std::uint16_t>(r, c, where, "src_port");
        rule.dst_port = opt_number<std::uint16_t>(r, c, where, "dst_port");
        rule.protocol = opt_number<std::uint8_t>(r, c, where, "protocol");
        s.rules.push_back(rule);
    }

    for (const auto& v : doc.value("vnfs", json::array())) {
        const std::string where = "vnfs[" + std::to_string(s.vnfs.size()) + "]";
        r.check_keys(v, where, {"name", "node", "service", "capacity_pps"});
        VnfSpec vnf;
        vnf.node = r.text(v, where, "node", "", true);
        vnf.service = r.text(v, where, "service", "", true);
        vnf.capacity_pps = r.number<double>(v, where, "capacity_pps", 0.0, true);
        vnf.name = r.text(v, where, "name",
                          vnf.service + "@" + vnf.node);
        s.vnfs.push_back(vnf);
    }

    if (doc.contains("traffic")) {
        const json& t = doc.at("traffic");
        r.check_keys(t, "traffic",
                     {"ingress", "egress", "flow_rate_per_s", "flow_duration_s",
                      "flow_pps", "arrival"});
        s.traffic.ingress = r.text(t, "traffic", "ingress", "", true);
        s.traffic.egress = r.text(t, "traffic", "egress", s.traffic.ingress);
        s.traffic.flow_rate = r.number<double>(t, "traffic", "flow_rate_per_s", 0.0);
        s.traffic.flow_duration =
            r.number<double>(t, "traffic", "flow_duration_s", 0.0);
        s.traffic.flow_pps = r.number<double>(t, "traffic", "flow_pps", 0.0);
        const std::string arrival = r.text(t, "traffic", "arrival", "deterministic");
        if (arrival == "deterministic") {
            s.traffic.arrival = ArrivalProcess::Deterministic;
        } else if (arrival == "poisson") {
            s.traffic.arrival = ArrivalProcess::Poisson;
        } else {
            r.error("traffic", "unknown arrival process '" + arrival + "'");
        }
    }

    for (const auto& e : doc.value("events", json::array())) {
        const std::string where = "events[" + std::to_string(s.events.size()) + "]";
        r.check_keys(e, where,
                     {"at_s", "action", "node", "service", "name", "capacity_pps"});
        EventSpec ev;
        ev.at = r.number<double>(e, where, "at_s", 0.0, true);
        const std::string action = r.text(e, where, "action", "", true);
        if (action == "instantiate_vnf") {
            ev.action = EventSpec::Action::InstantiateVnf;
        } else if (action == "withdraw_vnf") {
            ev.action = EventSpec::Action::WithdrawVnf;
        } else if (!action.empty()) {
            r.error(where, "unknown action '" + action + "'");
        }
        ev.node = r.text(e, where, "node", "");
        ev.service = r.text(e, where, "service", "");
        ev.name = r.text(e, where, "name", "");
        ev.capacity_pps = r.number<double>(e, where, "capacity_pps", 0.0);
        s.events.push_back(ev);
    }

    s.resolve();
    return load;
}

ScenarioLoad load_scenario_file(const std::string& path) {
    try {
        return scenario_from_json(load_toml_file(path));
    } catch (const std::exception& e) {
        ScenarioLoad load;
        load.errors.push_back(path + ": " + e.what());
        return load;
    }
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> errors;
    auto err = [&errors](const std::string& msg) { errors.push_back(msg); };

    if (s.duration <= 0) err("scenario: duration_s must be > 0");
    if (s.runs < 1) err("scenario: runs must be >= 1");
    if (s.dmano.cycle_period <= 0) err("dmano: cycle_period_s must be > 0");

    if (s.nodes.empty()) err("topology: at least one node is required");
    std::set<std::string> node_set;
    for (const auto& n : s.nodes) {
        if (!node_set.insert(n).second) err("topology: duplicate node '" + n + "'");
    }
    auto known_node = [&node_set](const std::string& n) {
        return node_set.contains(n);
    };

    for (std::size_t i = 0; i < s.links.size(); ++i) {
        const auto& l = s.links[i];
        const std::string where = "topology.links[" + std::to_string(i) + "]";
        if (!known_node(l.a)) err(where + ": unknown node '" + l.a + "'");
        if (!known_node(l.b)) err(where + ": unknown node '" + l.b + "'");
        if (l.a == l.b) err(where + ": self link");
        if (l.cost < 1) err(where + ": link cost must be >= 1");
        if (l.delay < 0) err(where + ": delay must be >= 0");
    }

    // Connectivity: traffic and flooding semantics assume one component.
    if (!s.nodes.empty()) {
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& l : s.links) {
            adj[l.a].push_back(l.b);
            adj[l.b].push_back(l.a);
        }
        std::set<std::string> seen{s.nodes.front()};
        std::vector<std::string> stack{s.nodes.front()};
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (const auto& v : adj[u]) {
                if (seen.insert(v).second) stack.push_back(v);
            }
        }
        if (seen.size() != node_set.size() && s.nodes.size() > 1) {
            err("topology: graph is not connected");
        }
    }

    std::set<std::uint32_t> spis;
    for (std::size_t i = 0; i < s.chains.size(); ++i) {
        const auto& c = s.chains[i];
        const std::string where = "chains[" + std::to_string(i) + "]";
        if (c.spi == 0 || c.spi > kNshMaxSpi) {
            err(where + ": spi must be in [1, 2^24-1]");
        }
        if (!spis.insert(c.spi).second) {
            err(where + ": duplicate spi " + std::to_string(c.spi));
        }
        if (c.services.empty()) err(where + ": chain must list at least one service");
        if (c.services.size() > kMaxChainLength) {
            err(where + ": chain longer than " + std::to_string(kMaxChainLength));
        }
    }

    for (std::size_t i = 0; i < s.rules.size(); ++i) {
        if (!spis.contains(s.rules[i].spi)) {
            err("classifier[" + std::to_string(i) + "]: spi " +
                std::to_string(s.rules[i].spi) + " has no chain");
        }
    }

    std::set<std::string> vnf_names;
    for (std::size_t i = 0; i < s.vnfs.size(); ++i) {
        const auto& v = s.vnfs[i];
        const std::string where = "vnfs[" + std::to_string(i) + "]";
        if (!known_node(v.node)) err(where + ": unknown node '" + v.node + "'");
        if (v.capacity_pps <= 0) err(where + ": capacity_pps must be > 0");
        if (!v.name.empty() && !vnf_names.insert(v.name).second) {
            err(where + ": duplicate vnf name '" + v.name + "'");
        }
    }

    const bool has_traffic = s.traffic.flow_rate > 0;
    if (has_traffic) {
        if (!known_node(s.traffic.ingress)) {
            err("traffic: unknown ingress '" + s.traffic.ingress + "'");
        }
        if (!known_node(s.traffic.egress)) {
            err("traffic: unknown egress '" + s.traffic.egress + "'");
        }
        if (s.traffic.flow_duration <= 0) err("traffic: flow_duration_s must be > 0");
        if (s.traffic.flow_pps <= 0) err("traffic: flow_pps must be > 0");
        if (s.rules.empty()) err("traffic: no classifier rules defined");
    }

    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        const std::string where = "events[" + std::to_string(i) + "]";
        if (e.at < 0 || e.at > s.duration) {
            err(where + ": at_s outside [0, duration]");
        }
        if (e.action == EventSpec::Action::InstantiateVnf) {
            if (!known_node(e.node)) err(where + ": unknown node '" + e.node + "'");
            if (e.service.empty()) err(where + ": instantiate_vnf needs 'service'");
            if (e.capacity_pps <= 0) err(where + ": capacity_pps must be > 0");
            if (!e.name.empty() && !vnf_names.insert(e.name).second) {
                err(where + ": duplicate vnf name '" + e.name + "'");
            }
        } else {
            const bool by_name = !e.name.empty();
            const bool by_location = !e.node.empty() && !e.service.empty();
            if (!by_name && !by_location) {
                err(where + ": withdraw_vnf needs 'name' or 'node'+'service'");
            }
            if (by_name && !vnf_names.contains(e.name)) {
                err(where + ": unknown vnf name '" + e.name + "'");
            }
            if (!e.node.empty() && !known_node(e.node)) {
                err(where + ": unknown node '" + e.node + "'");
            }
        }
    }

    return errors;
}

}  // namespace sfcsim

#include <map>

#include "doctest.h"
#include "sfcsim/connector.hpp"
#include "sfcsim/vnf_model.hpp"
#include "support/test_oracles.hpp"

using namespace sfcsim;

namespace {

ChainCatalog one_service_catalog() {
    ChainCatalog cat;
    cat.chains[1] = {7};
    return cat;
}

ChainCatalog three_service_catalog() {
    ChainCatalog cat;
    cat.chains[2] = {7, 8, 9};
    return cat;
}

// Table with the given (instance, host, total cost) entries for service 7.
WcmpTable table_for(std::vector<std::tuple<InstanceId, NodeId, std::uint64_t>> rows,
                    std::uint64_t generation = 1) {
    ServicePlaneView view;
    std::map<NodeId, std::uint32_t> hosts;
    for (const auto& [inst, host, cost] : rows) {
        view.vnf_attachments.push_back(VnfAttachment{
            7, inst, host, static_cast<std::uint32_t>(cost), endpoint_for(host)});
        view.nfv_nodes.insert(host);
    }
    view.nfv_nodes.insert(0);
    for (NodeId host : view.nfv_nodes) {
        if (host == 0) continue;
        view.network_edges.push_back(NetworkEdge{0, host, 1});
        view.network_edges.push_back(NetworkEdge{host, 0, 1});
    }
    // Cancel the 1-cost link so the entry totals equal the requested costs.
    for (auto& att : view.vnf_attachments) {
        if (att.host != 0) att.vnf_cost -= 1;
    }
    return compute_wcmp(view, 0, generation);
}

NshPacket packet_for_flow(std::uint32_t spi, std::uint8_t si,
                          std::uint64_t hash) {
    NshPacket pkt;
    pkt.header.spi = spi;
    pkt.header.si = si;
    pkt.header.ttl = kNshInitialTtl;
    pkt.header.flow_hash = hash;
    return pkt;
}

}  // namespace

TEST_CASE("classify stamps spi, si and the flow hash") {
    const auto catalog = three_service_catalog();
    std::vector<ClassifierRule> rules{ClassifierRule{.spi = 2}};
    const FlowKey key{1, 2, 3, 4, 17};

    const auto pkt = classify(key, rules, catalog);
    REQUIRE(pkt.has_value());
    CHECK(pkt->header.spi == 2);
    CHECK(pkt->header.si == 3);  // chain length
    CHECK(pkt->header.ttl == 63);
    CHECK(pkt->header.flow_hash == flow_hash(key));
}

TEST_CASE("classification is first-match-wins with wildcards") {
    ChainCatalog cat;
    cat.chains[1] = {7};
    cat.chains[2] = {8};
    ClassifierRule tcp_rule;
    tcp_rule.protocol = 6;
    tcp_rule.spi = 2;
    std::vector<ClassifierRule> rules{tcp_rule, ClassifierRule{.spi = 1}};

    CHECK(classify(FlowKey{1, 2, 3, 4, 6}, rules, cat)->header.spi == 2);
    CHECK(classify(FlowKey{1, 2, 3, 4, 17}, rules, cat)->header.spi == 1);
}

TEST_CASE("no matching rule drops the packet") {
    ChainCatalog cat = one_service_catalog();
    ClassifierRule rule;
    rule.protocol = 6;
    rule.spi = 1;
    std::vector<ClassifierRule> rules{rule};
    CHECK(!classify(FlowKey{1, 2, 3, 4, 17}, rules, cat).has_value());
}

TEST_CASE("identical 5-tuples hash identically wherever classified") {
    const auto catalog = one_service_catalog();
    std::vector<ClassifierRule> rules{ClassifierRule{.spi = 1}};
    const FlowKey key{0x0A000001, 0x0A000002, 1000, 80, 17};
    const auto at_ingress = classify(key, rules, catalog);
    const auto elsewhere = classify(key, rules, catalog);
    CHECK(at_ingress->header.flow_hash == elsewhere->header.flow_hash);
}

TEST_CASE("fresh flows follow the WCMP probabilities within two percent") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 1234, &catalog, 60.0);
    connector.push_table(table_for({{1, 1, 30}, {2, 2, 30}}));

    std::map<InstanceId, int> counts;
    for (int flow = 0; flow < 10000; ++flow) {
        auto pkt = packet_for_flow(1, 1, static_cast<std::uint64_t>(flow));
        const auto d = connector.forward(pkt, 0.0);
        REQUIRE(d.kind == ForwardDecision::Kind::Tunnel);
        ++counts[d.instance];
    }
    CHECK(counts[1] >= 4900);
    CHECK(counts[1] <= 5100);
    CHECK(counts[1] + counts[2] == 10000);
}

TEST_CASE("selection frequencies pass a chi-square test at alpha 0.01") {
    const auto catalog = one_service_catalog();
    const std::vector<std::vector<std::tuple<InstanceId, NodeId, std::uint64_t>>>
        groups = {
            {{1, 1, 30}, {2, 2, 30}},             // 0.5 / 0.5
            {{1, 1, 30}, {2, 2, 25}},             // 26/57, 31/57
            {{1, 1, 10}, {2, 2, 40}, {3, 3, 90}}, // three-way
        };
    int seed = 0;
    for (const auto& rows : groups) {
        Connector connector(0, 555 + seed++, &catalog, 60.0);
        connector.push_table(table_for(rows));
        const auto* group = connector.table().find(7);
        REQUIRE(group != nullptr);

        std::map<InstanceId, std::uint64_t> counts;
        const int n = 10000;
        for (int flow = 0; flow < n; ++flow) {
            auto pkt = packet_for_flow(1, 1, static_cast<std::uint64_t>(flow));
            ++counts[connector.forward(pkt, 0.0).instance];
        }
        std::vector<std::uint64_t> observed;
        std::vector<double> p;
        for (const auto& e : group->entries) {
            observed.push_back(counts[e.instance]);
            p.push_back(e.probability);
        }
        const double x2 = sfcsim::testing::chi_square(observed, p, n);
        CHECK(x2 < sfcsim::testing::chi_square_critical_99(observed.size() - 1));
    }
}

TEST_CASE("flow decisions stick across table generations") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 99, &catalog, 60.0);
    connector.push_table(table_for({{1, 1, 30}, {2, 2, 30}}, 1));

    auto first = packet_for_flow(1, 1, 0xABCD);
    const auto chosen = connector.forward(first, 0.0).instance;

    // Push new generations with very different costs; the cached flow must
    // not move while its instance stays live.
    for (std::uint64_t gen = 2; gen < 10; ++gen) {
        connector.push_table(table_for({{1, 1, 5}, {2, 2, 900}}, gen));
        auto pkt = packet_for_flow(1, 1, 0xABCD);
        CHECK(connector.forward(pkt, 1.0 * static_cast<double>(gen)).instance ==
              chosen);
        CHECK(connector.generation() == gen);
    }
}

TEST_CASE("single-instance group always selects that instance") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 3, &catalog, 60.0);
    connector.push_table(table_for({{5, 2, 12}}));
    for (int flow = 0; flow < 100; ++flow) {
        auto pkt = packet_for_flow(1, 1, static_cast<std::uint64_t>(flow));
        CHECK(connector.forward(pkt, 0.0).instance == 5);
    }
}

TEST_CASE("unroutable service types drop") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 3, &catalog, 60.0);

    SUBCASE("no table at all") {
        auto pkt = packet_for_flow(1, 1, 1);
        const auto d = connector.forward(pkt, 0.0);
        CHECK(d.kind == ForwardDecision::Kind::Drop);
        CHECK(d.cause == DropCause::Unroutable);
    }
    SUBCASE("unknown spi") {
        connector.push_table(table_for({{1, 1, 30}}));
        auto pkt = packet_for_flow(9, 1, 1);
        CHECK(connector.forward(pkt, 0.0).kind == ForwardDecision::Kind::Drop);
    }
}

TEST_CASE("a cached entry pointing at a withdrawn instance is resampled") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 17, &catalog, 60.0);
    connector.push_table(table_for({{1, 1, 30}, {2, 2, 30}}, 1));

    auto pkt = packet_for_flow(1, 1, 42);
    const auto first = connector.forward(pkt, 0.0).instance;
    const InstanceId survivor = first == 1 ? 2 : 1;
    const NodeId survivor_host = first == 1 ? 2 : 1;

    connector.push_table(table_for({{survivor, survivor_host, 30}}, 2));
    auto again = packet_for_flow(1, 1, 42);
    CHECK(connector.forward(again, 1.0).instance == survivor);
}

TEST_CASE("ttl decrements and expires") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 21, &catalog, 60.0);
    connector.push_table(table_for({{1, 1, 30}}));

    auto pkt = packet_for_flow(1, 1, 7);
    pkt.header.ttl = 2;
    CHECK(connector.forward(pkt, 0.0).kind == ForwardDecision::Kind::Tunnel);
    CHECK(pkt.header.ttl == 1);
    const auto d = connector.forward(pkt, 0.0);
    CHECK(d.kind == ForwardDecision::Kind::Drop);
    CHECK(d.cause == DropCause::TtlExpired);
}

TEST_CASE("local instances are delivered locally, remote ones tunneled") {
    const auto catalog = one_service_catalog();
    Connector connector(2, 5, &catalog, 60.0);
    connector.push_table(table_for({{5, 2, 12}}));
    auto pkt = packet_for_flow(1, 1, 3);
    const auto d = connector.forward(pkt, 0.0);
    CHECK(d.kind == ForwardDecision::Kind::LocalDeliver);
    CHECK(d.instance == 5);

    CHECK(connector.local_dispatch(packet_for_flow(1, 1, 99)) == 5);
    CHECK(!Connector(3, 5, &catalog, 60.0).local_dispatch(packet_for_flow(1, 1, 9))
               .has_value());
}

TEST_CASE("idle cache entries are evicted, fresh ones kept") {
    const auto catalog = one_service_catalog();
    Connector connector(0, 8, &catalog, 60.0);
    connector.push_table(table_for({{1, 1, 30}}));
    auto pkt = packet_for_flow(1, 1, 1);
    connector.forward(pkt, 0.0);
    CHECK(connector.cache().size() == 1);
    connector.sweep_cache(59.0);
    CHECK(connector.cache().size() == 1);
    connector.sweep_cache(61.0);
    CHECK(connector.cache().size() == 0);
}

TEST_CASE("vnf processing decrements si exactly once per traversal") {
    VnfInstanceModel vnf(1, 7, 2, 100.0);
    auto pkt = packet_for_flow(1, 2, 5);
    CHECK(vnf.process(pkt, 7, 0.0) == VnfInstanceModel::ProcessResult::Admitted);
    CHECK(pkt.header.si == 1);
    CHECK(pkt.hops == std::vector<InstanceId>{1});
}

TEST_CASE("wrong service type is a misdelivery drop") {
    VnfInstanceModel vnf(1, 7, 2, 100.0);
    auto pkt = packet_for_flow(1, 1, 5);
    CHECK(vnf.process(pkt, 8, 0.0) ==
          VnfInstanceModel::ProcessResult::DropMisdelivery);
    CHECK(pkt.header.si == 1);
}

TEST_CASE("offered load at capacity passes untouched") {
    VnfInstanceModel vnf(1, 7, 2, 150.0);
    int drops = 0;
    // 150 pps for 20 seconds, uniformly spaced.
    for (int i = 0; i < 150 * 20; ++i) {
        auto pkt = packet_for_flow(1, 1, 5);
        if (vnf.process(pkt, 7, i / 150.0) !=
            VnfInstanceModel::ProcessResult::Admitted) {
            ++drops;
        }
    }
    CHECK(drops == 0);
}

TEST_CASE("offered load above capacity sheds the excess") {
    VnfInstanceModel vnf(1, 7, 2, 150.0);
    // 200 pps for 60 seconds: the first seconds ride on the token burst,
    // after which the drop rate settles at ~50 pps.
    int admitted_late = 0;
    int drops_late = 0;
    for (int i = 0; i < 200 * 60; ++i) {
        const double now = i / 200.0;
        auto pkt = packet_for_flow(1, 1, 5);
        const bool ok = vnf.process(pkt, 7, now) ==
                        VnfInstanceModel::ProcessResult::Admitted;
        if (now >= 10.0) (ok ? admitted_late : drops_late) += 1;
    }
    const double window = 50.0;
    CHECK(admitted_late / window == doctest::Approx(150.0).epsilon(0.02));
    CHECK(drops_late / window == doctest::Approx(50.0).epsilon(0.06));
}

TEST_CASE("cycle measurement reports pps and resets") {
    VnfInstanceModel vnf(1, 7, 2, 150.0);
    for (int i = 0; i < 100; ++i) {
        auto pkt = packet_for_flow(1, 1, 5);
        vnf.process(pkt, 7, i / 100.0);
    }
    CHECK(vnf.measure_cycle_pps(2.0) == doctest::Approx(50.0));
    CHECK(vnf.measure_cycle_pps(2.0) == doctest::Approx(0.0));
}

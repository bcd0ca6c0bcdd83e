#include "sfcsim/connector.hpp"

#include <set>

namespace sfcsim {

const char* to_string(DropCause cause) {
    switch (cause) {
        case DropCause::Unclassified: return "unclassified";
        case DropCause::Unroutable: return "unroutable";
        case DropCause::Overload: return "overload";
        case DropCause::TtlExpired: return "ttl_expired";
        case DropCause::Misdelivery: return "misdelivery";
    }
    return "?";
}

void Connector::push_table(WcmpTable table) {
    table_ = std::move(table);
    std::set<InstanceId> live;
    for (const auto& [type, group] : table_.groups) {
        for (const auto& e : group.entries) live.insert(e.instance);
    }
    cache_.evict_if([&live](const FlowCacheEntry& e) {
        return !live.contains(e.instance);
    });
}

bool Connector::instance_live(ServiceTypeId type, InstanceId instance) const {
    const auto* group = table_.find(type);
    if (group == nullptr) return false;
    for (const auto& e : group->entries) {
        if (e.instance == instance) return true;
    }
    return false;
}

const WcmpEntry* Connector::sample(const WcmpGroup& group) {
    const double draw = rng_.uniform01();
    double cumulative = 0.0;
    for (const auto& entry : group.entries) {
        cumulative += entry.probability;
        if (draw < cumulative) return &entry;
    }
    return &group.entries.back();  // guard against rounding at the tail
}

ForwardDecision Connector::forward(NshPacket& pkt, double now) {
    ForwardDecision decision;
    if (pkt.header.ttl == 0 || --pkt.header.ttl == 0) {
        decision.kind = ForwardDecision::Kind::Drop;
        decision.cause = DropCause::TtlExpired;
        return decision;
    }
    const auto service = catalog_->service_at(pkt.header.spi, pkt.header.si);
    if (!service) {
        decision.kind = ForwardDecision::Kind::Drop;
        decision.cause = DropCause::Unroutable;
        return decision;
    }

    const FlowCacheKey key{pkt.header.spi, pkt.header.si, pkt.header.flow_hash};
    const WcmpEntry* chosen = nullptr;
    if (const auto* entry = cache_.lookup(key, now)) {
        if (instance_live(*service, entry->instance)) {
            decision.instance = entry->instance;
            decision.endpoint = entry->endpoint;
            const auto* group = table_.find(*service);
            for (const auto& e : group->entries) {
                if (e.instance == entry->instance) chosen = &e;
            }
        } else {
            cache_.erase(key);  // withdrawn under us; resample below
        }
    }
    if (chosen == nullptr) {
        const auto* group = table_.find(*service);
        if (group == nullptr || group->unroutable()) {
            decision.kind = ForwardDecision::Kind::Drop;
            decision.cause = DropCause::Unroutable;
            return decision;
        }
        chosen = sample(*group);
        cache_.insert(key, chosen->instance, chosen->nsh_endpoint, now);
        decision.instance = chosen->instance;
        decision.endpoint = chosen->nsh_endpoint;
    }
    decision.kind = chosen->host == self_ ? ForwardDecision::Kind::LocalDeliver
                                          : ForwardDecision::Kind::Tunnel;
    return decision;
}

std::optional<InstanceId> Connector::local_dispatch(const NshPacket& pkt) const {
    const auto service = catalog_->service_at(pkt.header.spi, pkt.header.si);
    if (!service) return std::nullopt;
    const auto* group = table_.find(*service);
    if (group == nullptr) return std::nullopt;
    for (const auto& e : group->entries) {
        if (e.host == self_) return e.instance;
    }
    return std::nullopt;
}

}  // namespace sfcsim

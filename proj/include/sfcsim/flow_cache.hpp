#pragma once

#include <compare>
#include <cstdint>
#include <map>

#include "sfcsim/types.hpp"

namespace sfcsim {

// The same flow is cached independently at each chain position, so the key
// includes the SI the decision was taken at.
struct FlowCacheKey {
    std::uint32_t spi = 0;
    std::uint8_t si = 0;
    std::uint64_t flow_hash = 0;

    auto operator<=>(const FlowCacheKey&) const = default;
};

struct FlowCacheEntry {
    InstanceId instance = 0;
    EndpointAddr endpoint{};
    double created_at = 0.0;
    double last_used = 0.0;
};

// Per-connector forwarding decision cache. Entries never change once
// created; they disappear only through idle timeout or instance withdrawal.
class FlowCache {
public:
    const FlowCacheEntry* lookup(const FlowCacheKey& key, double now) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.last_used = now;
        return &it->second;
    }

    void insert(const FlowCacheKey& key, InstanceId instance,
                EndpointAddr endpoint, double now) {
        entries_.emplace(key, FlowCacheEntry{instance, endpoint, now, now});
    }

    void erase(const FlowCacheKey& key) { entries_.erase(key); }

    std::size_t evict_idle(double now, double idle_timeout) {
        std::size_t evicted = 0;
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (now - it->second.last_used > idle_timeout) {
                it = entries_.erase(it);
                ++evicted;
            } else {
                ++it;
            }
        }
        return evicted;
    }

    std::size_t evict_instance(InstanceId instance) {
        return evict_if([instance](const FlowCacheEntry& e) {
            return e.instance == instance;
        });
    }

    template <typename Pred>
    std::size_t evict_if(Pred&& pred) {
        std::size_t evicted = 0;
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (pred(it->second)) {
                it = entries_.erase(it);
                ++evicted;
            } else {
                ++it;
            }
        }
        return evicted;
    }

    std::size_t size() const { return entries_.size(); }

private:
    std::map<FlowCacheKey, FlowCacheEntry> entries_;
};

}  // namespace sfcsim

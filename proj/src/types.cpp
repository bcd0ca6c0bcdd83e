#include "sfcsim/types.hpp"

namespace sfcsim {

std::string to_string(EndpointAddr addr) {
    return std::to_string(addr.value >> 24) + "." +
           std::to_string((addr.value >> 16) & 0xFF) + "." +
           std::to_string((addr.value >> 8) & 0xFF) + "." +
           std::to_string(addr.value & 0xFF);
}

const char* to_string(CostPolicy policy) {
    switch (policy) {
        case CostPolicy::RemainingCapacity: return "remaining_capacity";
        case CostPolicy::ConsumedLoad: return "consumed_load";
    }
    return "?";
}

bool cost_policy_from_string(const std::string& s, CostPolicy& out) {
    if (s == "remaining_capacity") {
        out = CostPolicy::RemainingCapacity;
        return true;
    }
    if (s == "consumed_load") {
        out = CostPolicy::ConsumedLoad;
        return true;
    }
    return false;
}

}  // namespace sfcsim

#include "sfcsim/linkstate.hpp"

#include <algorithm>

namespace sfcsim {

Lsa LinkStateProtocol::originate(NodeId claimed_origin,
                                 std::variant<RouterLsaBody, VnfLsaBody> body,
                                 double now) {
    if (claimed_origin != self_) {
        throw OriginMismatchError("node " + std::to_string(self_) +
                                  " cannot originate an LSA owned by node " +
                                  std::to_string(claimed_origin));
    }
    Lsa lsa;
    lsa.origin = self_;
    lsa.originated_at = now;
    lsa.body = std::move(body);
    lsa.seq = ++own_seq_[lsa.key()];
    lsdb_.install(lsa, now);
    return lsa;
}

std::vector<NodeId> LinkStateProtocol::on_receive(
    const Lsa& lsa, NodeId from, std::span<const NodeId> neighbors,
    double now) {
    const auto result = lsdb_.install(lsa, now);
    if (result == Lsdb::InstallResult::Stale) {
        ++stale_rx_count_;
        return {};
    }
    if (result == Lsdb::InstallResult::Duplicate) {
        return {};
    }
    std::vector<NodeId> forward;
    forward.reserve(neighbors.size());
    for (NodeId n : neighbors) {
        if (n != from) forward.push_back(n);
    }
    return forward;
}

}  // namespace sfcsim

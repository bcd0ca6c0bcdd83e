#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sfcsim/lsdb.hpp"

namespace sfcsim {

// Thrown when a node tries to originate an LSA whose identity belongs to a
// different node.
class OriginMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simplified link-state protocol instance for one node: origination with
// per-identity sequence numbers, flood-except-sender with duplicate and
// stale suppression, and the node's LSDB.
//
// The protocol is transport-agnostic: originate() and on_receive() return the
// set of neighbors the LSA must be transmitted to, and the caller (simulator
// or test harness) performs the deliveries.
class LinkStateProtocol {
public:
    explicit LinkStateProtocol(NodeId self) : self_(self) {}

    NodeId self() const { return self_; }
    Lsdb& lsdb() { return lsdb_; }
    const Lsdb& lsdb() const { return lsdb_; }

    // Stamps the body with the next sequence number for its identity,
    // installs it locally and returns the LSA to flood to all neighbors.
    // Throws OriginMismatchError if claimed_origin != self.
    Lsa originate(NodeId claimed_origin,
                  std::variant<RouterLsaBody, VnfLsaBody> body, double now);

    // Handles an LSA received from neighbor `from`. If it is fresh it is
    // installed and the forward set (all `neighbors` except `from`) is
    // returned; duplicates and stale copies yield an empty set.
    std::vector<NodeId> on_receive(const Lsa& lsa, NodeId from,
                                   std::span<const NodeId> neighbors,
                                   double now);

    std::uint64_t stale_rx_count() const { return stale_rx_count_; }

private:
    NodeId self_;
    Lsdb lsdb_;
    std::map<LsaKey, std::uint64_t> own_seq_;
    std::uint64_t stale_rx_count_ = 0;
};

}  // namespace sfcsim

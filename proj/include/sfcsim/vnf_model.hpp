#pragma once

#include <algorithm>
#include <cstdint>

#include "sfcsim/chain.hpp"
#include "sfcsim/types.hpp"

namespace sfcsim {

// Capacity-limited VNF instance. Processing is pass-through with an SI
// decrement; capacity is enforced with a token bucket refilled at
// capacity_pps and capped at one second's worth of tokens.
class VnfInstanceModel {
public:
    enum class ProcessResult { Admitted, DropOverload, DropMisdelivery };

    VnfInstanceModel(InstanceId instance, ServiceTypeId service_type,
                     NodeId host, double capacity_pps)
        : instance_(instance),
          service_type_(service_type),
          host_(host),
          capacity_pps_(capacity_pps),
          tokens_(capacity_pps) {}

    ProcessResult process(NshPacket& pkt, ServiceTypeId expected_type,
                          double now) {
        if (expected_type != service_type_) return ProcessResult::DropMisdelivery;
        refill(now);
        if (tokens_ < 1.0) return ProcessResult::DropOverload;
        tokens_ -= 1.0;
        pkt.header.si -= 1;
        pkt.hops.push_back(instance_);
        ++admitted_cycle_;
        ++admitted_sample_;
        return ProcessResult::Admitted;
    }

    // Measured throughput since the last cycle measurement, in pps.
    double measure_cycle_pps(double period) {
        const double pps = period > 0 ? admitted_cycle_ / period : 0.0;
        admitted_cycle_ = 0;
        return pps;
    }

    // Same counter, tracked separately for the 1 s metric samples.
    double take_sample_pps(double period) {
        const double pps = period > 0 ? admitted_sample_ / period : 0.0;
        admitted_sample_ = 0;
        return pps;
    }

    InstanceId instance() const { return instance_; }
    ServiceTypeId service_type() const { return service_type_; }
    NodeId host() const { return host_; }
    double capacity_pps() const { return capacity_pps_; }

private:
    void refill(double now) {
        if (now > last_refill_) {
            tokens_ = std::min(capacity_pps_,
                               tokens_ + (now - last_refill_) * capacity_pps_);
            last_refill_ = now;
        }
    }

    InstanceId instance_;
    ServiceTypeId service_type_;
    NodeId host_;
    double capacity_pps_;
    double tokens_;
    double last_refill_ = 0.0;
    double admitted_cycle_ = 0.0;
    double admitted_sample_ = 0.0;
};

}  // namespace sfcsim

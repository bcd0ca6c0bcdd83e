#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace sfcsim {

enum class EventKind : std::uint8_t {
    PacketArrival,
    LsaDelivery,
    DmanoCycle,
    FlowStart,
    FlowEnd,
    ScenarioEvent,
    MetricSample,
};

// Deterministic discrete-event scheduler. Events fire in (time, seq) order;
// seq is assigned at insertion, so same-time events run in scheduling order.
class EventQueue {
public:
    void schedule(double time, EventKind kind, std::function<void()> fn) {
        assert(time >= now_ && "event scheduled in the past");
        heap_.push(Entry{time, next_seq_++, kind, std::move(fn)});
    }

    bool run_next() {
        if (heap_.empty()) return false;
        Entry entry = std::move(const_cast<Entry&>(heap_.top()));
        heap_.pop();
        now_ = entry.time;
        entry.fn();
        return true;
    }

    double now() const { return now_; }
    bool empty() const { return heap_.empty(); }
    std::size_t pending() const { return heap_.size(); }
    double peek_time() const { return heap_.top().time; }

private:
    struct Entry {
        double time;
        std::uint64_t seq;
        EventKind kind;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double now_ = 0.0;
};

}  // namespace sfcsim

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sfcsim/lsa.hpp"

namespace sfcsim {

// Frozen copy of an LSDB at one point in time. Value type; later database
// updates never show through.
struct LsdbSnapshot {
    std::map<LsaKey, Lsa> entries;

    bool operator==(const LsdbSnapshot&) const = default;
};

// Per-node link-state database: newest LSA per identity.
class Lsdb {
public:
    enum class InstallResult { Installed, Duplicate, Stale };

    // Keeps the LSA iff its seq is higher than the stored one (or the
    // identity is unknown). Duplicate: same seq. Stale: lower seq.
    InstallResult install(const Lsa& lsa, double now);

    // Drops every LSA older than max_age and returns the removed identities.
    std::vector<LsaKey> age_out(double now, double max_age);

    LsdbSnapshot snapshot() const { return LsdbSnapshot{entries_}; }

    const Lsa* find(const LsaKey& key) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    double last_change() const { return last_change_; }

private:
    std::map<LsaKey, Lsa> entries_;
    double last_change_ = 0.0;
};

}  // namespace sfcsim

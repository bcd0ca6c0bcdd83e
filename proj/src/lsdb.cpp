#include "sfcsim/lsdb.hpp"

namespace sfcsim {

Lsdb::InstallResult Lsdb::install(const Lsa& lsa, double now) {
    auto it = entries_.find(lsa.key());
    if (it == entries_.end()) {
        entries_.emplace(lsa.key(), lsa);
        last_change_ = now;
        return InstallResult::Installed;
    }
    if (lsa.seq > it->second.seq) {
        it->second = lsa;
        last_change_ = now;
        return InstallResult::Installed;
    }
    return lsa.seq == it->second.seq ? InstallResult::Duplicate
                                     : InstallResult::Stale;
}

std::vector<LsaKey> Lsdb::age_out(double now, double max_age) {
    std::vector<LsaKey> removed;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (now - it->second.originated_at > max_age) {
            removed.push_back(it->first);
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
    if (!removed.empty()) last_change_ = now;
    return removed;
}

const Lsa* Lsdb::find(const LsaKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace sfcsim

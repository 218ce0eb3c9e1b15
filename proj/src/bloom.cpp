#include "sndn/bloom.hpp"

#include <cmath>

namespace sndn {

BloomFilter::BloomFilter(std::size_t m_bits, int k)
    : m_(m_bits == 0 ? 1 : m_bits), k_(k < 1 ? 1 : k), words_((m_ + 63) / 64, 0) {}

void BloomFilter::insert(std::uint64_t key) {
    std::uint64_t s = key;
    std::uint64_t h1 = splitmix64(s);
    std::uint64_t h2 = splitmix64(s) | 1;
    for (int i = 0; i < k_; ++i) {
        std::uint64_t bit = (h1 + static_cast<std::uint64_t>(i) * h2) % m_;
        words_[bit >> 6] |= (1ULL << (bit & 63));
    }
}

bool BloomFilter::may_contain(std::uint64_t key) const {
    std::uint64_t s = key;
    std::uint64_t h1 = splitmix64(s);
    std::uint64_t h2 = splitmix64(s) | 1;
    for (int i = 0; i < k_; ++i) {
        std::uint64_t bit = (h1 + static_cast<std::uint64_t>(i) * h2) % m_;
        if (!(words_[bit >> 6] & (1ULL << (bit & 63)))) return false;
    }
    return true;
}

void BloomFilter::clear() { std::fill(words_.begin(), words_.end(), 0); }

double BloomFilter::analytic_fp_rate(std::size_t m_bits, int k, std::size_t n) {
    double exponent = -static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(m_bits);
    return std::pow(1.0 - std::exp(exponent), k);
}

std::uint64_t name_key(const std::vector<ComponentId>& sorted_components) {
    return fnv1a64(sorted_components.data(), sorted_components.size() * sizeof(ComponentId));
}

void ContentSynopsis::advertise(const std::vector<ComponentId>& name_sorted, NodeId provider,
                                Time at) {
    auto& entry = index_[name_sorted];
    entry.provider = provider;
    entry.advertised = at;
    filter_.insert(name_key(name_sorted));
    if (oldest_ < 0 || at < oldest_) oldest_ = at;
}

void ContentSynopsis::prune(Time at, Time window) {
    if (oldest_ < 0 || oldest_ >= at - window) return;
    filter_.clear();
    oldest_ = -1;
    for (auto it = index_.begin(); it != index_.end();) {
        if (it->second.advertised < at - window) {
            it = index_.erase(it);
        } else {
            filter_.insert(name_key(it->first));
            if (oldest_ < 0 || it->second.advertised < oldest_) oldest_ = it->second.advertised;
            ++it;
        }
    }
}

std::optional<NodeId> ContentSynopsis::query(const std::vector<ComponentId>& name_sorted, Time at,
                                             Time window, NodeId owner) {
    prune(at, window);
    if (!filter_.may_contain(name_key(name_sorted))) return std::nullopt;
    auto it = index_.find(name_sorted);
    if (it != index_.end()) return it->second.provider;
    return owner;  // false positive: bind to the claiming node
}

std::size_t ContentSynopsis::live_entries(Time at, Time window) {
    prune(at, window);
    return index_.size();
}

}  // namespace sndn

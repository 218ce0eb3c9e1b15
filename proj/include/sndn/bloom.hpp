#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sndn/core.hpp"
#include "sndn/naming.hpp"

namespace sndn {

/// Plain m-bit, k-hash Bloom filter over 64-bit keys (double hashing).
class BloomFilter {
public:
    BloomFilter(std::size_t m_bits = 4096, int k = 3);

    void insert(std::uint64_t key);
    bool may_contain(std::uint64_t key) const;
    void clear();

    std::size_t bit_count() const { return m_; }
    int hash_count() const { return k_; }

    /// Analytic false-positive rate after n insertions: (1 - e^{-kn/m})^k.
    static double analytic_fp_rate(std::size_t m_bits, int k, std::size_t n);

private:
    std::size_t m_;
    int k_;
    std::vector<std::uint64_t> words_;
};

/// Stable hash of a canonical (sorted) component set.
std::uint64_t name_key(const std::vector<ComponentId>& sorted_components);

/// Advertised-content synopsis: a Bloom filter answering membership plus an
/// exact provider index behind it. Entries expire `window` after their
/// advertisement; expiry rebuilds the filter, so live entries never read as
/// absent.
class ContentSynopsis {
public:
    ContentSynopsis(std::size_t m_bits = 4096, int k = 3) : filter_(m_bits, k) {}

    void advertise(const std::vector<ComponentId>& name_sorted, NodeId provider, Time at);

    /// Membership is answered by the Bloom filter. On a hit the exact index
    /// names the provider; a false positive falls back to `owner` (the
    /// synopsis holder claims knowledge it does not have).
    std::optional<NodeId> query(const std::vector<ComponentId>& name_sorted, Time at, Time window,
                                NodeId owner);

    std::size_t live_entries(Time at, Time window);

private:
    void prune(Time at, Time window);

    struct Entry {
        NodeId provider = kNoNode;
        Time advertised = 0;
    };

    BloomFilter filter_;
    std::map<std::vector<ComponentId>, Entry> index_;
    Time oldest_ = -1;
};

}  // namespace sndn

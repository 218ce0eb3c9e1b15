#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sndn/core.hpp"
#include "sndn/naming.hpp"

namespace sndn {

/// Weights and timescale for social strength. `window` is the backoff
/// window T_p shared by freshness, physical strength, centrality and the
/// neighbour-set fresh timers. `circle_threshold` gates friendship admission
/// (strict inequality).
struct StrengthParams {
    double alpha = 0.5;              // weight of logical vs physical strength
    Time window = 10800;             // T_p, seconds (3 h)
    double circle_threshold = 0.18;
    Time freshness_tick = 600;       // seconds per freshness time unit
};

/// One content acquisition: the moment a data item entered a user's store.
/// Components are copied in so the log is self-contained.
struct Acquisition {
    Time at = 0;
    ItemId item = kNoItem;
    std::vector<ComponentId> components;
};

/// Per-user acquisition history, non-decreasing in time.
struct AcquisitionLog {
    std::vector<Acquisition> records;

    void add(Time at, ItemId item, std::vector<ComponentId> components);
};

/// Sparse per-component freshness; absent components are implicitly 0.
using FreshnessVector = std::map<ComponentId, double>;

/// Freshness of one component: sum of 1/(elapsed ticks) over in-window
/// acquisitions whose name contains the component. An acquisition in the
/// current tick contributes exactly 1.
double freshness(const AcquisitionLog& log, ComponentId component, Time at, Time window, Time tick);

/// Freshness of every component acquired within the window.
FreshnessVector freshness_vector(const AcquisitionLog& log, Time at, Time window, Time tick);

/// Freshness-weighted Jaccard ratio over the union support; 0 when the
/// union is empty.
double logical_strength(const FreshnessVector& a, const FreshnessVector& b);

// --- contact histories -----------------------------------------------------

/// Closed contact interval [start, end); duration = end - start.
struct Interval {
    Time start = 0;
    Time end = 0;
};

/// One unordered pair's contact timeline: closed intervals plus at most one
/// open (still active) contact.
struct PairHistory {
    std::vector<Interval> closed;          // disjoint, increasing
    std::optional<Time> open_start;

    void begin_contact(Time at);
    void end_contact(Time at);
    bool in_contact(Time at) const;
    /// Intervals clipped to [from, to], including the open contact.
    std::vector<Interval> clipped(Time from, Time to) const;
    /// true iff any contact overlaps [from, to].
    bool touched(Time from, Time to) const;
};

/// All pair histories, keyed by unordered pair. Also answers per-node
/// windowed degree queries.
class PairHistoryStore {
public:
    void begin_contact(NodeId a, NodeId b, Time at);
    void end_contact(NodeId a, NodeId b, Time at);

    const PairHistory* find(NodeId a, NodeId b) const;
    PairHistory& at(NodeId a, NodeId b);
    bool in_contact(NodeId a, NodeId b, Time at) const;

    /// Distinct peers of `node` with any contact overlapping [at-window, at].
    /// Peers in `exclude` (sorted) are not counted.
    int degree_centrality(NodeId node, Time at, Time window,
                          const std::vector<NodeId>& exclude = {}) const;

    /// Peers of `node` ever seen (for iteration in audits/tests).
    std::vector<NodeId> peers(NodeId node) const;

private:
    std::map<std::pair<NodeId, NodeId>, PairHistory> pairs_;
    std::map<NodeId, std::vector<NodeId>> adjacency_;

    static std::pair<NodeId, NodeId> key(NodeId a, NodeId b);
};

/// Physical strength over [at-window, at]: contact durations plus
/// log-damped inter-contact gaps (leading and trailing gaps included),
/// normalized by the evaluated window length. In (0, 1] for a non-empty
/// window; 1 iff in contact for the whole window.
double physical_strength(const PairHistory& history, Time at, Time window);

/// Convex combination alpha*wl + (1-alpha)*wp.
double social_strength(double wl, double wp, double alpha);

/// Windowed social strength of a pair from raw logs and histories.
double pair_social_strength(const AcquisitionLog& log_a, const AcquisitionLog& log_b,
                            const PairHistory* history, Time at, const StrengthParams& params);

}  // namespace sndn

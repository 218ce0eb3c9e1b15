#include "sndn/social.hpp"

#include <algorithm>
#include <cmath>

namespace sndn {

void AcquisitionLog::add(Time at, ItemId item, std::vector<ComponentId> components) {
    if (!records.empty() && at < records.back().at)
        throw std::logic_error("acquisition times must be non-decreasing");
    records.push_back(Acquisition{at, item, std::move(components)});
}

namespace {

// Contribution of one in-window acquisition: 1/(whole elapsed ticks),
// with the current tick contributing exactly 1.
double tick_contribution(Time at, Time acquired, Time tick) {
    Time elapsed_ticks = (at - acquired) / tick;
    if (elapsed_ticks <= 0) return 1.0;
    return 1.0 / static_cast<double>(elapsed_ticks);
}

}  // namespace

double freshness(const AcquisitionLog& log, ComponentId component, Time at, Time window, Time tick) {
    double sum = 0.0;
    for (const auto& rec : log.records) {
        if (rec.at > at || rec.at < at - window) continue;
        if (std::find(rec.components.begin(), rec.components.end(), component) == rec.components.end())
            continue;
        sum += tick_contribution(at, rec.at, tick);
    }
    return sum;
}

FreshnessVector freshness_vector(const AcquisitionLog& log, Time at, Time window, Time tick) {
    FreshnessVector out;
    for (const auto& rec : log.records) {
        if (rec.at > at || rec.at < at - window) continue;
        double c = tick_contribution(at, rec.at, tick);
        for (ComponentId comp : rec.components) out[comp] += c;
    }
    return out;
}

double logical_strength(const FreshnessVector& a, const FreshnessVector& b) {
    double num = 0.0, den = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        double fa = 0.0, fb = 0.0;
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            fa = (ia++)->second;
        } else if (ia == a.end() || ib->first < ia->first) {
            fb = (ib++)->second;
        } else {
            fa = (ia++)->second;
            fb = (ib++)->second;
        }
        num += std::min(fa, fb);
        den += std::max(fa, fb);
    }
    if (den <= 0.0) return 0.0;
    return num / den;
}

void PairHistory::begin_contact(Time at) {
    if (open_start) return;  // already in contact
    // touching or overlapping the previous interval extends it
    if (!closed.empty() && closed.back().end >= at) {
        open_start = closed.back().start;
        closed.pop_back();
        return;
    }
    open_start = at;
}

void PairHistory::end_contact(Time at) {
    if (!open_start) return;
    if (at > *open_start) closed.push_back(Interval{*open_start, at});
    open_start.reset();
}

bool PairHistory::in_contact(Time at) const {
    if (open_start && *open_start <= at) return true;
    for (auto it = closed.rbegin(); it != closed.rend(); ++it) {
        if (it->start <= at && at < it->end) return true;
        if (it->end <= at) break;
    }
    return false;
}

std::vector<Interval> PairHistory::clipped(Time from, Time to) const {
    std::vector<Interval> out;
    for (const auto& iv : closed) {
        Time s = std::max(iv.start, from);
        Time e = std::min(iv.end, to);
        if (s < e) out.push_back(Interval{s, e});
    }
    if (open_start && *open_start <= to) {
        Time s = std::max(*open_start, from);
        if (s <= to) out.push_back(Interval{s, to});
    }
    return out;
}

bool PairHistory::touched(Time from, Time to) const {
    if (open_start && *open_start <= to) return true;
    for (auto it = closed.rbegin(); it != closed.rend(); ++it) {
        if (it->start <= to && it->end >= from) return true;
        if (it->end < from) break;
    }
    return false;
}

std::pair<NodeId, NodeId> PairHistoryStore::key(NodeId a, NodeId b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void PairHistoryStore::begin_contact(NodeId a, NodeId b, Time at) {
    auto k = key(a, b);
    auto [it, inserted] = pairs_.try_emplace(k);
    it->second.begin_contact(at);
    if (inserted) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
}

void PairHistoryStore::end_contact(NodeId a, NodeId b, Time at) {
    auto it = pairs_.find(key(a, b));
    if (it != pairs_.end()) it->second.end_contact(at);
}

const PairHistory* PairHistoryStore::find(NodeId a, NodeId b) const {
    auto it = pairs_.find(key(a, b));
    return it == pairs_.end() ? nullptr : &it->second;
}

PairHistory& PairHistoryStore::at(NodeId a, NodeId b) { return pairs_[key(a, b)]; }

bool PairHistoryStore::in_contact(NodeId a, NodeId b, Time at) const {
    const PairHistory* h = find(a, b);
    return h && h->in_contact(at);
}

int PairHistoryStore::degree_centrality(NodeId node, Time at, Time window,
                                        const std::vector<NodeId>& exclude) const {
    auto adj = adjacency_.find(node);
    if (adj == adjacency_.end()) return 0;
    Time from = std::max<Time>(0, at - window);
    int count = 0;
    for (NodeId peer : adj->second) {
        if (std::binary_search(exclude.begin(), exclude.end(), peer)) continue;
        const PairHistory* h = find(node, peer);
        if (h && h->touched(from, at)) ++count;
    }
    return count;
}

std::vector<NodeId> PairHistoryStore::peers(NodeId node) const {
    auto adj = adjacency_.find(node);
    if (adj == adjacency_.end()) return {};
    auto out = adj->second;
    std::sort(out.begin(), out.end());
    return out;
}

double physical_strength(const PairHistory& history, Time at, Time window) {
    Time from = std::max<Time>(0, at - window);
    Time span = at - from;
    if (span <= 0) return 0.0;
    auto contacts = history.clipped(from, at);
    double sum = 0.0;
    Time cursor = from;
    for (const auto& iv : contacts) {
        Time gap = iv.start - cursor;
        if (gap > 0) sum += std::log(static_cast<double>(gap) + 1.0);
        sum += static_cast<double>(iv.end - iv.start);
        cursor = iv.end;
    }
    Time trailing = at - cursor;  // zero when in contact at `at`
    if (trailing > 0) sum += std::log(static_cast<double>(trailing) + 1.0);
    return sum / static_cast<double>(span);
}

double social_strength(double wl, double wp, double alpha) {
    return alpha * wl + (1.0 - alpha) * wp;
}

double pair_social_strength(const AcquisitionLog& log_a, const AcquisitionLog& log_b,
                            const PairHistory* history, Time at, const StrengthParams& params) {
    FreshnessVector fa = freshness_vector(log_a, at, params.window, params.freshness_tick);
    FreshnessVector fb = freshness_vector(log_b, at, params.window, params.freshness_tick);
    double wl = logical_strength(fa, fb);
    double wp = history ? physical_strength(*history, at, params.window) : 0.0;
    return social_strength(wl, wp, params.alpha);
}

}  // namespace sndn

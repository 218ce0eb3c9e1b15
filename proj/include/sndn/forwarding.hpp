#pragma once

#include <map>
#include <vector>

#include "sndn/circle.hpp"
#include "sndn/core.hpp"
#include "sndn/naming.hpp"

namespace sndn {

/// Interest routing phase: macro navigates between circles by data
/// directionality, micro searches inside a covering circle by data location.
enum class InterestPhase { macro, micro };

/// Data routing phase; never regresses along centrality -> circle -> hold.
enum class DataPhase { centrality, circle, hold };

const char* to_string(InterestPhase phase);
const char* to_string(DataPhase phase);

/// Single-copy content request in custody of exactly one node.
struct InterestPacket {
    int request = -1;
    InterestName name;
    NodeId consumer = kNoNode;
    Time created = 0;
    Time ttl = 0;
    int hops = 0;           // custody transfers so far
    NodeId custodian = kNoNode;
    InterestPhase phase = InterestPhase::macro;

    bool expired(Time at) const { return at > created + ttl; }
};

/// Single-copy content reply heading back to the consumer.
struct DataPacket {
    int request = -1;
    ItemId item = kNoItem;
    NodeId consumer = kNoNode;
    Time interest_created = 0;
    Time ttl = 0;
    int hops = 0;
    NodeId custodian = kNoNode;
    DataPhase phase = DataPhase::centrality;

    bool expired(Time at) const { return at > interest_created + ttl; }
};

/// Pending-interest record. The consumer field is written once when the
/// entry is installed and never updated along the path.
struct PitEntry {
    int request = -1;
    InterestName interest;
    NodeId consumer = kNoNode;
    Time created = 0;
    Time ttl = 0;
    int centrality_stamp = 0;
};

using PitTable = std::map<int, PitEntry>;

/// FIB with count records: per name component, the distinct peers whose
/// circle name carried it, stamped with the last exchange time. The node's
/// own circle name always contributes one count.
class FibTable {
public:
    /// Merge a peer's advertised circle name at contact time `at`.
    void update_on_encounter(NodeId peer, const std::vector<ComponentId>& peer_circle_name, Time at);

    /// Count record for one component: contributors seen within
    /// [at - window, at], plus one when the component is in the node's own
    /// circle name (`own_circle_name` sorted).
    int count(ComponentId component, Time at, Time window,
              const std::vector<ComponentId>& own_circle_name) const;

    /// Data directionality U_I: minimum count record over the interest's
    /// components; 0 as soon as one component is absent.
    long directionality(const InterestName& interest, Time at, Time window,
                        const std::vector<ComponentId>& own_circle_name) const;

    const std::map<ComponentId, std::map<NodeId, Time>>& contributors() const { return entries_; }

private:
    std::map<ComponentId, std::map<NodeId, Time>> entries_;
};

/// Data location U'_I: minimum neighbour-component-map count over the
/// interest's components; 0 on any absent component.
long data_location(const ComponentCountMap& ncm, const InterestName& interest);

// --- forwarding decisions ----------------------------------------------

enum class InterestAction { keep, transfer, satisfy };
enum class DataAction { keep, transfer, deliver };

/// What a node looks like to an Interest decision at contact time.
struct InterestView {
    long directionality = 0;   // U_I
    long location = 0;         // U'_I
    bool covers = false;       // circle name covers the interest
    bool store_matches = false;
};

struct InterestDecision {
    InterestAction action = InterestAction::keep;
    InterestPhase phase = InterestPhase::macro;
};

/// Two-step Interest routing: satisfy on a matching store; macro phase
/// ascends data directionality and upgrades to micro when the peer's circle
/// name covers the interest; micro phase ascends data location (or jumps to
/// a covering peer when the carrier lost coverage). Ties keep.
InterestDecision interest_forward_decision(const InterestView& carrier, const InterestView& peer,
                                           InterestPhase phase);

/// What a node looks like to a Data decision at contact time.
struct DataView {
    bool is_consumer = false;
    bool nset_has_consumer = false;
    bool circle_has_consumer = false;
    int centrality = 0;
};

struct DataDecision {
    DataAction action = DataAction::keep;
    DataPhase phase = DataPhase::centrality;
};

/// Two-step Data routing: deliver on the consumer; otherwise tighten to a
/// node whose neighbour set (hold) or circle (circle) contains the consumer,
/// else ascend social centrality. Hold keeps until the consumer is met.
DataDecision data_forward_decision(int carrier_centrality, const DataView& peer, DataPhase phase);

/// Phase a freshly created Data packet starts in, given the custodian's own
/// relation to the consumer.
DataPhase initial_data_phase(bool nset_has_consumer, bool circle_has_consumer);

/// Provider-side satisfy: builds the Data packet from the in-record's
/// consumer identity (the packet's consumer equals the PIT entry's).
DataPacket provider_satisfy(const PitEntry& in_record, ItemId item, NodeId provider,
                            DataPhase start_phase);

}  // namespace sndn

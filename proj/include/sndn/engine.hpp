#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sndn/core.hpp"
#include "sndn/naming.hpp"
#include "sndn/social.hpp"
#include "sndn/traces.hpp"

namespace sndn {

enum class SchemeId { sndn, flood, direct, fc_bubblerap, stcr };

const char* to_string(SchemeId scheme);
std::optional<SchemeId> parse_scheme(const std::string& name);

/// Full configuration of one simulation run.
struct SimConfig {
    SchemeId scheme = SchemeId::sndn;
    StrengthParams params;           // alpha, T_p window, circle threshold, freshness tick
    double kappa = 0.25;             // key-component threshold
    Time ttl = 7200;                 // cooperative request TTL
    Time request_interval = 600;     // per-user request cadence
    double direct_serve_prob = 0.5;  // cellular service probability at a base station
    Time warmup = 14400;             // warm-up span from t=0
    Time warmup_ttl = 7200;          // warm-up request service window
    int link_budget = 0;             // max custody transfers per contact; 0 = unlimited
    std::uint64_t seed = 1;
    std::size_t synopsis_bits = 4096;  // advertisement scheme Bloom filter
    int synopsis_hashes = 3;

    void validate() const;  // throws ParseError
};

enum class RequestStatus {
    pending,
    delivered,
    expired,
    direct_served,
    warmup_pending,
    warmup_served,
    warmup_expired,
};

const char* to_string(RequestStatus status);

struct Request {
    int id = -1;
    NodeId consumer = kNoNode;
    InterestName interest;
    ItemId sampled_item = kNoItem;
    Time created = 0;
    RequestStatus status = RequestStatus::pending;
    Time delivered_at = -1;
    int interest_hops = 0;
    int data_hops = 0;
};

// --- packet event log --------------------------------------------------

enum class LogEvent { created, transfer, satisfy, deliver, drop };

const char* to_string(LogEvent e);
std::optional<LogEvent> parse_log_event(const std::string& name);

struct LogRow {
    Time time = 0;
    int request = -1;
    LogEvent event = LogEvent::created;
    NodeId from = kNoNode;
    NodeId to = kNoNode;
    std::string phase;
    int hops = 0;
};

/// Audit trail of every packet event in a run.
struct EventLog {
    std::vector<LogRow> rows;

    void add(Time t, int request, LogEvent e, NodeId from, NodeId to, const std::string& phase,
             int hops);
    std::string to_csv(SchemeId scheme) const;
};

/// Parses an events.csv payload back into rows (for log replays).
std::vector<LogRow> parse_event_csv(const std::string& text);

// --- metrics -------------------------------------------------------------

struct MetricsReport {
    double delivery_ratio = 0.0;  // delivered / (delivered + expired + pending)
    double actual_delay_s = 0.0;  // mean over delivered
    double overhead = 0.0;        // mean relays per delivered request
    int created = 0;              // cooperative requests
    int delivered = 0;
    int expired = 0;
    int pending = 0;
    int direct_served = 0;
    int warmup_served = 0;
    int warmup_expired = 0;
    int skipped = 0;  // regenerated-away request slots
    std::string config_hash;
    std::string trace_hash;
    std::uint64_t seed = 0;
};

/// metrics.csv schema shared by run and sweep outputs.
std::string metrics_csv_header();
std::string metrics_csv_row(const SimConfig& config, const MetricsReport& m);

// --- simulation ----------------------------------------------------------

/// Fixture hook: when non-empty, replaces sampled request generation with
/// this exact cooperative request script (no cellular service rolls).
struct ScriptedRequest {
    Time at = 0;
    NodeId consumer = kNoNode;
    InterestName interest;
};

struct SimInputs {
    const TraceBundle* bundle = nullptr;
    const Catalog* catalog = nullptr;
    const ProfileMap* profiles = nullptr;
    std::vector<ScriptedRequest> scripted;
    /// Content placed in stores at t = 0 (counts as cellular acquisition).
    std::vector<std::pair<NodeId, ItemId>> preloaded;
};

struct SimResult {
    MetricsReport metrics;
    std::vector<Request> requests;
    EventLog log;
};

/// Deterministic discrete-event run over the contact trace. Identical
/// (config, inputs) produce identical results byte for byte.
SimResult run_simulation(const SimConfig& config, const SimInputs& inputs);

/// Metric aggregation over finished requests (also used for log replays).
MetricsReport compute_metrics(const std::vector<Request>& requests);

/// Stable hash over the run inputs, recorded in run metadata.
std::string trace_input_hash(const SimInputs& inputs);

}  // namespace sndn

#include "sndn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <tuple>

namespace sndn {

namespace {

auto sort_key(const SweepRow& row) {
    return std::make_tuple(std::string(to_string(row.config.scheme)), row.config.ttl,
                           row.config.params.alpha, row.config.params.window, row.config.kappa,
                           row.config.seed);
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec, const SimInputs& inputs, int parallelism) {
    std::vector<SimConfig> configs = spec.expand();
    SweepResult result;
    result.rows.resize(configs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            SweepRow& row = result.rows[i];
            row.config = configs[i];
            try {
                SimResult r = run_simulation(configs[i], inputs);
                row.metrics = r.metrics;
                row.metrics.config_hash = config_hash(configs[i]);
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
        }
    };

    int threads = std::max(1, parallelism);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::sort(result.rows.begin(), result.rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return sort_key(a) < sort_key(b); });
    for (const auto& r : result.rows) result.any_failed = result.any_failed || r.failed;
    return result;
}

std::string SweepResult::to_csv() const {
    std::ostringstream out;
    out << metrics_csv_header() << ",status,config_hash\n";
    for (const auto& row : rows) {
        if (row.failed) {
            SimConfig cfg = row.config;
            MetricsReport empty;
            empty.seed = cfg.seed;
            out << metrics_csv_row(cfg, empty) << ",failed:" << row.error << ","
                << config_hash(cfg) << "\n";
        } else {
            out << metrics_csv_row(row.config, row.metrics) << ",ok," << row.metrics.config_hash
                << "\n";
        }
    }
    // aggregate rows: mean over seeds per (scheme, ttl, alpha, tp, kappa)
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        double ratio = 0, delay = 0, overhead = 0;
        double delivered = 0, expired = 0, direct = 0;
        int ok = 0;
        auto same_combo = [&](const SweepRow& a, const SweepRow& b) {
            return a.config.scheme == b.config.scheme && a.config.ttl == b.config.ttl &&
                   a.config.params.alpha == b.config.params.alpha &&
                   a.config.params.window == b.config.params.window &&
                   a.config.kappa == b.config.kappa;
        };
        while (j < rows.size() && same_combo(rows[i], rows[j])) {
            if (!rows[j].failed) {
                ratio += rows[j].metrics.delivery_ratio;
                delay += rows[j].metrics.actual_delay_s;
                overhead += rows[j].metrics.overhead;
                delivered += rows[j].metrics.delivered;
                expired += rows[j].metrics.expired;
                direct += rows[j].metrics.direct_served;
                ++ok;
            }
            ++j;
        }
        const SimConfig& cfg = rows[i].config;
        std::ostringstream agg;
        agg << to_string(cfg.scheme) << "," << cfg.ttl << "," << format_compact(cfg.params.alpha)
            << "," << cfg.params.window << "," << format_compact(cfg.kappa) << ",-1,";
        if (ok > 0) {
            agg << format_double(ratio / ok, 6) << "," << format_double(delay / ok, 3) << ","
                << format_double(overhead / ok, 6) << "," << format_double(delivered / ok, 2)
                << "," << format_double(expired / ok, 2) << "," << format_double(direct / ok, 2);
        } else {
            agg << "0.000000,0.000,0.000000,0,0,0";
        }
        agg << ",aggregate,-";
        out << agg.str() << "\n";
        i = j;
    }
    return out.str();
}

}  // namespace sndn

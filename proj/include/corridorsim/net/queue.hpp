#pragma once

#include <array>
#include <vector>

#include "corridorsim/net/channel.hpp"

namespace csim::net {

struct ChannelStats {
    long sent = 0;
    long delivered = 0;
    long dropped = 0;
};

struct LatencyLogRow {
    int msg_type = 0;  // wire msg_type
    int src = 0;
    int dst = 0;
    double tx_time = 0.0;
    double rx_time = 0.0;
    ChannelKind channel = ChannelKind::Uplink4g;
};

// Owns all in-flight envelopes. Deliveries come out in (rx_time, src, seq)
// order; dropped envelopes never surface but are accounted per channel.
class EventQueue {
public:
    // Returns the assigned sequence number.
    long submit(Envelope env);

    // All envelopes with rx_time <= t, removed from the queue, total order
    // (rx_time, src, seq).
    std::vector<Envelope> poll_deliveries(double t);

    std::size_t pending() const { return pending_.size(); }
    const ChannelStats& stats(ChannelKind k) const {
        return stats_[static_cast<std::size_t>(k)];
    }
    const std::vector<LatencyLogRow>& latency_log() const { return log_; }
    void clear_log() { log_.clear(); }

private:
    std::vector<Envelope> pending_;
    std::array<ChannelStats, 3> stats_{};
    std::vector<LatencyLogRow> log_;
    long next_seq_ = 0;
};

// CSV columns: msg_type,src,dst,tx_time,rx_time,channel
std::string latency_log_csv(const std::vector<LatencyLogRow>& rows);

}  // namespace csim::net

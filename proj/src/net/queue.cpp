#include "corridorsim/net/queue.hpp"

#include <algorithm>

#include "corridorsim/common/csv.hpp"
#include "corridorsim/net/wire.hpp"

namespace csim::net {

long EventQueue::submit(Envelope env) {
    env.seq = next_seq_++;
    auto& st = stats_[static_cast<std::size_t>(env.channel)];
    st.sent += 1;
    if (env.dropped) {
        st.dropped += 1;
    } else {
        pending_.push_back(std::move(env));
    }
    return next_seq_ - 1;
}

std::vector<Envelope> EventQueue::poll_deliveries(double t) {
    std::vector<Envelope> due;
    auto it = std::stable_partition(pending_.begin(), pending_.end(),
                                    [t](const Envelope& e) { return e.rx_time > t; });
    due.assign(std::make_move_iterator(it), std::make_move_iterator(pending_.end()));
    pending_.erase(it, pending_.end());

    std::sort(due.begin(), due.end(), [](const Envelope& a, const Envelope& b) {
        if (a.rx_time != b.rx_time) return a.rx_time < b.rx_time;
        if (a.src != b.src) return a.src < b.src;
        return a.seq < b.seq;
    });
    for (const auto& env : due) {
        stats_[static_cast<std::size_t>(env.channel)].delivered += 1;
        log_.push_back({static_cast<int>(msg_type_of(env.payload)), env.src, env.dst, env.tx_time,
                        env.rx_time, env.channel});
    }
    return due;
}

std::string latency_log_csv(const std::vector<LatencyLogRow>& rows) {
    std::string out = "msg_type,src,dst,tx_time,rx_time,channel\n";
    for (const auto& r : rows) {
        out += std::to_string(r.msg_type) + "," + std::to_string(r.src) + "," +
               std::to_string(r.dst) + "," + csim::fmt_f6(r.tx_time) + "," +
               csim::fmt_f6(r.rx_time) + "," + to_string(r.channel) + "\n";
    }
    return out;
}

}  // namespace csim::net

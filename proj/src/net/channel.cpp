#include "corridorsim/net/channel.hpp"

#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::net {

const char* to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::Uplink4g: return "uplink4g";
        case ChannelKind::Cv2x: return "cv2x";
        case ChannelKind::Itsg5: return "itsg5";
    }
    return "uplink4g";
}

void ChannelModel::validate() const {
    if (latency_base < 0.0) throw ConfigError("channel latency must be nonnegative");
    if (loss_prob < 0.0 || loss_prob >= 1.0) throw ConfigError("loss probability must be in [0, 1)");
    if (kind == ChannelKind::Itsg5 && !(range > 0.0))
        throw ConfigError("itsg5 channel requires a finite positive range");
}

double draw_jitter(double scale, Rng& rng) {
    if (scale <= 0.0) return 0.0;
    constexpr double sigma = 0.5;
    const double mu = std::log(scale) - 0.5 * sigma * sigma;  // mean = scale
    std::lognormal_distribution<double> dist(mu, sigma);
    return std::min(dist(rng), 10.0 * scale);
}

Envelope transmit(const ChannelModel& channel, Payload payload, int src, int dst, double t,
                  Rng& rng) {
    Envelope env;
    env.payload = std::move(payload);
    env.src = src;
    env.dst = dst;
    env.tx_time = t;
    env.channel = channel.kind;

    if (channel.loss_prob > 0.0) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        if (u01(rng) < channel.loss_prob) {
            env.dropped = true;
            return env;
        }
    }
    env.rx_time = t + channel.latency_base + draw_jitter(channel.jitter, rng);
    return env;
}

}  // namespace csim::net

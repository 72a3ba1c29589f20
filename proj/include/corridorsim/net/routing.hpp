#pragma once

#include <vector>

#include "corridorsim/net/channel.hpp"
#include "corridorsim/net/queue.hpp"
#include "corridorsim/stations/types.hpp"

namespace csim::net {

enum class DownlinkMode : std::uint8_t { Cv2x = 0, Itsg5 = 1 };

struct Subscriber {
    int vehicle_id = 0;
    double x = 0.0;  // current position, for RSU range checks
    double y = 0.0;
};

struct DownlinkChannels {
    ChannelModel cv2x{ChannelKind::Cv2x, 0.05, 0.0, 0.0, 0.0};
    ChannelModel itsg5_hop{ChannelKind::Itsg5, 0.02, 0.0, 0.0, 300.0};    // server -> station
    double itsg5_broadcast_latency = 0.01;  // s, RSU air time
};

// Distributes one twin frame to subscribed vehicles.
//   cv2x:  one direct envelope per subscriber from the central server.
//   itsg5: a server->station hop per station, then an RSU broadcast received
//          only by subscribers within `range` of some station (nearest one).
std::vector<Envelope> route_downlink(const fusion::TwinFrame& frame, DownlinkMode mode,
                                     const DownlinkChannels& channels,
                                     const std::vector<stations::StationConfig>& stations,
                                     const std::vector<Subscriber>& subscribers, double t,
                                     Rng& rng);

}  // namespace csim::net

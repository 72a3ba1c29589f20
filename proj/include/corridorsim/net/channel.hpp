#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "corridorsim/common/rng.hpp"
#include "corridorsim/copilot/spat.hpp"
#include "corridorsim/fusion/types.hpp"
#include "corridorsim/stations/types.hpp"

namespace csim::net {

enum class ChannelKind : std::uint8_t { Uplink4g = 0, Cv2x = 1, Itsg5 = 2 };

const char* to_string(ChannelKind k);

struct ChannelModel {
    ChannelKind kind = ChannelKind::Uplink4g;
    double latency_base = 0.05;  // s
    double jitter = 0.0;         // s, mean of the nonnegative jitter draw
    double loss_prob = 0.0;      // [0, 1)
    double range = 0.0;          // m, RSU broadcast reach (itsg5 only)

    void validate() const;
};

using Payload = std::variant<stations::ObjectListMessage, copilot::SpatForecast, fusion::TwinFrame>;

// Address space: one server, stations, vehicles.
constexpr int kAddrServer = 0;
constexpr int kAddrStationBase = 1'000;
constexpr int kAddrVehicleBase = 10'000'000;
inline int addr_station(int station_id) { return kAddrStationBase + station_id; }
inline int addr_vehicle(int vehicle_id) { return kAddrVehicleBase + vehicle_id; }

struct Envelope {
    Payload payload;
    int src = 0;
    int dst = 0;
    double tx_time = 0.0;
    double rx_time = 0.0;  // meaningful only when !dropped
    bool dropped = false;
    ChannelKind channel = ChannelKind::Uplink4g;
    long seq = 0;  // assigned by the event queue on submission
};

// Nonnegative jitter draw with mean equal to the configured scale
// (lognormal, sigma_log = 0.5, truncated at 10x the scale).
double draw_jitter(double scale, Rng& rng);

// One channel hop. rx_time = t + latency_base + jitter; lost with loss_prob.
Envelope transmit(const ChannelModel& channel, Payload payload, int src, int dst, double t,
                  Rng& rng);

}  // namespace csim::net

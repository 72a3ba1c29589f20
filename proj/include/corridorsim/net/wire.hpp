#pragma once

#include <cstdint>
#include <vector>

#include "corridorsim/net/channel.hpp"

namespace csim::net {

// Little-endian wire schema:
//   header: msg_type u8, src u16, frame_time_ms u32, count u16  (9 bytes)
//   body:   count 64-byte records
enum class MsgType : std::uint8_t { ObjectList = 1, Spat = 2, Twin = 3 };

constexpr std::size_t kWireHeaderBytes = 9;
constexpr std::size_t kWireRecordBytes = 64;

MsgType msg_type_of(const Payload& payload);

std::vector<std::uint8_t> encode(const Payload& payload);
Payload decode(const std::vector<std::uint8_t>& bytes);

}  // namespace csim::net

#include "corridorsim/net/wire.hpp"

#include <cmath>
#include <cstring>

#include "corridorsim/common/error.hpp"

namespace csim::net {

namespace {

template <typename T>
void put(std::vector<std::uint8_t>& out, std::size_t offset, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::memcpy(out.data() + offset, &value, sizeof(T));  // host is little-endian
}

template <typename T>
T get(const std::vector<std::uint8_t>& in, std::size_t offset) {
    T value;
    std::memcpy(&value, in.data() + offset, sizeof(T));
    return value;
}

std::uint32_t to_ms(double t) { return static_cast<std::uint32_t>(std::llround(t * 1000.0)); }

void write_header(std::vector<std::uint8_t>& out, MsgType type, int src, double frame_time,
                  std::size_t count) {
    put<std::uint8_t>(out, 0, static_cast<std::uint8_t>(type));
    put<std::uint16_t>(out, 1, static_cast<std::uint16_t>(src));
    put<std::uint32_t>(out, 3, to_ms(frame_time));
    put<std::uint16_t>(out, 7, static_cast<std::uint16_t>(count));
}

}  // namespace

MsgType msg_type_of(const Payload& payload) {
    if (std::holds_alternative<stations::ObjectListMessage>(payload)) return MsgType::ObjectList;
    if (std::holds_alternative<copilot::SpatForecast>(payload)) return MsgType::Spat;
    return MsgType::Twin;
}

std::vector<std::uint8_t> encode(const Payload& payload) {
    const MsgType type = msg_type_of(payload);
    std::size_t count = 0;
    if (type == MsgType::ObjectList) count = std::get<stations::ObjectListMessage>(payload).objects.size();
    if (type == MsgType::Spat) count = std::get<copilot::SpatForecast>(payload).phases.size();
    if (type == MsgType::Twin) count = std::get<fusion::TwinFrame>(payload).tracks.size();

    std::vector<std::uint8_t> out(kWireHeaderBytes + kWireRecordBytes * count, 0);

    switch (type) {
        case MsgType::ObjectList: {
            const auto& msg = std::get<stations::ObjectListMessage>(payload);
            write_header(out, type, msg.station_id, msg.frame_time, count);
            std::size_t off = kWireHeaderBytes;
            for (const auto& det : msg.objects) {
                put<std::uint32_t>(out, off + 0, static_cast<std::uint32_t>(det.local_id));
                put<std::uint8_t>(out, off + 4, static_cast<std::uint8_t>(det.cls));
                put<std::uint8_t>(out, off + 5, static_cast<std::uint8_t>(det.modality));
                put<double>(out, off + 8, det.x);
                put<double>(out, off + 16, det.y);
                put<double>(out, off + 24, det.vx);
                put<double>(out, off + 32, det.vy);
                put<float>(out, off + 40, static_cast<float>(det.cov[0]));
                put<float>(out, off + 44, static_cast<float>(det.cov[1]));
                put<float>(out, off + 48, static_cast<float>(det.cov[2]));
                put<float>(out, off + 52, static_cast<float>(det.confidence));
                off += kWireRecordBytes;
            }
            break;
        }
        case MsgType::Spat: {
            const auto& msg = std::get<copilot::SpatForecast>(payload);
            write_header(out, type, msg.signal_id, msg.msg_time, count);
            std::size_t off = kWireHeaderBytes;
            for (const auto& ph : msg.phases) {
                put<std::uint8_t>(out, off + 0, static_cast<std::uint8_t>(ph.state));
                put<double>(out, off + 8, ph.start);
                put<double>(out, off + 16, ph.end);
                put<float>(out, off + 24, static_cast<float>(ph.confidence));
                off += kWireRecordBytes;
            }
            break;
        }
        case MsgType::Twin: {
            const auto& msg = std::get<fusion::TwinFrame>(payload);
            write_header(out, type, 0, msg.frame_time, count);
            std::size_t off = kWireHeaderBytes;
            for (const auto& tr : msg.tracks) {
                put<std::uint32_t>(out, off + 0, static_cast<std::uint32_t>(tr.global_id));
                put<std::uint8_t>(out, off + 4, static_cast<std::uint8_t>(tr.cls));
                put<std::uint8_t>(out, off + 5, static_cast<std::uint8_t>(tr.contributors));
                put<double>(out, off + 8, tr.x);
                put<double>(out, off + 16, tr.y);
                put<double>(out, off + 24, tr.vx);
                put<double>(out, off + 32, tr.vy);
                put<double>(out, off + 56, tr.quality);
                off += kWireRecordBytes;
            }
            break;
        }
    }
    return out;
}

Payload decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kWireHeaderBytes) throw IoError("wire message shorter than header");
    const auto type = static_cast<MsgType>(get<std::uint8_t>(bytes, 0));
    const int src = get<std::uint16_t>(bytes, 1);
    const double frame_time = get<std::uint32_t>(bytes, 3) / 1000.0;
    const std::size_t count = get<std::uint16_t>(bytes, 7);
    if (bytes.size() != kWireHeaderBytes + kWireRecordBytes * count)
        throw IoError("wire message length mismatch");

    switch (type) {
        case MsgType::ObjectList: {
            stations::ObjectListMessage msg;
            msg.station_id = src;
            msg.frame_time = frame_time;
            std::size_t off = kWireHeaderBytes;
            for (std::size_t i = 0; i < count; ++i) {
                stations::DetectedObject det;
                det.station_id = src;
                det.local_id = static_cast<int>(get<std::uint32_t>(bytes, off + 0));
                det.cls = static_cast<world::VehicleClass>(get<std::uint8_t>(bytes, off + 4));
                det.modality = static_cast<stations::Modality>(get<std::uint8_t>(bytes, off + 5));
                det.x = get<double>(bytes, off + 8);
                det.y = get<double>(bytes, off + 16);
                det.vx = get<double>(bytes, off + 24);
                det.vy = get<double>(bytes, off + 32);
                det.cov = {get<float>(bytes, off + 40), get<float>(bytes, off + 44),
                           get<float>(bytes, off + 48)};
                det.confidence = get<float>(bytes, off + 52);
                msg.objects.push_back(det);
                off += kWireRecordBytes;
            }
            return msg;
        }
        case MsgType::Spat: {
            copilot::SpatForecast msg;
            msg.signal_id = src;
            msg.msg_time = frame_time;
            std::size_t off = kWireHeaderBytes;
            for (std::size_t i = 0; i < count; ++i) {
                copilot::SpatPhase ph;
                ph.state = static_cast<world::SignalState>(get<std::uint8_t>(bytes, off + 0));
                ph.start = get<double>(bytes, off + 8);
                ph.end = get<double>(bytes, off + 16);
                ph.confidence = get<float>(bytes, off + 24);
                msg.phases.push_back(ph);
                off += kWireRecordBytes;
            }
            return msg;
        }
        case MsgType::Twin: {
            fusion::TwinFrame msg;
            msg.frame_time = frame_time;
            std::size_t off = kWireHeaderBytes;
            for (std::size_t i = 0; i < count; ++i) {
                fusion::TwinEntry tr;
                tr.global_id = static_cast<int>(get<std::uint32_t>(bytes, off + 0));
                tr.cls = static_cast<world::VehicleClass>(get<std::uint8_t>(bytes, off + 4));
                tr.contributors = get<std::uint8_t>(bytes, off + 5);
                tr.x = get<double>(bytes, off + 8);
                tr.y = get<double>(bytes, off + 16);
                tr.vx = get<double>(bytes, off + 24);
                tr.vy = get<double>(bytes, off + 32);
                tr.quality = get<double>(bytes, off + 56);
                msg.tracks.push_back(tr);
                off += kWireRecordBytes;
            }
            return msg;
        }
    }
    throw IoError("unknown wire msg_type");
}

}  // namespace csim::net

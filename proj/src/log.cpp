#include "dynsim/log.hpp"

#include <fmt/format.h>

#include "dynsim/error.hpp"

namespace dynsim {

uint16_t Log::add_channel(const std::string& name, uint32_t rate_hz,
                          const std::string& payload_type) {
  for (const auto& c : channels_)
    if (c.name == name)
      throw InvalidInput(fmt::format("channel '{}' already exists", name));
  ChannelMeta meta;
  meta.id = static_cast<uint16_t>(channels_.size() + 1);  // 0 reserved
  meta.name = name;
  meta.rate_hz = rate_hz;
  meta.payload_type = payload_type;
  channels_.push_back(meta);
  return meta.id;
}

void Log::append(LogRecord record) {
  const uint64_t expected = next_index_.count(record.channel) ? next_index_[record.channel] : 0;
  if (record.index != expected)
    throw InvalidInput(fmt::format(
        "append on channel {}: index {} violates contiguity (expected {})",
        record.channel, record.index, expected));
  next_index_[record.channel] = expected + 1;
  records_.push_back(std::move(record));
}

const ChannelMeta* Log::find_channel(const std::string& name) const {
  for (const auto& c : channels_)
    if (c.name == name) return &c;
  return nullptr;
}

const ChannelMeta& Log::channel_by_id(uint16_t id) const {
  for (const auto& c : channels_)
    if (c.id == id) return c;
  throw InvalidInput(fmt::format("no channel with id {}", id));
}

uint64_t Log::count(uint16_t channel_id) const {
  uint64_t n = 0;
  for (const auto& r : records_)
    if (r.channel == channel_id) ++n;
  return n;
}

uint64_t Log::count(uint16_t channel_id, bool pre_start) const {
  uint64_t n = 0;
  for (const auto& r : records_)
    if (r.channel == channel_id && bool(r.flags & kFlagPreStart) == pre_start) ++n;
  return n;
}

std::vector<const LogRecord*> Log::channel_records(uint16_t channel_id) const {
  std::vector<const LogRecord*> out;
  for (const auto& r : records_)
    if (r.channel == channel_id) out.push_back(&r);
  return out;
}

void Log::set_channels(std::vector<ChannelMeta> channels) {
  channels_ = std::move(channels);
}

void Log::rebuild_index_state() {
  next_index_.clear();
  for (const auto& r : records_) {
    auto& next = next_index_[r.channel];
    if (r.index != next)
      throw InvalidInput(fmt::format("record stream on channel {} has an index gap at {}",
                                     r.channel, r.index));
    ++next;
  }
}

bool logs_equal(const Log& a, const Log& b) {
  if (a.channels().size() != b.channels().size()) return false;
  for (size_t i = 0; i < a.channels().size(); ++i) {
    const auto& ca = a.channels()[i];
    const auto& cb = b.channels()[i];
    if (ca.id != cb.id || ca.name != cb.name || ca.rate_hz != cb.rate_hz ||
        ca.payload_type != cb.payload_type)
      return false;
  }
  return a.records() == b.records();
}

bool channel_equal(const Log& a, const Log& b, const std::string& name) {
  const ChannelMeta* ca = a.find_channel(name);
  const ChannelMeta* cb = b.find_channel(name);
  if (!ca || !cb) return false;
  const auto ra = a.channel_records(ca->id);
  const auto rb = b.channel_records(cb->id);
  if (ra.size() != rb.size()) return false;
  for (size_t i = 0; i < ra.size(); ++i) {
    if (ra[i]->flags != rb[i]->flags || ra[i]->index != rb[i]->index ||
        ra[i]->timestamp_ns != rb[i]->timestamp_ns || ra[i]->payload != rb[i]->payload)
      return false;
  }
  return true;
}

}  // namespace dynsim

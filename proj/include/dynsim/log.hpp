#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dynsim {

/// Record flag bits.
inline constexpr uint8_t kFlagPreStart = 0x01;  // bootstrap-period record

struct ChannelMeta {
  uint16_t id = 0;
  std::string name;
  uint32_t rate_hz = 0;  // nominal publish rate; 0 = one-shot
  std::string payload_type;
};

struct LogRecord {
  uint16_t channel = 0;
  uint8_t flags = 0;
  uint64_t index = 0;         // per-channel, contiguous from 0
  uint64_t timestamp_ns = 0;
  std::vector<uint8_t> payload;

  bool operator==(const LogRecord&) const = default;
};

/// Append-only in-memory experiment log. Per-channel indices must be
/// contiguous from 0; everything else is just stored.
class Log {
 public:
  uint16_t add_channel(const std::string& name, uint32_t rate_hz,
                       const std::string& payload_type);

  void append(LogRecord record);  // throws InvalidInput on an index gap

  const std::vector<ChannelMeta>& channels() const { return channels_; }
  const std::vector<LogRecord>& records() const { return records_; }

  const ChannelMeta* find_channel(const std::string& name) const;
  const ChannelMeta& channel_by_id(uint16_t id) const;

  uint64_t count(uint16_t channel_id) const;
  uint64_t count(uint16_t channel_id, bool pre_start) const;
  std::vector<const LogRecord*> channel_records(uint16_t channel_id) const;

  /// Used by container/repair code that rebuilds logs wholesale.
  void set_channels(std::vector<ChannelMeta> channels);
  std::vector<LogRecord>& mutable_records() { return records_; }
  void rebuild_index_state();

 private:
  std::vector<ChannelMeta> channels_;
  std::vector<LogRecord> records_;
  std::unordered_map<uint16_t, uint64_t> next_index_;
};

/// True when both logs hold identical channel tables and identical record
/// sequences (order included).
bool logs_equal(const Log& a, const Log& b);

/// True when the named channel carries identical record streams in both
/// logs (indices, flags, timestamps, payloads).
bool channel_equal(const Log& a, const Log& b, const std::string& name);

}  // namespace dynsim

#include "dynsim/log_repair.hpp"

#include <fmt/format.h>

#include <cstring>
#include <set>

#include "dynsim/error.hpp"

namespace dynsim {

uint64_t start_timestamp(const Log& log) {
  const ChannelMeta* start = log.find_channel(kStartChannel);
  if (!start) throw InvalidInput("log has no start channel");
  const auto records = log.channel_records(start->id);
  if (records.size() != 1)
    throw InvalidInput(fmt::format("start channel must hold exactly one record, found {}",
                                   records.size()));
  return records[0]->timestamp_ns;
}

Log reindex(const Log& log, const std::vector<std::string>& channel_names,
            std::optional<uint64_t> t0_ns) {
  const uint64_t t0 = t0_ns ? *t0_ns : start_timestamp(log);
  std::set<uint16_t> selected;
  for (const auto& name : channel_names) {
    const ChannelMeta* meta = log.find_channel(name);
    if (!meta) throw InvalidInput(fmt::format("reindex: unknown channel '{}'", name));
    if (meta->rate_hz == 0)
      throw InvalidInput(fmt::format("reindex: channel '{}' has no nominal rate", name));
    selected.insert(meta->id);
  }

  Log out;
  out.set_channels(log.channels());
  for (const auto& r : log.records()) {
    LogRecord copy = r;
    if (selected.count(r.channel)) {
      const uint32_t rate = log.channel_by_id(r.channel).rate_hz;
      copy.timestamp_ns = t0 + r.index * 1'000'000'000ull / rate;
    }
    out.mutable_records().push_back(std::move(copy));
  }
  out.rebuild_index_state();
  return out;
}

Log trim(const Log& log, uint64_t duration_ns) {
  const uint64_t t0 = start_timestamp(log);
  const uint64_t t1 = t0 + duration_ns;

  Log out;
  out.set_channels(log.channels());
  std::unordered_map<uint16_t, uint64_t> next_index;
  for (const auto& r : log.records()) {
    if (r.timestamp_ns < t0 || r.timestamp_ns > t1) continue;
    LogRecord copy = r;
    copy.index = next_index[r.channel]++;
    out.mutable_records().push_back(std::move(copy));
  }
  out.rebuild_index_state();
  return out;
}

void export_channel_csv(const Log& log, const std::string& channel_name, std::ostream& out) {
  const ChannelMeta* meta = log.find_channel(channel_name);
  if (!meta) throw InvalidInput(fmt::format("csv export: unknown channel '{}'", channel_name));

  size_t f64_cols = 0;
  bool u64_payload = false;
  if (meta->payload_type.rfind("f64x", 0) == 0)
    f64_cols = std::stoul(meta->payload_type.substr(4));
  else if (meta->payload_type == "u64")
    u64_payload = true;

  out << "index,timestamp_ns,flags";
  if (u64_payload) out << ",value";
  for (size_t i = 0; i < f64_cols; ++i) out << ",v" << i;
  if (!u64_payload && f64_cols == 0) out << ",payload_bytes";
  out << "\n";

  for (const auto* r : log.channel_records(meta->id)) {
    out << r->index << "," << r->timestamp_ns << "," << static_cast<int>(r->flags);
    if (u64_payload && r->payload.size() >= 8) {
      uint64_t v;
      std::memcpy(&v, r->payload.data(), 8);
      out << "," << v;
    } else if (f64_cols > 0 && r->payload.size() >= 8 * f64_cols) {
      for (size_t i = 0; i < f64_cols; ++i) {
        double v;
        std::memcpy(&v, r->payload.data() + 8 * i, 8);
        out << "," << fmt::format("{:.17g}", v);
      }
    } else if (!u64_payload && f64_cols == 0) {
      out << "," << r->payload.size();
    }
    out << "\n";
  }
}

}  // namespace dynsim

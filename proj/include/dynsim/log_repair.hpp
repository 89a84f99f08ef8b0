#pragma once

#include <optional>
#include <ostream>

#include "dynsim/log.hpp"

namespace dynsim {

/// Name of the one-shot experiment start channel.
inline constexpr const char* kStartChannel = "start";

/// Rewrites timestamps on the selected channels to
///   t0 + floor(index * 1e9 / rate)
/// using each channel's nominal rate. When t0 is not given it is taken
/// from the single record on the start channel. Payloads untouched;
/// idempotent. Errors: zero-rate channel, unknown channel, missing start
/// record when t0 is defaulted.
Log reindex(const Log& log, const std::vector<std::string>& channel_names,
            std::optional<uint64_t> t0_ns = std::nullopt);

/// Keeps records with timestamp in [t_start, t_start + duration] where
/// t_start is the single start-channel record's timestamp; per-channel
/// indices are re-based to 0. Errors when the start channel holds zero or
/// multiple records.
Log trim(const Log& log, uint64_t duration_ns);

/// One CSV row per record: index, timestamp_ns, flags, then decoded f64
/// columns for "f64xN"-typed payloads (u64 for "u64"; payload size
/// otherwise).
void export_channel_csv(const Log& log, const std::string& channel_name, std::ostream& out);

/// Timestamp of the single start record.
uint64_t start_timestamp(const Log& log);  // throws unless exactly one record

}  // namespace dynsim

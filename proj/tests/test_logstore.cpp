#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <sstream>

#include "dynsim/error.hpp"
#include "dynsim/log.hpp"
#include "dynsim/log_container.hpp"
#include "dynsim/log_repair.hpp"
#include "dynsim/rng.hpp"

using namespace dynsim;

namespace {

std::vector<uint8_t> u64_payload(uint64_t v) {
  std::vector<uint8_t> p(8);
  std::memcpy(p.data(), &v, 8);
  return p;
}

/// Miniature experiment log shaped like the simulator's output: clock @240,
/// imu @240, depth @30, one start record after a 1 s bootstrap.
Log synthetic_run(double seconds) {
  Log log;
  const uint16_t clock_id = log.add_channel("clock", 240, "u64");
  const uint16_t imu_id = log.add_channel("imu", 240, "f64x6");
  const uint16_t depth_id = log.add_channel("depth", 30, "f64x1");
  const uint16_t start_id = log.add_channel(kStartChannel, 0, "u64");

  const uint64_t steps = static_cast<uint64_t>((1.0 + seconds) * 240);
  uint64_t imu_i = 0, clock_i = 0, depth_i = 0;
  for (uint64_t k = 0; k < steps; ++k) {
    const uint64_t ts = k * 1'000'000'000ull / 240;
    const uint8_t flags = k < 240 ? kFlagPreStart : 0;
    log.append({clock_id, flags, clock_i++, ts, u64_payload(k)});
    log.append({imu_id, flags, imu_i++, ts, std::vector<uint8_t>(48, 0)});
    if (k == 240) log.append({start_id, 0, 0, ts, u64_payload(k)});
    if (k % 8 == 0) log.append({depth_id, flags, depth_i++, ts, std::vector<uint8_t>(8, 1)});
  }
  return log;
}

}  // namespace

TEST_CASE("append: index contiguity enforced per channel") {
  Log log;
  const uint16_t ch = log.add_channel("a", 10, "u64");
  log.append({ch, 0, 0, 100, {}});
  log.append({ch, 0, 1, 200, {}});
  log.append({ch, 0, 2, 300, {}});
  log.append({ch, 0, 3, 400, {}});
  LogRecord bad{ch, 0, 5, 500, {}};
  CHECK_THROWS_AS(log.append(bad), InvalidInput);
  // a second channel starts again at 0
  const uint16_t ch2 = log.add_channel("b", 10, "u64");
  log.append({ch2, 0, 0, 100, {}});
}

TEST_CASE("container: one million records round-trip exactly") {
  Log log;
  const uint16_t a = log.add_channel("a", 240, "u64");
  const uint16_t b = log.add_channel("b", 120, "u64");
  Rng rng(5);
  uint64_t ia = 0, ib = 0;
  for (uint64_t k = 0; k < 1'000'000; ++k) {
    const bool use_a = rng.uniform() < 0.7;
    LogRecord r;
    r.channel = use_a ? a : b;
    r.index = use_a ? ia++ : ib++;
    r.timestamp_ns = k;
    r.payload = u64_payload(rng.next_u64());
    log.append(std::move(r));
  }
  const auto bytes = serialize_log(log, 1 << 16);
  const Log back = deserialize_log(bytes);
  CHECK(logs_equal(log, back));
  CHECK(serialize_log(back, 1 << 16) == bytes);
}

TEST_CASE("container: CRC catches corruption") {
  Log log;
  const uint16_t ch = log.add_channel("a", 10, "u64");
  for (uint64_t i = 0; i < 50; ++i) log.append({ch, 0, i, i * 10, u64_payload(i)});
  auto bytes = serialize_log(log);
  bytes[bytes.size() / 2] ^= 0xFF;  // flip a record byte
  CHECK_THROWS_AS(deserialize_log(bytes), ParseError);
}

TEST_CASE("reindex: floor(index/rate) arithmetic") {
  Log log;
  const uint16_t ch = log.add_channel("imu", 240, "f64x6");
  log.add_channel(kStartChannel, 0, "u64");
  for (uint64_t i = 0; i < 10; ++i) log.append({ch, 0, i, 999999, {}});
  const Log fixed = reindex(log, {"imu"}, uint64_t{0});
  CHECK(fixed.channel_records(ch)[5]->timestamp_ns == 20'833'333);
  CHECK(fixed.channel_records(ch)[0]->timestamp_ns == 0);
}

TEST_CASE("reindex: idempotent and payload-preserving") {
  Log log = synthetic_run(2.0);
  const Log once = reindex(log, {"imu", "clock"}, uint64_t{0});
  const Log twice = reindex(once, {"imu", "clock"}, uint64_t{0});
  CHECK(logs_equal(once, twice));
  CHECK(logs_equal(log, once));  // stamps were already exact
}

TEST_CASE("reindex: repairs randomly perturbed timestamps byte-for-byte") {
  const Log clean = trim(synthetic_run(5.0), 5'000'000'000ull);
  Log dirty;
  dirty.set_channels(clean.channels());
  Rng rng(31);
  const uint16_t imu_id = clean.find_channel("imu")->id;
  for (const auto& r : clean.records()) {
    LogRecord copy = r;
    if (r.channel == imu_id && rng.uniform() < 0.01)
      copy.timestamp_ns += rng.uniform_int(int64_t{1}, int64_t{4'000'000});
    dirty.mutable_records().push_back(std::move(copy));
  }
  dirty.rebuild_index_state();
  CHECK_FALSE(logs_equal(clean, dirty));
  const Log repaired = reindex(dirty, {"imu"});  // t0 from the start record
  CHECK(serialize_log(repaired) == serialize_log(clean));
}

TEST_CASE("reindex: errors") {
  Log log = synthetic_run(1.0);
  CHECK_THROWS_AS(reindex(log, {"nope"}, uint64_t{0}), InvalidInput);
  CHECK_THROWS_AS(reindex(log, {kStartChannel}, uint64_t{0}), InvalidInput);  // rate 0
}

TEST_CASE("trim: 61 s bootstrap-inclusive log keeps 1800 depth frames") {
  const Log log = synthetic_run(60.0);
  const Log trimmed = trim(log, 60'000'000'000ull);
  const uint16_t depth = trimmed.find_channel("depth")->id;
  const uint16_t imu = trimmed.find_channel("imu")->id;
  const uint16_t clock = trimmed.find_channel("clock")->id;
  CHECK(trimmed.count(depth) == 1800);
  CHECK(trimmed.count(imu) == 14400);
  CHECK(trimmed.count(clock) == 14400);
  // indices re-based to zero
  CHECK(trimmed.channel_records(depth)[0]->index == 0);
  const uint64_t t0 = start_timestamp(trimmed);
  for (const auto& r : trimmed.records()) {
    CHECK(r.timestamp_ns >= t0);
    CHECK(r.timestamp_ns <= t0 + 60'000'000'000ull);
  }
}

TEST_CASE("trim: duration zero keeps only records at the start instant") {
  const Log log = synthetic_run(2.0);
  const Log trimmed = trim(log, 0);
  const uint64_t t0 = start_timestamp(log);
  for (const auto& r : trimmed.records()) CHECK(r.timestamp_ns == t0);
  CHECK(trimmed.count(trimmed.find_channel("clock")->id) == 1);
}

TEST_CASE("trim: start-record errors") {
  Log no_start;
  no_start.add_channel("a", 10, "u64");
  CHECK_THROWS_AS(trim(no_start, 100), InvalidInput);

  Log two_starts;
  const uint16_t s = two_starts.add_channel(kStartChannel, 0, "u64");
  two_starts.append({s, 0, 0, 10, {}});
  two_starts.append({s, 0, 1, 20, {}});
  CHECK_THROWS_AS(trim(two_starts, 100), InvalidInput);
}

TEST_CASE("csv export decodes typed payloads") {
  Log log;
  const uint16_t ch = log.add_channel("imu", 240, "f64x6");
  std::vector<uint8_t> payload(48);
  for (int i = 0; i < 6; ++i) {
    const double v = 1.5 * i;
    std::memcpy(payload.data() + 8 * i, &v, 8);
  }
  log.append({ch, 0, 0, 41'666'666, payload});
  std::ostringstream os;
  export_channel_csv(log, "imu", os);
  CHECK(os.str() ==
        "index,timestamp_ns,flags,v0,v1,v2,v3,v4,v5\n"
        "0,41666666,0,0,1.5,3,4.5,6,7.5\n");
}

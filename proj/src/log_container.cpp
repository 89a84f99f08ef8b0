#include "dynsim/log_container.hpp"

#include <fmt/format.h>
#include <zlib.h>

#include <cstring>
#include <fstream>

#include "dynsim/error.hpp"

namespace dynsim {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'L', 'G'};
constexpr char kChunkMagic[4] = {'C', 'H', 'N', 'K'};
constexpr uint16_t kVersion = 1;

template <typename T>
void put(std::vector<uint8_t>& out, T v) {
  const size_t at = out.size();
  out.resize(at + sizeof(T));
  std::memcpy(out.data() + at, &v, sizeof(T));
}

void put_string(std::vector<uint8_t>& out, const std::string& s) {
  put<uint16_t>(out, static_cast<uint16_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

struct Cursor {
  std::span<const uint8_t> bytes;
  size_t pos = 0;

  template <typename T>
  T get() {
    if (pos + sizeof(T) > bytes.size())
      throw ParseError(fmt::format("log container truncated at byte {}", pos), pos);
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  std::string get_string() {
    const uint16_t len = get<uint16_t>();
    if (pos + len > bytes.size())
      throw ParseError(fmt::format("log container truncated in string at byte {}", pos), pos);
    std::string s(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
    return s;
  }
  void expect_magic(const char* magic) {
    if (pos + 4 > bytes.size())
      throw ParseError(fmt::format("log container truncated at byte {}", pos), pos);
    if (std::memcmp(bytes.data() + pos, magic, 4) != 0)
      throw ParseError(fmt::format("bad magic at byte {}", pos), pos);
    pos += 4;
  }
};

void append_record_bytes(std::vector<uint8_t>& out, const LogRecord& r) {
  put(out, r.channel);
  put(out, r.flags);
  put(out, r.index);
  put(out, r.timestamp_ns);
  put<uint32_t>(out, static_cast<uint32_t>(r.payload.size()));
  out.insert(out.end(), r.payload.begin(), r.payload.end());
}

void flush_chunk(std::vector<uint8_t>& out, std::vector<uint8_t>& chunk, uint32_t count) {
  if (count == 0) return;
  out.insert(out.end(), kChunkMagic, kChunkMagic + 4);
  put<uint32_t>(out, count);
  put<uint64_t>(out, chunk.size());
  out.insert(out.end(), chunk.begin(), chunk.end());
  const uint32_t crc =
      static_cast<uint32_t>(crc32(0L, chunk.data(), static_cast<uInt>(chunk.size())));
  put<uint32_t>(out, crc);
  chunk.clear();
}

}  // namespace

std::vector<uint8_t> serialize_log(const Log& log, size_t chunk_bytes) {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put(out, kVersion);
  put<uint16_t>(out, 0);  // reserved
  put<uint32_t>(out, static_cast<uint32_t>(log.channels().size()));
  for (const auto& c : log.channels()) {
    put(out, c.id);
    put(out, c.rate_hz);
    put_string(out, c.name);
    put_string(out, c.payload_type);
  }
  std::vector<uint8_t> chunk;
  uint32_t count = 0;
  for (const auto& r : log.records()) {
    append_record_bytes(chunk, r);
    ++count;
    if (chunk.size() >= chunk_bytes) {
      flush_chunk(out, chunk, count);
      count = 0;
    }
  }
  flush_chunk(out, chunk, count);
  return out;
}

Log deserialize_log(std::span<const uint8_t> bytes) {
  Cursor c{bytes};
  c.expect_magic(kMagic);
  const uint16_t version = c.get<uint16_t>();
  if (version != kVersion)
    throw ParseError(fmt::format("unsupported log container version {}", version), 4);
  c.get<uint16_t>();  // reserved
  const uint32_t nchannels = c.get<uint32_t>();
  std::vector<ChannelMeta> channels;
  channels.reserve(nchannels);
  for (uint32_t i = 0; i < nchannels; ++i) {
    ChannelMeta meta;
    meta.id = c.get<uint16_t>();
    meta.rate_hz = c.get<uint32_t>();
    meta.name = c.get_string();
    meta.payload_type = c.get_string();
    channels.push_back(std::move(meta));
  }

  Log log;
  log.set_channels(std::move(channels));
  while (c.pos < bytes.size()) {
    const size_t chunk_at = c.pos;
    c.expect_magic(kChunkMagic);
    const uint32_t count = c.get<uint32_t>();
    const uint64_t size = c.get<uint64_t>();
    if (c.pos + size + 4 > bytes.size())
      throw ParseError(fmt::format("chunk at byte {} overruns the buffer", chunk_at), chunk_at);
    const uint8_t* body = bytes.data() + c.pos;
    const uint32_t stored_crc = [&] {
      uint32_t v;
      std::memcpy(&v, body + size, 4);
      return v;
    }();
    const uint32_t actual_crc = static_cast<uint32_t>(crc32(0L, body, static_cast<uInt>(size)));
    if (stored_crc != actual_crc)
      throw ParseError(
          fmt::format("chunk at byte {}: CRC mismatch (stored {:#x}, computed {:#x})",
                      chunk_at, stored_crc, actual_crc),
          chunk_at);
    for (uint32_t r = 0; r < count; ++r) {
      LogRecord rec;
      rec.channel = c.get<uint16_t>();
      rec.flags = c.get<uint8_t>();
      rec.index = c.get<uint64_t>();
      rec.timestamp_ns = c.get<uint64_t>();
      const uint32_t len = c.get<uint32_t>();
      if (c.pos + len > bytes.size())
        throw ParseError(fmt::format("record payload truncated at byte {}", c.pos), c.pos);
      rec.payload.assign(bytes.data() + c.pos, bytes.data() + c.pos + len);
      c.pos += len;
      log.mutable_records().push_back(std::move(rec));
    }
    c.pos += 4;  // crc
  }
  log.rebuild_index_state();
  return log;
}

void write_log_file(const Log& log, const std::string& path, size_t chunk_bytes) {
  const auto bytes = serialize_log(log, chunk_bytes);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidInput(fmt::format("cannot write log file '{}'", path));
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw InvalidInput(fmt::format("short write on log file '{}'", path));
}

Log read_log_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot open log file '{}'", path));
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return deserialize_log(bytes);
}

}  // namespace dynsim

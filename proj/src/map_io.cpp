#include "mimo/map_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>

namespace mimo::map_io {

namespace {

constexpr std::array<char, 4> kMagic{'R', 'D', 'M', 'P'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

MagnitudeMap magnitudes(const RangeDopplerMap& map) {
  if (map.n_range() > std::numeric_limits<std::uint32_t>::max() ||
      map.n_doppler() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("map too large for the dump format");
  }
  MagnitudeMap out;
  out.n_range = static_cast<std::uint32_t>(map.n_range());
  out.n_doppler = static_cast<std::uint32_t>(map.n_doppler());
  out.values.reserve(map.data().size());
  for (const Complex& v : map.data()) out.values.push_back(static_cast<float>(std::abs(v)));
  return out;
}

void write_map(const std::filesystem::path& path, const MagnitudeMap& map) {
  if (map.values.size() != static_cast<std::size_t>(map.n_range) * map.n_doppler) {
    throw std::invalid_argument("magnitude map size does not match its dimensions");
  }
  std::string bytes;
  bytes.reserve(kHeaderBytes + 4 * map.values.size());
  bytes.append(kMagic.data(), kMagic.size());
  put_u32(bytes, kVersion);
  put_u32(bytes, map.n_range);
  put_u32(bytes, map.n_doppler);
  put_u32(bytes, kDtypeFloat32Magnitude);
  put_u32(bytes, 0);
  for (float v : map.values) put_u32(bytes, std::bit_cast<std::uint32_t>(v));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_map(const std::filesystem::path& path, const RangeDopplerMap& map) {
  write_map(path, magnitudes(map));
}

MagnitudeMap read_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic.data(), 4) != 0) {
    throw std::runtime_error("'" + path.string() + "' is not a range-Doppler dump");
  }
  if (get_u32(bytes, 4) != kVersion) {
    throw std::runtime_error("unsupported dump version " + std::to_string(get_u32(bytes, 4)));
  }
  if (get_u32(bytes, 16) != kDtypeFloat32Magnitude) {
    throw std::runtime_error("unsupported dump dtype " + std::to_string(get_u32(bytes, 16)));
  }
  MagnitudeMap map;
  map.n_range = get_u32(bytes, 8);
  map.n_doppler = get_u32(bytes, 12);
  const std::size_t count = static_cast<std::size_t>(map.n_range) * map.n_doppler;
  if (bytes.size() != kHeaderBytes + 4 * count) {
    throw std::runtime_error("dump payload size does not match its header");
  }
  map.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    map.values[i] = std::bit_cast<float>(get_u32(bytes, kHeaderBytes + 4 * i));
  }
  return map;
}

}  // namespace mimo::map_io

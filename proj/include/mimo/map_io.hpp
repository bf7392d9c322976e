#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mimo/model.hpp"

// Range-Doppler magnitude dump. Little-endian:
//   "RDMP" | u32 version=1 | u32 n_range | u32 n_doppler | u32 dtype=0 | u32 reserved=0
// followed by n_range * n_doppler float32 magnitudes, row-major [range][doppler].
namespace mimo::map_io {

inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::uint32_t kDtypeFloat32Magnitude = 0;
inline constexpr std::size_t kHeaderBytes = 24;

struct MagnitudeMap {
  std::uint32_t n_range = 0;
  std::uint32_t n_doppler = 0;
  std::vector<float> values;  // row-major [range][doppler]

  float at(std::size_t range, std::size_t doppler) const { return values[range * n_doppler + doppler]; }
};

MagnitudeMap magnitudes(const RangeDopplerMap& map);

void write_map(const std::filesystem::path& path, const MagnitudeMap& map);
void write_map(const std::filesystem::path& path, const RangeDopplerMap& map);

// Throws std::runtime_error on I/O failure or a malformed file.
MagnitudeMap read_map(const std::filesystem::path& path);

}  // namespace mimo::map_io

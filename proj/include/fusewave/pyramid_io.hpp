#ifndef FUSEWAVE_PYRAMID_IO_HPP
#define FUSEWAVE_PYRAMID_IO_HPP

#include "fusewave/dtcwt.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>

namespace fusewave {

/// Little-endian pyramid container, version 1:
///
///   offset  type        field
///   0       char[4]     magic "DTCW"
///   4       u16         version (1)
///   6       u16         levels L
///   8       u32         source rows
///   12      u32         source cols
///   16      u32         lowpass rows
///   20      u32         lowpass cols
///   24      f64[]       lowpass, row-major
///   then for level 1..L, orientation +15 +45 +75 -75 -45 -15:
///           f64[]       real part, row-major (dims lowpass * 2^(L-1) / 2^level)
///           f64[]       imaginary part, row-major
///
/// Subband dimensions are implied by the header; the file size must match
/// exactly.
inline constexpr std::uint16_t kPyramidFormatVersion = 1;

void write_pyramid(const Pyramid& pyr, std::ostream& out);
Pyramid read_pyramid(std::istream& in);

void save_pyramid(const Pyramid& pyr, const std::filesystem::path& path);
Pyramid load_pyramid(const std::filesystem::path& path);

}  // namespace fusewave

#endif  // FUSEWAVE_PYRAMID_IO_HPP

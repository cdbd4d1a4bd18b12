#include "fusewave/pyramid_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace fusewave {

namespace {

template <typename T>
void put(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                                                     std::uint16_t>>;
    U bits;
    std::memcpy(&bits, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(bytes.data(), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw PyramidError("truncated pyramid file");
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                                                     std::uint16_t>>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
    T value;
    std::memcpy(&value, &bits, sizeof(T));
    return value;
}

void put_plane(std::ostream& out, const Plane& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) put<double>(out, p.data()[i]);
}

Plane get_plane(std::istream& in, Eigen::Index rows, Eigen::Index cols) {
    Plane p(rows, cols);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = get<double>(in);
    return p;
}

}  // namespace

void write_pyramid(const Pyramid& pyr, std::ostream& out) {
    pyr.validate();
    out.write("DTCW", 4);
    put<std::uint16_t>(out, kPyramidFormatVersion);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(pyr.levels));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(pyr.source_extent.rows));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(pyr.source_extent.cols));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(pyr.lowpass.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(pyr.lowpass.cols()));
    put_plane(out, pyr.lowpass);
    for (const Subband& s : pyr.highpass) {
        put_plane(out, s.real);
        put_plane(out, s.imag);
    }
}

Pyramid read_pyramid(std::istream& in) {
    char magic[4] = {};
    if (!in.read(magic, 4) || std::memcmp(magic, "DTCW", 4) != 0) throw PyramidError("not a DTCW pyramid file");
    const auto version = get<std::uint16_t>(in);
    if (version != kPyramidFormatVersion) throw PyramidError("unsupported pyramid version " + std::to_string(version));

    Pyramid pyr;
    pyr.levels = get<std::uint16_t>(in);
    if (pyr.levels < 1 || pyr.levels > kMaxLevels) throw PyramidError("pyramid level count out of range");
    pyr.source_extent.rows = get<std::uint32_t>(in);
    pyr.source_extent.cols = get<std::uint32_t>(in);
    const Eigen::Index low_rows = get<std::uint32_t>(in);
    const Eigen::Index low_cols = get<std::uint32_t>(in);
    if (low_rows < 2 || low_cols < 2 || low_rows % 2 || low_cols % 2) throw PyramidError("bad lowpass dimensions");
    // Reject absurd headers before allocating; 2^28 samples is a 2 GiB plane.
    if (low_rows * low_cols > (Eigen::Index{1} << 28)) throw PyramidError("lowpass dimensions too large");
    pyr.lowpass = get_plane(in, low_rows, low_cols);

    const Extent full = pyr.transformed_extent();
    for (int level = 1; level <= pyr.levels; ++level) {
        for (Orientation o : kOrientationOrder) {
            Subband s;
            s.level = level;
            s.orientation = o;
            s.real = get_plane(in, full.rows >> level, full.cols >> level);
            s.imag = get_plane(in, full.rows >> level, full.cols >> level);
            pyr.highpass.push_back(std::move(s));
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) throw PyramidError("trailing bytes after pyramid data");
    pyr.validate();
    return pyr;
}

void save_pyramid(const Pyramid& pyr, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_pyramid(pyr, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Pyramid load_pyramid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_pyramid(in);
}

}  // namespace fusewave

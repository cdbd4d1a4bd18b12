#include "fusewave/pyramid_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace fusewave;

namespace {

std::string serialize(const Pyramid& pyr) {
    std::ostringstream out(std::ios::binary);
    write_pyramid(pyr, out);
    return out.str();
}

}  // namespace

TEST(PyramidIo, RoundTripIsExact) {
    const Pyramid pyr = decompose(Image(test::random_plane(37, 50, 2)), 3);
    std::istringstream in(serialize(pyr), std::ios::binary);
    const Pyramid back = read_pyramid(in);
    EXPECT_EQ(back.levels, 3);
    EXPECT_EQ(back.source_extent, (Extent{37, 50}));
    EXPECT_EQ(back.lowpass, pyr.lowpass);
    ASSERT_EQ(back.highpass.size(), pyr.highpass.size());
    for (std::size_t i = 0; i < pyr.highpass.size(); ++i) {
        EXPECT_EQ(back.highpass[i].real, pyr.highpass[i].real);
        EXPECT_EQ(back.highpass[i].imag, pyr.highpass[i].imag);
        EXPECT_EQ(back.highpass[i].orientation, pyr.highpass[i].orientation);
    }
    EXPECT_EQ(inverse(back).pixels(), inverse(pyr).pixels());
}

TEST(PyramidIo, HeaderLayoutIsLittleEndian) {
    const std::string bytes = serialize(forward(Image(Plane::Zero(8, 16)), 1));
    ASSERT_GE(bytes.size(), 24u);
    EXPECT_EQ(bytes.substr(0, 4), "DTCW");
    const auto u16 = [&](std::size_t off) {
        return static_cast<unsigned>(static_cast<unsigned char>(bytes[off])) |
               static_cast<unsigned>(static_cast<unsigned char>(bytes[off + 1])) << 8;
    };
    EXPECT_EQ(u16(4), 1u);
    EXPECT_EQ(u16(6), 1u);
    EXPECT_EQ(u16(8), 8u);
    EXPECT_EQ(u16(12), 16u);
    EXPECT_EQ(u16(16), 8u);
    EXPECT_EQ(u16(20), 16u);
    // lowpass 8x16, six 4x8 complex subbands
    EXPECT_EQ(bytes.size(), 24u + 8u * (8 * 16 + 6 * 2 * 4 * 8));
}

TEST(PyramidIo, CorruptInputIsRejected) {
    const std::string good = serialize(forward(Image(test::random_plane(16, 16, 1)), 2));
    for (const std::string& bad : {std::string("XXXX") + good.substr(4), good.substr(0, good.size() - 1),
                                   good + std::string(1, '\0'), good.substr(0, 10)}) {
        std::istringstream in(bad, std::ios::binary);
        EXPECT_ANY_THROW(read_pyramid(in));
    }
    std::string wrong_version = good;
    wrong_version[4] = 2;
    std::istringstream in(wrong_version, std::ios::binary);
    EXPECT_ANY_THROW(read_pyramid(in));
}

TEST(PyramidIo, HugeHeaderIsRejectedBeforeAllocating) {
    std::string bytes = serialize(forward(Image(Plane::Zero(8, 8)), 1));
    for (std::size_t off : {16u, 20u}) bytes.replace(off, 4, std::string("\xfe\xff\xff\x7f", 4));
    std::istringstream in(bytes, std::ios::binary);
    EXPECT_THROW(read_pyramid(in), PyramidError);
}

TEST(PyramidIo, FilesRoundTrip) {
    const auto dir = test::scratch_dir("pyramid_io");
    const Pyramid pyr = forward(Image(test::random_plane(32, 32, 7)), 2);
    save_pyramid(pyr, dir / "p.dtcw");
    EXPECT_EQ(load_pyramid(dir / "p.dtcw").lowpass, pyr.lowpass);
    EXPECT_ANY_THROW(load_pyramid(dir / "missing.dtcw"));
}

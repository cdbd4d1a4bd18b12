#include "fusewave/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <vector>

namespace fusewave {

Image::Image(Plane pixels, int depth) : pixels_(std::move(pixels)), depth_(depth) {
    if (pixels_.rows() < 2 || pixels_.cols() < 2) {
        throw std::invalid_argument("image must be at least 2x2, got " + std::to_string(pixels_.rows()) + "x" +
                                    std::to_string(pixels_.cols()));
    }
    if (!pixels_.allFinite()) throw std::invalid_argument("image contains non-finite pixels");
    if (depth_ == 8 && (pixels_.minCoeff() < 0.0 || pixels_.maxCoeff() > 255.0)) {
        throw std::invalid_argument("8-bit image has values outside [0, 255]");
    }
}

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// PGM header tokenizer: whitespace separated, '#' starts a comment to end of line.
class PgmReader {
public:
    explicit PgmReader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

    std::string token() {
        skip_space();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
            out.push_back(static_cast<char>(bytes_[pos_++]));
        }
        if (out.empty()) throw ImageError("truncated PGM header");
        return out;
    }

    long number() {
        const std::string t = token();
        if (!std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw ImageError("malformed PGM number '" + t + "'");
        }
        return std::stol(t);
    }

    // Exactly one whitespace byte separates the header from P5 raster data.
    void skip_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw ImageError("malformed PGM header");
        ++pos_;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }
    unsigned char byte() { return bytes_[pos_++]; }

private:
    void skip_space() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::vector<unsigned char> bytes_;
    std::size_t pos_ = 0;
};

Image load_pgm(std::vector<unsigned char> bytes) {
    PgmReader in(std::move(bytes));
    const std::string magic = in.token();
    if (magic != "P2" && magic != "P5") {
        throw ImageError("unsupported format '" + magic + "': only grayscale PGM (P2/P5) is accepted");
    }
    const long width = in.number();
    const long height = in.number();
    const long maxval = in.number();
    if (width <= 0 || height <= 0) throw ImageError("zero-dimension image");
    if (maxval <= 0 || maxval > 255) throw ImageError("unsupported bit depth: maxval " + std::to_string(maxval));

    if (magic == "P5") in.skip_single_space();
    // Every sample takes at least one byte, so the file size bounds the raster.
    const auto available = static_cast<long>(in.remaining());
    if (width > available || height > available || width * height > available) {
        throw ImageError("truncated PGM raster");
    }
    Plane pixels(height, width);
    if (magic == "P5") {
        for (Eigen::Index i = 0; i < pixels.size(); ++i) pixels.data()[i] = in.byte();
    } else {
        for (Eigen::Index i = 0; i < pixels.size(); ++i) pixels.data()[i] = static_cast<double>(in.number());
    }
    if (pixels.maxCoeff() > static_cast<double>(maxval)) throw ImageError("PGM sample exceeds maxval");
    try {
        return Image(std::move(pixels), 8);
    } catch (const std::invalid_argument& e) {
        throw ImageError(e.what());
    }
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngRaster {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    std::vector<unsigned char> bytes;
    std::vector<unsigned char> palette_gray;
    bool palette_has_color = false;
};

// libpng reports errors by longjmp; everything with a destructor lives in the
// caller so the jump only unwinds plain C state. Returns false on libpng error.
bool read_png_raster(std::FILE* file, PngRaster& out, std::vector<png_bytep>& rows) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        return false;
    }
    png_init_io(png, file);
    png_read_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    out.color_type = png_get_color_type(png, info);
    const bool supported = out.bit_depth == 8 && out.width > 0 && out.height > 0 &&
                           (out.color_type == PNG_COLOR_TYPE_GRAY || out.color_type == PNG_COLOR_TYPE_PALETTE);
    if (supported) {
        if (out.color_type == PNG_COLOR_TYPE_PALETTE) {
            png_colorp palette = nullptr;
            int count = 0;
            png_get_PLTE(png, info, &palette, &count);
            for (int i = 0; i < count; ++i) {
                if (palette[i].red != palette[i].green || palette[i].green != palette[i].blue) {
                    out.palette_has_color = true;
                }
                out.palette_gray.push_back(palette[i].red);
            }
        }
        png_set_interlace_handling(png);
        png_read_update_info(png, info);
        out.bytes.resize(static_cast<std::size_t>(out.width) * out.height);
        rows.resize(out.height);
        for (png_uint_32 r = 0; r < out.height; ++r) {
            rows[r] = out.bytes.data() + static_cast<std::size_t>(r) * out.width;
        }
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

Image load_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw ImageError("cannot open " + path.string());
    PngRaster raster;
    std::vector<png_bytep> rows;
    if (!read_png_raster(file.get(), raster, rows)) throw ImageError("corrupt PNG: " + path.string());

    if (raster.width == 0 || raster.height == 0) throw ImageError("zero-dimension image");
    if (raster.bit_depth != 8) throw ImageError("unsupported bit depth: " + std::to_string(raster.bit_depth));
    if (raster.color_type != PNG_COLOR_TYPE_GRAY && raster.color_type != PNG_COLOR_TYPE_PALETTE) {
        throw ImageError("color PNG rejected: only 8-bit grayscale is accepted");
    }
    // Palette images are accepted only when every entry is gray.
    if (raster.palette_has_color) throw ImageError("color PNG rejected: palette contains non-gray entries");

    Plane pixels(raster.height, raster.width);
    for (std::size_t i = 0; i < raster.bytes.size(); ++i) {
        const unsigned char v = raster.bytes[i];
        if (raster.color_type == PNG_COLOR_TYPE_PALETTE) {
            if (v >= raster.palette_gray.size()) throw ImageError("PNG palette index out of range");
            pixels.data()[i] = raster.palette_gray[v];
        } else {
            pixels.data()[i] = v;
        }
    }
    try {
        return Image(std::move(pixels), 8);
    } catch (const std::invalid_argument& e) {
        throw ImageError(e.what());
    }
}

std::vector<unsigned char> quantized(const Image& img) {
    std::vector<unsigned char> out(static_cast<std::size_t>(img.pixels().size()));
    for (Eigen::Index i = 0; i < img.pixels().size(); ++i) out[i] = quantize_8bit(img.pixels().data()[i]);
    return out;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageError("cannot write " + path.string());
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    const auto bytes = quantized(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ImageError("write failed: " + path.string());
}

bool write_png_raster(std::FILE* file, const std::vector<unsigned char>& bytes, png_uint_32 width,
                      png_uint_32 height) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, info ? &info : nullptr);
        return false;
    }
    png_init_io(png, file);
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (png_uint_32 r = 0; r < height; ++r) {
        png_write_row(png, bytes.data() + static_cast<std::size_t>(r) * width);
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

void save_png(const Image& img, const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw ImageError("cannot write " + path.string());
    const auto bytes = quantized(img);
    if (!write_png_raster(file.get(), bytes, static_cast<png_uint_32>(img.width()),
                          static_cast<png_uint_32>(img.height()))) {
        throw ImageError("PNG write failed: " + path.string());
    }
}

}  // namespace

unsigned char quantize_8bit(double value) {
    const double clamped = std::clamp(value, 0.0, 255.0);
    return static_cast<unsigned char>(std::floor(clamped + 0.5));
}

Image load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    static constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature), bytes.begin())) {
        return load_png(path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P') return load_pgm(std::move(bytes));
    throw ImageError("unsupported format: " + path.string());
}

void save_image(const Image& img, const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        save_png(img, path);
    } else if (ext == ".pgm") {
        save_pgm(img, path);
    } else {
        throw ImageError("unsupported output extension '" + ext + "' (use .pgm or .png)");
    }
}

Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n) {
    const Eigen::Index period = 2 * n;
    Eigen::Index m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

PaddedImage pad_to_multiple(const Image& img, Eigen::Index factor) {
    if (factor < 1) throw std::invalid_argument("padding factor must be positive");
    const Extent original = img.extent();
    const auto round_up = [factor](Eigen::Index v) { return (v + factor - 1) / factor * factor; };
    const Eigen::Index rows = round_up(original.rows);
    const Eigen::Index cols = round_up(original.cols);
    if (rows == original.rows && cols == original.cols) return {img, original};

    Plane padded(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index sr = reflect_index(r, original.rows);
        for (Eigen::Index c = 0; c < cols; ++c) padded(r, c) = img(sr, reflect_index(c, original.cols));
    }
    return {Image(std::move(padded), img.depth()), original};
}

Image crop(const Image& img, Extent extent) {
    if (extent.rows > img.height() || extent.cols > img.width()) {
        throw std::invalid_argument("crop extent exceeds image");
    }
    return Image(img.pixels().topLeftCorner(extent.rows, extent.cols), img.depth());
}

}  // namespace fusewave

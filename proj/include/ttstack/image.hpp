#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ttstack/errors.hpp"

namespace ttstack {

// Single-channel 8-bit image, row-major pixels.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int y, int x) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int y, int x) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    void validate() const {
        if (width <= 0 || height <= 0)
            throw DataError("image has non-positive dimensions");
        if (pixels.size() != static_cast<std::size_t>(width) * height)
            throw DataError("pixel count does not match width*height");
    }

    bool operator==(const GrayImage&) const = default;
};

// Intensities mapped to [-1, 1]; values stored as an H x W matrix
// (single channel).
struct NormalizedImage {
    int height = 0;
    int width = 0;
    Eigen::MatrixXd values;
};

// --- PGM (binary P5, maxval 255) ------------------------------------------

namespace detail {
inline int pgm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c = in.get();
    // skip whitespace and '#' comment lines
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok.empty() ? EOF : 0;
}
}  // namespace detail

inline GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image file: " + path.string());
    std::string tok;
    if (detail::pgm_next_token(in, tok) == EOF || tok != "P5")
        throw DataError("not a binary PGM (P5) file: " + path.string());
    long vals[3];
    for (long& v : vals) {
        if (detail::pgm_next_token(in, tok) == EOF)
            throw DataError("truncated PGM header: " + path.string());
        try {
            v = std::stol(tok);
        } catch (const std::exception&) {
            throw DataError("bad PGM header token '" + tok + "': " +
                            path.string());
        }
    }
    GrayImage img;
    img.width = static_cast<int>(vals[0]);
    img.height = static_cast<int>(vals[1]);
    if (vals[2] <= 0 || vals[2] > 255)
        throw DataError("PGM maxval out of 8-bit range: " + path.string());
    if (img.width <= 0 || img.height <= 0)
        throw DataError("PGM with non-positive dimensions: " + path.string());
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        throw DataError("truncated PGM pixel data: " + path.string());
    return img;
}

inline std::string encode_pgm(const GrayImage& img) {
    img.validate();
    std::string out = "P5\n" + std::to_string(img.width) + " " +
                      std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()),
               img.pixels.size());
    return out;
}

// --- geometry ---------------------------------------------------------------

inline GrayImage flip_horizontal(const GrayImage& img) {
    GrayImage out = img;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(y, x) = img.at(y, img.width - 1 - x);
    return out;
}

namespace detail {
inline std::uint8_t round_clamp_u8(double v) {
    const long r = std::lround(v);
    if (r < 0) return 0;
    if (r > 255) return 255;
    return static_cast<std::uint8_t>(r);
}
}  // namespace detail

// Rotation about the image center, bilinear sampling; source coordinates that
// fall outside the image contribute intensity 0.
inline GrayImage rotate(const GrayImage& img, double degrees) {
    if (degrees == 0.0) return img;
    const double rad = degrees * 3.14159265358979323846 / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    const double cx = (img.width - 1) / 2.0, cy = (img.height - 1) / 2.0;
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.assign(img.pixels.size(), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            // inverse map: rotate destination back into the source frame
            const double dx = x - cx, dy = y - cy;
            const double sx = c * dx + s * dy + cx;
            const double sy = -s * dx + c * dy + cy;
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            const double fx = sx - x0, fy = sy - y0;
            double acc = 0.0;
            for (int oy = 0; oy <= 1; ++oy) {
                for (int ox = 0; ox <= 1; ++ox) {
                    const int px = x0 + ox, py = y0 + oy;
                    if (px < 0 || px >= img.width || py < 0 || py >= img.height)
                        continue;  // zero fill
                    const double w = (ox ? fx : 1.0 - fx) * (oy ? fy : 1.0 - fy);
                    acc += w * img.at(py, px);
                }
            }
            out.at(y, x) = detail::round_clamp_u8(acc);
        }
    }
    return out;
}

// Bilinear resize to target x target with half-pixel-center mapping and
// clamp-to-edge sampling. Interpolation runs in double; one final rounding.
inline GrayImage resize_bilinear(const GrayImage& img, int target) {
    if (target <= 0) throw DataError("resize target must be positive");
    if (img.width == target && img.height == target) return img;
    GrayImage out;
    out.width = target;
    out.height = target;
    out.pixels.resize(static_cast<std::size_t>(target) * target);
    const double sx_scale = static_cast<double>(img.width) / target;
    const double sy_scale = static_cast<double>(img.height) / target;
    for (int y = 0; y < target; ++y) {
        double sy = (y + 0.5) * sy_scale - 0.5;
        sy = std::min(std::max(sy, 0.0), static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(std::floor(sy));
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = sy - y0;
        for (int x = 0; x < target; ++x) {
            double sx = (x + 0.5) * sx_scale - 0.5;
            sx = std::min(std::max(sx, 0.0),
                          static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(std::floor(sx));
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = sx - x0;
            const double v = (1 - fy) * ((1 - fx) * img.at(y0, x0) +
                                         fx * img.at(y0, x1)) +
                             fy * ((1 - fx) * img.at(y1, x0) +
                                   fx * img.at(y1, x1));
            out.at(y, x) = detail::round_clamp_u8(v);
        }
    }
    return out;
}

// --- normalization -----------------------------------------------------------

// ((p/255) - 0.5) / 0.5, i.e. mean 0.5 / std 0.5 scaling onto [-1, 1]
inline NormalizedImage normalize(const GrayImage& img) {
    img.validate();
    NormalizedImage out;
    out.height = img.height;
    out.width = img.width;
    out.values.resize(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.values(y, x) = (img.at(y, x) / 255.0 - 0.5) / 0.5;
    return out;
}

// inverse of the affine map, back to p/255
inline double denormalize(double v) { return v * 0.5 + 0.5; }

}  // namespace ttstack

#include "sot/mnist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "sot/errors.hpp"

namespace sot {

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoError(path + ": truncated IDX header");
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
           std::uint32_t(b[3]);
}

std::ifstream open_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    return in;
}

}  // namespace

std::vector<std::array<std::uint8_t, 784>> read_idx_images(const std::string& path) {
    std::ifstream in = open_binary(path);
    if (read_be32(in, path) != 0x00000803u) throw IoError(path + ": bad IDX image magic");
    const std::uint32_t n = read_be32(in, path);
    const std::uint32_t rows = read_be32(in, path);
    const std::uint32_t cols = read_be32(in, path);
    if (rows != 28 || cols != 28)
        throw IoError(path + ": expected 28x28 images, got " + std::to_string(rows) + "x" +
                      std::to_string(cols));
    std::vector<std::array<std::uint8_t, 784>> images(n);
    for (auto& img : images)
        if (!in.read(reinterpret_cast<char*>(img.data()), 784))
            throw IoError(path + ": truncated image data");
    return images;
}

std::vector<std::uint8_t> read_idx_labels(const std::string& path) {
    std::ifstream in = open_binary(path);
    if (read_be32(in, path) != 0x00000801u) throw IoError(path + ": bad IDX label magic");
    const std::uint32_t n = read_be32(in, path);
    std::vector<std::uint8_t> labels(n);
    if (n && !in.read(reinterpret_cast<char*>(labels.data()), n))
        throw IoError(path + ": truncated label data");
    return labels;
}

std::array<std::uint8_t, 64> downscale_binarize(const std::array<std::uint8_t, 784>& img28) {
    // Box edges at multiples of 28/8 = 3.5 source pixels; border pixels
    // contribute the overlapped fraction of their area.
    constexpr double kScale = 28.0 / 8.0;
    std::array<std::uint8_t, 64> out{};
    for (int r = 0; r < 8; ++r) {
        const double y0 = r * kScale, y1 = (r + 1) * kScale;
        for (int c = 0; c < 8; ++c) {
            const double x0 = c * kScale, x1 = (c + 1) * kScale;
            double acc = 0.0;
            for (int py = static_cast<int>(y0); py < static_cast<int>(std::ceil(y1)); ++py) {
                const double hy = std::min<double>(py + 1, y1) - std::max<double>(py, y0);
                for (int px = static_cast<int>(x0); px < static_cast<int>(std::ceil(x1)); ++px) {
                    const double hx = std::min<double>(px + 1, x1) - std::max<double>(px, x0);
                    acc += hy * hx * img28[py * 28 + px] / 255.0;
                }
            }
            out[r * 8 + c] = acc / (kScale * kScale) >= 0.5 ? 1 : 0;
        }
    }
    return out;
}

Dataset load_dataset(const std::string& images_path, const std::string& labels_path,
                     std::size_t count) {
    const auto images = read_idx_images(images_path);
    const auto labels = read_idx_labels(labels_path);
    if (images.size() != labels.size())
        throw IoError(images_path + ": image/label count mismatch with " + labels_path);

    Dataset ds;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (labels[i] > 3) continue;
        ds.images.push_back(downscale_binarize(images[i]));
        ds.labels.push_back(labels[i]);
        if (count != 0 && ds.size() == count) break;
    }
    if (count != 0 && ds.size() < count)
        throw IoError(images_path + ": only " + std::to_string(ds.size()) +
                      " images with labels 0..3, need " + std::to_string(count));
    return ds;
}

}  // namespace sot

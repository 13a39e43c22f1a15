#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sot {

// Binarized 8x8 images for the 4-class digit task (labels 0..3).
struct Dataset {
    std::vector<std::array<std::uint8_t, 64>> images;  // entries are 0/1
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return images.size(); }
};

// IDX readers (big-endian header). Image files must be 28x28.
std::vector<std::array<std::uint8_t, 784>> read_idx_images(const std::string& path);
std::vector<std::uint8_t> read_idx_labels(const std::string& path);

// 28x28 grayscale -> 8x8 by exact box averaging (3.5 px boxes), then
// binarized at half intensity.
std::array<std::uint8_t, 64> downscale_binarize(const std::array<std::uint8_t, 784>& img28);

// First `count` images with label in 0..3, in file order; count == 0 takes
// all. Throws IoError when fewer than `count` qualify.
Dataset load_dataset(const std::string& images_path, const std::string& labels_path,
                     std::size_t count);

}  // namespace sot

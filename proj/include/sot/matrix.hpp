#pragma once

#include <cstddef>
#include <vector>

namespace sot {

// Dense row-major matrix, just enough for weight grids.
template <class T>
struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> v;

    Grid() = default;
    Grid(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), v(r * c, fill) {}

    T& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    const T& at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

    bool operator==(const Grid&) const = default;
};

using Matrix = Grid<double>;

}  // namespace sot

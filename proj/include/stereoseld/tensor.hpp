#pragma once

// Row-major containers shared across the pipeline: a float32 n-d tensor for
// feature/target stacks (the serialized dtype) and a double matrix for
// intermediate time-frequency planes.

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereoseld {

struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<float> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
        data.assign(element_count(shape), 0.0f);
    }

    static std::size_t element_count(const std::vector<std::size_t>& s) {
        std::size_t n = 1;
        for (std::size_t d : s) n *= d;
        return n;
    }

    std::size_t size() const { return data.size(); }
    std::size_t dim(std::size_t i) const { return shape.at(i); }
    std::size_t rank() const { return shape.size(); }

    // 3-d access (channel, time, band) for feature stacks.
    float& at(std::size_t c, std::size_t t, std::size_t k) {
        return data[(c * shape[1] + t) * shape[2] + k];
    }
    float at(std::size_t c, std::size_t t, std::size_t k) const {
        return data[(c * shape[1] + t) * shape[2] + k];
    }

    // 4-d access (frame, track, class, component) for target tensors.
    float& at4(std::size_t f, std::size_t t, std::size_t c, std::size_t x) {
        return data[((f * shape[1] + t) * shape[2] + c) * shape[3] + x];
    }
    float at4(std::size_t f, std::size_t t, std::size_t c, std::size_t x) const {
        return data[((f * shape[1] + t) * shape[2] + c) * shape[3] + x];
    }

    std::string shape_string() const {
        std::string s;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            if (i) s += 'x';
            s += std::to_string(shape[i]);
        }
        return s;
    }
};

// Dense double matrix, row-major.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
    double* row(std::size_t r) { return v.data() + r * cols; }
    const double* row(std::size_t r) const { return v.data() + r * cols; }
};

}  // namespace stereoseld

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptcav {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<cplx> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
    std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    std::span<const cplx> data() const { return data_; }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix conj() const {
        ComplexMatrix out(n_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
        return out;
    }

    // max row sum of |entries|
    double norm_inf() const {
        double best = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
            if (s > best) best = s;
        }
        return best;
    }

    double norm_one() const {
        double best = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
            if (s > best) best = s;
        }
        return best;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

}  // namespace ptcav

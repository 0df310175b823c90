#include "qeigen/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qeigen {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx{}) continue;
            const cplx* rrow = &rhs.entries_[k * dim_];
            cplx* orow = &out.entries_[i * dim_];
            for (std::size_t j = 0; j < dim_; ++j) orow[j] += aik * rrow[j];
        }
    }
    return out;
}

std::vector<cplx> ComplexMatrix::operator*(const std::vector<cplx>& v) const {
    std::vector<cplx> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx acc{};
        const cplx* row = &entries_[i * dim_];
        for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * factor;
    return out;
}

ComplexMatrix ComplexMatrix::plus(const ComplexMatrix& rhs) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] + rhs.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::minus(const ComplexMatrix& rhs) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] - rhs.entries_[i];
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx acc{};
    for (std::size_t i = 0; i < dim_; ++i) acc += at(i, i);
    return acc;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        m = std::max(m, std::abs(entries_[i] - rhs.entries_[i]));
    return m;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

double ComplexMatrix::unitarity_defect() const {
    return (adjoint() * *this).max_abs_diff(identity(dim_));
}

} // namespace qeigen

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qeigen {

using cplx = std::complex<double>;

// Dense complex matrix, row-major square storage.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

    std::size_t dim() const { return dim_; }

    cplx& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }
    std::vector<cplx>& entries() { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<cplx> operator*(const std::vector<cplx>& v) const;

    ComplexMatrix scaled(cplx factor) const;
    ComplexMatrix plus(const ComplexMatrix& rhs) const;
    ComplexMatrix minus(const ComplexMatrix& rhs) const;

    cplx trace() const;

    // max_ij |A_ij - B_ij|
    double max_abs_diff(const ComplexMatrix& rhs) const;
    // max_ij |A_ij|
    double max_abs() const;

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    // max deviation of A†A from the identity
    double unitarity_defect() const;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

} // namespace qeigen

#pragma once

// Dense complex linear algebra core: Hermitian eigendecomposition (cyclic
// Jacobi), matrix exponentials of Hamiltonians, density matrices, fidelity,
// and partial traces of multi-qubit pure states.

#include <cstddef>
#include <vector>

#include "qeigen/complex_matrix.hpp"

namespace qeigen::numerics {

// Eigenvalues ascending; eigenvectors() column j pairs with eigenvalue j.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    std::vector<cplx> eigenvector(std::size_t j) const {
        std::vector<cplx> v(eigenvectors.dim());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors.at(i, j);
        return v;
    }
};

class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    static DensityMatrix pure(const std::vector<cplx>& state);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

    // Hermitian to 1e-10, trace 1 to 1e-10, eigenvalues >= -1e-10.
    void validate() const;

  private:
    ComplexMatrix m_;
};

// Flat 2^n statevector. Qubit 0 is the most significant bit of the basis
// index; registers laid out most-significant first concatenate naturally.
struct StateVector {
    std::size_t qubit_count = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double squared_norm() const;
};

// Cyclic Jacobi sweeps. Throws NotHermitian if the symmetry defect exceeds
// 1e-9 and NoConvergence if the sweep budget is exhausted. Deterministic for
// a fixed input.
EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h);

// U = V diag(exp(2 pi i scale lambda_j)) V†.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double scale);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Reduced density matrix on `keep` (ascending qubit indices, MSB-first
// convention as in StateVector).
DensityMatrix trace_out(const StateVector& state, const std::vector<std::size_t>& keep);

ComplexMatrix outer_product(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace qeigen::numerics

#pragma once

// Register-structured statevector simulator backing the faithful circuit
// checks. Registers are concatenated most-significant first, so the flat
// amplitude index is (((w_0 ... w_{c-1}) * 2^t + median) * N + system) * N +
// conjugate for the layout used by subroutine A.

#include <cstddef>
#include <vector>

#include "qeigen/complex_matrix.hpp"
#include "qeigen/numerics.hpp"
#include "qeigen/spectra.hpp"

namespace qeigen::sim {

class RegisterState {
  public:
    explicit RegisterState(const std::vector<unsigned>& qubits_per_register);

    std::size_t register_count() const { return dims_.size(); }
    std::size_t dim() const { return amps_.size(); }
    unsigned total_qubits() const { return total_qubits_; }
    std::size_t register_dim(std::size_t reg) const { return dims_[reg]; }

    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    std::size_t register_value(std::size_t idx, std::size_t reg) const {
        return (idx / strides_[reg]) % dims_[reg];
    }

    void apply_register_unitary(std::size_t reg, const ComplexMatrix& u);
    void apply_hadamards(std::size_t reg);
    // powers[x] acts on `target` wherever `clock` holds x.
    void apply_controlled_powers(std::size_t clock, std::size_t target,
                                 const std::vector<ComplexMatrix>& powers);
    // |s>|d> -> |s>|d xor s>; registers must have equal dimension.
    void apply_copy_xor(std::size_t src, std::size_t dst);
    // XORs the median of the clock-register values into `median`.
    void apply_median_xor(const std::vector<std::size_t>& clocks, std::size_t median);

    // amp *= -1 wherever flip[value of reg] is nonzero.
    void phase_flip_register(std::size_t reg, const std::vector<char>& flip);
    // amp[0] *= -1 (reflection about |0...0>, up to sign convention).
    void phase_flip_zero();

    std::vector<double> register_marginal(std::size_t reg) const;
    // Zeroes amplitudes whose register value fails `keep`; returns the kept
    // probability mass (state is left unnormalized).
    double project_register(std::size_t reg, const std::vector<char>& keep);
    void normalize();

  private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    unsigned total_qubits_ = 0;
    std::vector<cplx> amps_;
};

ComplexMatrix qft_matrix(unsigned bits, bool inverse);

// The subroutine A circuit: Bell-pair preparation across system/conjugate,
// c serial phase estimations against exp(2 pi i H'), a median XOR, and the
// clock uncompute. Holds the exact evolution powers so applications are
// reproducible and unitary to machine precision.
class FaithfulA {
  public:
    FaithfulA(const spectra::HermitianOperator& h_prime, unsigned clock_bits, unsigned copies,
              unsigned max_qubits = 24);

    unsigned clock_bits() const { return clock_bits_; }
    unsigned copies() const { return copies_; }
    unsigned system_qubits() const { return system_qubits_; }
    unsigned total_qubits() const { return total_qubits_; }

    std::size_t median_register() const { return copies_; }
    std::size_t system_register() const { return copies_ + 1; }
    std::size_t conjugate_register() const { return copies_ + 2; }

    RegisterState initial_state() const;
    void apply(RegisterState& state, bool adjoint = false) const;
    RegisterState prepared_state() const;

    // System-register qubit positions in the flat MSB-first layout.
    std::vector<std::size_t> system_qubit_indices() const;

  private:
    unsigned clock_bits_;
    unsigned copies_;
    unsigned system_qubits_;
    unsigned total_qubits_;
    std::vector<unsigned> layout_;
    std::vector<ComplexMatrix> powers_;
    std::vector<ComplexMatrix> inverse_powers_;
    ComplexMatrix qft_;
    ComplexMatrix iqft_;
};

numerics::StateVector flatten(const RegisterState& state);

} // namespace qeigen::sim

#include "qeigen/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/errors.hpp"

namespace qeigen::sim {

RegisterState::RegisterState(const std::vector<unsigned>& qubits_per_register) {
    dims_.reserve(qubits_per_register.size());
    for (unsigned q : qubits_per_register) {
        dims_.push_back(std::size_t{1} << q);
        total_qubits_ += q;
    }
    if (total_qubits_ > 28) throw TooManyQubits("register state beyond 28 qubits");
    strides_.assign(dims_.size(), 1);
    for (std::size_t r = dims_.size(); r-- > 1;) strides_[r - 1] = strides_[r] * dims_[r];
    amps_.assign(std::size_t{1} << total_qubits_, cplx{});
    amps_[0] = 1.0;
}

void RegisterState::apply_register_unitary(std::size_t reg, const ComplexMatrix& u) {
    const std::size_t d = dims_[reg];
    const std::size_t stride = strides_[reg];
    std::vector<cplx> scratch(d);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if ((base / stride) % d != 0) continue;
        for (std::size_t x = 0; x < d; ++x) scratch[x] = amps_[base + x * stride];
        for (std::size_t x = 0; x < d; ++x) {
            cplx acc{};
            for (std::size_t y = 0; y < d; ++y) acc += u.at(x, y) * scratch[y];
            amps_[base + x * stride] = acc;
        }
    }
}

void RegisterState::apply_hadamards(std::size_t reg) {
    const std::size_t d = dims_[reg];
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t sub = d >> 1; sub >= 1; sub >>= 1) {
        const std::size_t stride = strides_[reg] * sub;
        for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
            if ((idx / stride) & 1u) continue;
            const cplx a = amps_[idx];
            const cplx b = amps_[idx + stride];
            amps_[idx] = (a + b) * inv_sqrt2;
            amps_[idx + stride] = (a - b) * inv_sqrt2;
        }
        if (sub == 1) break;
    }
}

void RegisterState::apply_controlled_powers(std::size_t clock, std::size_t target,
                                            const std::vector<ComplexMatrix>& powers) {
    const std::size_t td = dims_[target];
    const std::size_t ts = strides_[target];
    std::vector<cplx> scratch(td);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if ((base / ts) % td != 0) continue;
        const std::size_t x = register_value(base, clock);
        if (x == 0) continue; // U^0 = I
        const ComplexMatrix& u = powers[x];
        for (std::size_t v = 0; v < td; ++v) scratch[v] = amps_[base + v * ts];
        for (std::size_t v = 0; v < td; ++v) {
            cplx acc{};
            for (std::size_t w = 0; w < td; ++w) acc += u.at(v, w) * scratch[w];
            amps_[base + v * ts] = acc;
        }
    }
}

void RegisterState::apply_copy_xor(std::size_t src, std::size_t dst) {
    const std::size_t ds = strides_[dst];
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        const std::size_t s = register_value(idx, src);
        const std::size_t d = register_value(idx, dst);
        const std::size_t flipped = d ^ s;
        if (d < flipped) std::swap(amps_[idx], amps_[idx + (flipped - d) * ds]);
    }
}

void RegisterState::apply_median_xor(const std::vector<std::size_t>& clocks, std::size_t median) {
    const std::size_t ms = strides_[median];
    std::vector<std::size_t> values(clocks.size());
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        for (std::size_t i = 0; i < clocks.size(); ++i) values[i] = register_value(idx, clocks[i]);
        std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
        const std::size_t m = values[values.size() / 2];
        const std::size_t d = register_value(idx, median);
        const std::size_t flipped = d ^ m;
        if (d < flipped) std::swap(amps_[idx], amps_[idx + (flipped - d) * ms]);
    }
}

void RegisterState::phase_flip_register(std::size_t reg, const std::vector<char>& flip) {
    for (std::size_t idx = 0; idx < amps_.size(); ++idx)
        if (flip[register_value(idx, reg)]) amps_[idx] = -amps_[idx];
}

void RegisterState::phase_flip_zero() { amps_[0] = -amps_[0]; }

std::vector<double> RegisterState::register_marginal(std::size_t reg) const {
    std::vector<double> marginal(dims_[reg], 0.0);
    for (std::size_t idx = 0; idx < amps_.size(); ++idx)
        marginal[register_value(idx, reg)] += std::norm(amps_[idx]);
    return marginal;
}

double RegisterState::project_register(std::size_t reg, const std::vector<char>& keep) {
    double kept = 0.0;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        if (keep[register_value(idx, reg)])
            kept += std::norm(amps_[idx]);
        else
            amps_[idx] = cplx{};
    }
    return kept;
}

void RegisterState::normalize() {
    double nrm = 0.0;
    for (const auto& a : amps_) nrm += std::norm(a);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return;
    for (auto& a : amps_) a /= nrm;
}

ComplexMatrix qft_matrix(unsigned bits, bool inverse) {
    const std::size_t d = std::size_t{1} << bits;
    const double sign = inverse ? -1.0 : 1.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix out(d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            const double angle =
                sign * 2.0 * M_PI * static_cast<double>((x * y) % d) / static_cast<double>(d);
            out.at(x, y) = norm * cplx(std::cos(angle), std::sin(angle));
        }
    return out;
}

FaithfulA::FaithfulA(const spectra::HermitianOperator& h_prime, unsigned clock_bits,
                     unsigned copies, unsigned max_qubits)
    : clock_bits_(clock_bits), copies_(copies),
      system_qubits_(static_cast<unsigned>(h_prime.qubit_count())) {
    if (copies_ % 2 == 0 || copies_ == 0) throw InvalidInput("copy count must be odd");
    total_qubits_ = copies_ * clock_bits_ + clock_bits_ + 2 * system_qubits_;
    if (total_qubits_ > max_qubits)
        throw TooManyQubits("faithful backend needs " + std::to_string(total_qubits_) +
                            " qubits, cap is " + std::to_string(max_qubits));

    for (unsigned i = 0; i < copies_; ++i) layout_.push_back(clock_bits_);
    layout_.push_back(clock_bits_);    // median
    layout_.push_back(system_qubits_); // system
    layout_.push_back(system_qubits_); // conjugate

    // exact evolution powers from the spectrum, U^x = V e^{2 pi i x Lambda} V†
    const std::size_t bins = std::size_t{1} << clock_bits_;
    powers_.reserve(bins);
    inverse_powers_.reserve(bins);
    for (std::size_t x = 0; x < bins; ++x) {
        powers_.push_back(
            numerics::unitary_from_hamiltonian(h_prime.dense(), static_cast<double>(x)));
        inverse_powers_.push_back(powers_.back().adjoint());
    }
    qft_ = qft_matrix(clock_bits_, false);
    iqft_ = qft_matrix(clock_bits_, true);
}

RegisterState FaithfulA::initial_state() const { return RegisterState(layout_); }

void FaithfulA::apply(RegisterState& state, bool adjoint) const {
    std::vector<std::size_t> clocks(copies_);
    for (unsigned i = 0; i < copies_; ++i) clocks[i] = i;
    const std::size_t median = median_register();
    const std::size_t system = system_register();
    const std::size_t conjugate = conjugate_register();

    if (!adjoint) {
        state.apply_hadamards(system);
        state.apply_copy_xor(system, conjugate);
        for (std::size_t clk : clocks) {
            state.apply_hadamards(clk);
            state.apply_controlled_powers(clk, system, powers_);
            state.apply_register_unitary(clk, iqft_);
        }
        state.apply_median_xor(clocks, median);
        for (std::size_t clk : clocks) {
            state.apply_register_unitary(clk, qft_);
            state.apply_controlled_powers(clk, system, inverse_powers_);
            state.apply_hadamards(clk);
        }
    } else {
        for (auto it = clocks.rbegin(); it != clocks.rend(); ++it) {
            state.apply_hadamards(*it);
            state.apply_controlled_powers(*it, system, powers_);
            state.apply_register_unitary(*it, iqft_);
        }
        state.apply_median_xor(clocks, median);
        for (auto it = clocks.rbegin(); it != clocks.rend(); ++it) {
            state.apply_register_unitary(*it, qft_);
            state.apply_controlled_powers(*it, system, inverse_powers_);
            state.apply_hadamards(*it);
        }
        state.apply_copy_xor(system, conjugate);
        state.apply_hadamards(system);
    }
}

RegisterState FaithfulA::prepared_state() const {
    RegisterState state = initial_state();
    apply(state);
    return state;
}

std::vector<std::size_t> FaithfulA::system_qubit_indices() const {
    std::vector<std::size_t> out;
    const std::size_t offset = (copies_ + 1) * clock_bits_;
    for (unsigned q = 0; q < system_qubits_; ++q) out.push_back(offset + q);
    return out;
}

numerics::StateVector flatten(const RegisterState& state) {
    numerics::StateVector out;
    out.qubit_count = state.total_qubits();
    out.amplitudes = state.amplitudes();
    return out;
}

} // namespace qeigen::sim

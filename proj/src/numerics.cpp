#include "qeigen/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qeigen/errors.hpp"

namespace qeigen::numerics {

namespace {

double frobenius(const ComplexMatrix& m) {
    double acc = 0.0;
    for (const auto& e : m.entries()) acc += std::norm(e);
    return std::sqrt(acc);
}

double off_diagonal_norm(const ComplexMatrix& m) {
    double acc = 0.0;
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) acc += std::norm(m.at(i, j));
    return std::sqrt(acc);
}

} // namespace

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h) {
    const std::size_t n = h.dim();
    if (n == 0) throw InvalidInput("eigendecomposition: empty matrix");
    if (h.hermiticity_defect() > 1e-9)
        throw NotHermitian("eigendecomposition: input symmetry defect exceeds 1e-9");

    // Work on the Hermitian part; off-tolerance asymmetry was rejected above.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double tol = 1e-12 * std::max(1.0, frobenius(a));
    const int max_sweeps = 100;

    int sweep = 0;
    while (n > 1 && off_diagonal_norm(a) > tol) {
        if (++sweep > max_sweeps)
            throw NoConvergence("eigendecomposition: Jacobi sweep budget exhausted");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = apq / mag;
                const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * mag);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;            // U(p,q)
                const cplx smc = -s * std::conj(phase); // U(q,p)

                // A <- U† A U, touching only rows/cols p and q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = c * akp + smc * akq;
                    a.at(k, q) = sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = c * apk + std::conj(smc) * aqk;
                    a.at(q, k) = std::conj(sp) * apk + c * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
                a.at(q, q) = cplx(a.at(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v.at(k, p);
                    const cplx vkq = v.at(k, q);
                    v.at(k, p) = c * vkp + smc * vkq;
                    v.at(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a.at(x, x).real() < a.at(y, y).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

namespace {

// V diag V† for an arbitrary complex diagonal.
ComplexMatrix from_spectrum(const EigenDecomposition& eig, const std::vector<cplx>& diag) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.eigenvectors.at(i, k) * diag[k] * std::conj(eig.eigenvectors.at(j, k));
            out.at(i, j) = acc;
        }
    }
    return out;
}

} // namespace

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double scale) {
    const EigenDecomposition eig = hermitian_eigendecomposition(h);
    std::vector<cplx> diag(eig.eigenvalues.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        const double angle = 2.0 * M_PI * scale * eig.eigenvalues[k];
        diag[k] = cplx(std::cos(angle), std::sin(angle));
    }
    return from_spectrum(eig, diag);
}

DensityMatrix DensityMatrix::pure(const std::vector<cplx>& state) {
    double nrm = 0.0;
    for (const auto& a : state) nrm += std::norm(a);
    nrm = std::sqrt(nrm);
    ComplexMatrix m(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        for (std::size_t j = 0; j < state.size(); ++j)
            m.at(i, j) = state[i] * std::conj(state[j]) / (nrm * nrm);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

void DensityMatrix::validate() const {
    if (m_.hermiticity_defect() > 1e-10)
        throw NotHermitian("density matrix: not Hermitian to 1e-10");
    if (std::abs(m_.trace() - cplx(1.0)) > 1e-10)
        throw ValidationError("density matrix: trace differs from 1 beyond 1e-10");
    const auto eig = hermitian_eigendecomposition(m_);
    if (eig.eigenvalues.front() < -1e-10)
        throw ValidationError("density matrix: negative eigenvalue beyond tolerance");
}

double StateVector::squared_norm() const {
    double acc = 0.0;
    for (const auto& a : amplitudes) acc += std::norm(a);
    return acc;
}

namespace {

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
    const auto eig = hermitian_eigendecomposition(m);
    std::vector<cplx> diag(eig.eigenvalues.size());
    for (std::size_t k = 0; k < diag.size(); ++k)
        diag[k] = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    return from_spectrum(eig, diag);
}

} // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("fidelity: density matrices differ in dimension");
    const ComplexMatrix s = hermitian_sqrt(rho.matrix());
    ComplexMatrix inner = s * sigma.matrix() * s;
    // Round symmetric noise off before taking the second square root.
    const std::size_t n = inner.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx avg = 0.5 * (inner.at(i, j) + std::conj(inner.at(j, i)));
            inner.at(i, j) = avg;
            inner.at(j, i) = std::conj(avg);
        }
    const auto eig = hermitian_eigendecomposition(inner);
    double tr = 0.0;
    for (double lam : eig.eigenvalues) tr += std::sqrt(std::max(0.0, lam));
    return std::clamp(tr * tr, 0.0, 1.0);
}

DensityMatrix trace_out(const StateVector& state, const std::vector<std::size_t>& keep) {
    const std::size_t n = state.qubit_count;
    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw IndexOutOfRange("trace_out: duplicate qubit index");
    for (std::size_t q : kept)
        if (q >= n) throw IndexOutOfRange("trace_out: qubit index beyond register");

    const std::size_t k = kept.size();
    const std::size_t rdim = std::size_t{1} << k;
    const std::size_t edim = state.dim() >> k;

    // Regroup amplitudes as [environment][kept], kept bits in ascending qubit
    // order (MSB-first within the reduced space).
    std::vector<cplx> grouped(state.dim());
    std::vector<bool> is_kept(n, false);
    for (std::size_t q : kept) is_kept[q] = true;
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        std::size_t r = 0, e = 0;
        std::size_t rpos = 0, epos = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t bit = (idx >> (n - 1 - q)) & 1u;
            if (is_kept[q]) {
                r |= bit << (k - 1 - rpos);
                ++rpos;
            } else {
                e |= bit << (n - k - 1 - epos);
                ++epos;
            }
        }
        grouped[e * rdim + r] = state.amplitudes[idx];
    }

    ComplexMatrix rho(rdim);
    for (std::size_t e = 0; e < edim; ++e) {
        const cplx* block = &grouped[e * rdim];
        for (std::size_t r = 0; r < rdim; ++r) {
            if (block[r] == cplx{}) continue;
            for (std::size_t c = 0; c < rdim; ++c)
                rho.at(r, c) += block[r] * std::conj(block[c]);
        }
    }
    return DensityMatrix(std::move(rho));
}

ComplexMatrix outer_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    ComplexMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out.at(i, j) = a[i] * std::conj(b[j]);
    return out;
}

} // namespace qeigen::numerics

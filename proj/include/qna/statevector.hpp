#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qna/errors.hpp"
#include "qna/rng.hpp"

namespace qna {

using Amplitude = std::complex<double>;

// 2^24 complex doubles = 256 MiB; a desk-scale bound. Callers may pass a
// different ceiling where they know better.
inline constexpr int kDefaultMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;

// Contiguous block of qubits [first, first + count).
struct QubitRange {
    int first = 0;
    int count = 0;
};

// Named, disjoint qubit ranges covering a register. Purely descriptive: it
// documents circuit layouts (data register, threshold register, comparator
// ancilla) without forcing the simulator to materialize every qubit. In
// particular the oracle ancilla lives here as bookkeeping while its phase
// kickback is folded into the phase-flip operation.
class RegisterLayout {
public:
    struct Entry {
        std::string name;
        QubitRange span;
    };

    RegisterLayout(int qubit_count, std::vector<Entry> entries)
        : qubit_count_(qubit_count), entries_(std::move(entries)) {
        validate();
    }

    int qubit_count() const { return qubit_count_; }
    const std::vector<Entry>& entries() const { return entries_; }

    const QubitRange& range(std::string_view name) const {
        for (const auto& e : entries_) {
            if (e.name == name) return e.span;
        }
        throw ValidationError("register layout has no range named '" + std::string(name) + "'");
    }

private:
    void validate() const {
        if (qubit_count_ < 1) throw ValidationError("register layout needs at least one qubit");
        std::vector<bool> seen(static_cast<std::size_t>(qubit_count_), false);
        for (const auto& e : entries_) {
            if (e.span.count < 1 || e.span.first < 0 ||
                e.span.first + e.span.count > qubit_count_) {
                throw ValidationError("register range '" + e.name + "' out of bounds");
            }
            for (int q = e.span.first; q < e.span.first + e.span.count; ++q) {
                if (seen[static_cast<std::size_t>(q)]) {
                    throw ValidationError("register ranges overlap at qubit " + std::to_string(q));
                }
                seen[static_cast<std::size_t>(q)] = true;
            }
        }
        for (int q = 0; q < qubit_count_; ++q) {
            if (!seen[static_cast<std::size_t>(q)]) {
                throw ValidationError("register ranges leave qubit " + std::to_string(q) + " unnamed");
            }
        }
    }

    int qubit_count_;
    std::vector<Entry> entries_;
};

// Register plan of a hardware fixed-point comparator: n qubits for the
// running summation, n for the threshold constant, one ancilla holding the
// comparison bit.
inline RegisterLayout comparator_layout(int bit_width) {
    return RegisterLayout(2 * bit_width + 1,
                          {{"sigma_r", {0, bit_width}},
                           {"sigma_t", {bit_width, bit_width}},
                           {"compare", {2 * bit_width, 1}}});
}

// Dense statevector over 2^q complex amplitudes. Not safe for concurrent
// mutation of one instance; distinct instances are independent.
class StateVector {
public:
    // Uniform superposition over all 2^q basis states.
    static StateVector uniform(int qubit_count, int max_qubits = kDefaultMaxQubits) {
        StateVector sv(qubit_count, max_qubits);
        const double a = 1.0 / std::sqrt(static_cast<double>(sv.dimension()));
        sv.amp_.assign(sv.dimension(), Amplitude{a, 0.0});
        return sv;
    }

    // Computational basis state |index>.
    static StateVector basis(int qubit_count, std::uint64_t index,
                             int max_qubits = kDefaultMaxQubits) {
        StateVector sv(qubit_count, max_qubits);
        if (index >= sv.dimension()) {
            throw RangeError("basis index " + std::to_string(index) + " out of range");
        }
        sv.amp_.assign(sv.dimension(), Amplitude{0.0, 0.0});
        sv.amp_[index] = Amplitude{1.0, 0.0};
        return sv;
    }

    // Adopts a prepared amplitude vector. The length must be a power of two
    // of at least one qubit, and the norm must already be within tolerance.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes,
                                       int max_qubits = kDefaultMaxQubits) {
        int qubits = 1;
        while ((std::uint64_t{1} << qubits) < amplitudes.size()) ++qubits;
        if ((std::uint64_t{1} << qubits) != amplitudes.size()) {
            throw SizeError("amplitude count must be a power of two, at least 2");
        }
        StateVector sv(qubits, max_qubits);
        sv.amp_ = std::move(amplitudes);
        sv.check_norm();
        return sv;
    }

    int qubit_count() const { return qubit_count_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << qubit_count_; }
    std::span<const Amplitude> amplitudes() const { return amp_; }

    Amplitude amplitude(std::uint64_t index) const {
        if (index >= dimension()) {
            throw RangeError("basis index " + std::to_string(index) + " out of range");
        }
        return amp_[index];
    }

    double prob_of_basis(std::uint64_t index) const {
        if (index >= dimension()) {
            throw RangeError("basis index " + std::to_string(index) + " out of range");
        }
        return std::norm(amp_[index]);
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const auto& a : amp_) sum += std::norm(a);
        return sum;
    }

    void check_norm(double tolerance = kNormTolerance) const {
        const double n2 = norm_squared();
        if (std::abs(n2 - 1.0) > tolerance) {
            throw NumericError("statevector norm drifted to " + std::to_string(n2));
        }
    }

    // Phase oracle U_f|x> = (-1)^{f(x)}|x>: negates the amplitude of every
    // basis index the predicate marks. The predicate must be total over
    // [0, 2^q). Involution.
    template <class Pred>
    void apply_phase_flip(Pred&& marked) {
        for (std::uint64_t x = 0; x < amp_.size(); ++x) {
            if (marked(x)) amp_[x] = -amp_[x];
        }
    }

    // Grover diffusion D = 2|sigma><sigma| - I: reflects every amplitude
    // about the mean. The uniform state is its fixed point; D^2 = I.
    void apply_diffusion() {
        Amplitude mean{0.0, 0.0};
        for (const auto& a : amp_) mean += a;
        mean /= static_cast<double>(amp_.size());
        for (auto& a : amp_) a = 2.0 * mean - a;
    }

    // Walsh-Hadamard transform over a contiguous qubit range.
    void hadamard_all(QubitRange range) {
        if (range.first < 0 || range.count < 1 ||
            range.first + range.count > qubit_count_) {
            throw RangeError("hadamard range out of bounds");
        }
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int q = range.first; q < range.first + range.count; ++q) {
            const std::uint64_t half = std::uint64_t{1} << q;
            const std::uint64_t stride = half << 1;
            for (std::uint64_t base = 0; base < dimension(); base += stride) {
                for (std::uint64_t i = 0; i < half; ++i) {
                    Amplitude a = amp_[base + i];
                    Amplitude b = amp_[base + i + half];
                    amp_[base + i] = (a + b) * inv_sqrt2;
                    amp_[base + i + half] = (a - b) * inv_sqrt2;
                }
            }
        }
    }

    void hadamard_all() { hadamard_all({0, qubit_count_}); }

    // Samples a basis index with probability |a_x|^2. Non-destructive:
    // repeated sampling from the same state is allowed, which is all the
    // classical post-processing here ever needs.
    std::uint64_t measure(SeededRng& rng) const {
        const double u = rng.next_unit();
        double cumulative = 0.0;
        std::uint64_t last_nonzero = 0;
        bool seen_nonzero = false;
        for (std::uint64_t x = 0; x < amp_.size(); ++x) {
            const double p = std::norm(amp_[x]);
            if (p > 0.0) {
                last_nonzero = x;
                seen_nonzero = true;
                cumulative += p;
                if (u < cumulative) return x;
            }
        }
        if (!seen_nonzero) throw NumericError("cannot measure the zero vector");
        // Float tail: u landed beyond the accumulated total.
        return last_nonzero;
    }

private:
    StateVector(int qubit_count, int max_qubits) : qubit_count_(qubit_count) {
        if (max_qubits < 1 || max_qubits > 30) {
            throw SizeError("qubit ceiling must be in [1, 30]");
        }
        if (qubit_count < 1 || qubit_count > max_qubits) {
            throw SizeError("qubit count " + std::to_string(qubit_count) +
                            " outside [1, " + std::to_string(max_qubits) + "]");
        }
    }

    int qubit_count_;
    std::vector<Amplitude> amp_;
};

} // namespace qna

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qna/bitsets.hpp"
#include "qna/errors.hpp"
#include "qna/netmodel.hpp"
#include "qna/rng.hpp"
#include "qna/statevector.hpp"

namespace qna {

// Fixed-point comparator: scans bit positions from the most significant
// down; the first position where the codes differ decides, and equality
// fires. Equivalent to (code >= threshold_code), but written as the bitwise
// scan a comparator circuit would perform.
inline int fire_bit(Code code, Code threshold_code) {
    for (int b = 31; b >= 0; --b) {
        const std::uint32_t cb = (code >> b) & 1u;
        const std::uint32_t tb = (threshold_code >> b) & 1u;
        if (cb != tb) return static_cast<int>(cb);
    }
    return 1;
}

// Recipe for the two-part oracle: the comparator decides realized codes, the
// fill bit is hardcoded on the complement so the function becomes total over
// the whole code space.
struct TwoPartOracleSpec {
    int bit_width = 0;
    Code threshold_code = 0;
    const RealizedSets* realized = nullptr;
    int fill_bit = 0;

    void validate() const {
        if (realized == nullptr) throw ValidationError("oracle spec needs realized sets");
        if (bit_width != realized->bit_width) {
            throw ValidationError("oracle bit width does not match realized sets");
        }
        if (fill_bit != 0 && fill_bit != 1) throw ValidationError("fill bit must be 0 or 1");
        if (threshold_code >= (std::uint64_t{1} << bit_width)) {
            throw RangeError("threshold code wider than the oracle domain");
        }
    }
};

// Total binary function g over all 2^n codes, tabulated once so oracle
// evaluation during the statevector pass is a byte load.
class TwoPartOracle {
public:
    explicit TwoPartOracle(const TwoPartOracleSpec& spec) : bit_width_(spec.bit_width) {
        spec.validate();
        const std::uint64_t space = std::uint64_t{1} << bit_width_;
        table_.assign(static_cast<std::size_t>(space),
                      static_cast<std::uint8_t>(spec.fill_bit));
        for (Code s : spec.realized->realized) {
            table_[s] = static_cast<std::uint8_t>(fire_bit(s, spec.threshold_code));
        }
    }

    int bit_width() const { return bit_width_; }

    int operator()(std::uint64_t code) const { return table_[code]; }

private:
    int bit_width_;
    std::vector<std::uint8_t> table_;
};

inline TwoPartOracle build_two_part_oracle(const TwoPartOracleSpec& spec) {
    return TwoPartOracle(spec);
}

enum class DJMode { Exact, Sampled };

inline const char* to_string(DJMode mode) {
    return mode == DJMode::Exact ? "exact" : "sampled";
}

// Constant-verdict threshold: a non-constant g on n <= 24 bits caps p_zero
// at (1 - 2/2^n)^2, far below this.
inline constexpr double kConstantVerdictTolerance = 1e-10;

struct DJRunResult {
    double p_zero = 0.0;        // exact all-zeros probability
    bool verdict_constant = false;
    int shots = 0;              // 0 in exact mode
    int all_zero_shots = 0;
    std::optional<double> false_constant_probability; // p_zero^shots, sampled mode
};

namespace detail {

// Unnormalized Walsh-Hadamard butterflies: (a, b) -> (a + b, a - b).
inline void walsh_raw(std::vector<double>& values) {
    const std::size_t size = values.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        const std::size_t stride = half << 1;
        for (std::size_t base = 0; base < size; base += stride) {
            for (std::size_t i = 0; i < half; ++i) {
                const double a = values[base + i];
                const double b = values[base + i + half];
                values[base + i] = a + b;
                values[base + i + half] = a - b;
            }
        }
    }
}

} // namespace detail

// One Deutsch-Jozsa pass over an arbitrary total function g on n-bit inputs:
// H-layer, phase oracle (-1)^g, H-layer. The |-> ancilla of the textbook
// circuit is algebraically absorbed into the phase flip. Exact mode reads
// the all-zeros amplitude; sampled mode additionally draws `shots` outcomes
// and calls the run constant only if every one of them is all-zeros.
//
// The two layers share one deferred 2^-n normalization, applied after the
// second layer. Every intermediate value is then an integer of magnitude at
// most 2^n and the scale is a power of two, so for n <= 24 the final
// amplitudes, p_zero, and the norm are all computed without rounding:
// p_zero equals ((sum over x of (-1)^g(x)) / 2^n)^2 bit for bit.
template <class G>
DJRunResult run_dj(G&& g, int bit_width, DJMode mode = DJMode::Exact, int shots = 64,
                   SeededRng* rng = nullptr) {
    if (bit_width < 1 || bit_width > kDefaultMaxQubits) {
        throw SizeError("oracle bit width " + std::to_string(bit_width) + " outside [1, " +
                        std::to_string(kDefaultMaxQubits) + "]");
    }
    const std::uint64_t space = std::uint64_t{1} << bit_width;
    std::vector<double> values(space, 0.0);
    values[0] = 1.0; // |0...0>; the circuit keeps all amplitudes real
    detail::walsh_raw(values);
    for (std::uint64_t x = 0; x < space; ++x) {
        if (g(x) != 0) values[x] = -values[x];
    }
    detail::walsh_raw(values);
    const double scale = std::ldexp(1.0, -bit_width);
    std::vector<Amplitude> amplitudes(space);
    for (std::uint64_t x = 0; x < space; ++x) {
        amplitudes[x] = Amplitude{values[x] * scale, 0.0};
    }
    const StateVector state = StateVector::from_amplitudes(std::move(amplitudes));
    state.check_norm();

    DJRunResult result;
    result.p_zero = state.prob_of_basis(0);
    if (mode == DJMode::Exact) {
        result.verdict_constant = result.p_zero >= 1.0 - kConstantVerdictTolerance;
        return result;
    }
    if (shots < 1) throw ValidationError("sampled mode needs at least one shot");
    if (rng == nullptr) throw ValidationError("sampled mode needs a random source");
    result.shots = shots;
    for (int i = 0; i < shots; ++i) {
        if (state.measure(*rng) == 0) ++result.all_zero_shots;
    }
    result.verdict_constant = result.all_zero_shots == shots;
    result.false_constant_probability = std::pow(result.p_zero, shots);
    return result;
}

enum class Verdict { Quiescent, Epileptic, Sustaining };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Quiescent: return "quiescent";
        case Verdict::Epileptic: return "epileptic";
        default: return "sustaining";
    }
}

struct Classification {
    Verdict verdict = Verdict::Sustaining;
    DJRunResult run_fill_zero; // run A, complement hardcoded to 0
    DJRunResult run_fill_one;  // run B, complement hardcoded to 1
    std::optional<std::string> disambiguation_note;
};

namespace detail {
inline void check_sets_match(const Snapshot& snapshot, const RealizedSets& sets) {
    if (sets.bit_width != snapshot.encoding.bit_width()) {
        throw ValidationError("realized sets were built for a different bit width");
    }
    std::uint64_t total = 0;
    for (const auto& [code, count] : sets.multiplicity) total += count;
    if (total != snapshot.codes.size()) {
        throw ValidationError("realized sets were not built from this snapshot");
    }
}

inline void check_threshold(const Snapshot& snapshot, Code threshold_code) {
    if (threshold_code > static_cast<Code>(snapshot.encoding.scale())) {
        throw RangeError("threshold code " + std::to_string(threshold_code) + " above scale " +
                         std::to_string(snapshot.encoding.scale()));
    }
}
} // namespace detail

// The run-twice protocol. Run A hardcodes the complement to 0, so a constant
// outcome certifies g == 0 on the realized codes: quiescent. Run B hardcodes
// it to 1 and a constant outcome certifies epileptic. Neither constant means
// mixed firing: the network can sustain activity for at least one more step.
// With an empty complement the fill bit is inert and both runs coincide; a
// constant outcome is then disambiguated by one classical comparator
// evaluation, since constant-0 and constant-1 are indistinguishable by
// measurement.
inline Classification classify_quantum(const Snapshot& snapshot, Code threshold_code,
                                       const RealizedSets& sets, DJMode mode, SeededRng& rng,
                                       int shots = 64) {
    snapshot.validate();
    detail::check_sets_match(snapshot, sets);
    detail::check_threshold(snapshot, threshold_code);
    const int bits = snapshot.encoding.bit_width();

    TwoPartOracleSpec spec_a{bits, threshold_code, &sets, 0};
    TwoPartOracleSpec spec_b{bits, threshold_code, &sets, 1};
    const TwoPartOracle oracle_a = build_two_part_oracle(spec_a);
    const TwoPartOracle oracle_b = build_two_part_oracle(spec_b);

    Classification out;
    out.run_fill_zero = run_dj(oracle_a, bits, mode, shots, &rng);
    out.run_fill_one = run_dj(oracle_b, bits, mode, shots, &rng);

    if (!sets.complement.empty()) {
        if (out.run_fill_zero.verdict_constant && out.run_fill_one.verdict_constant) {
            throw NumericError("both runs constant with a nonempty complement");
        }
        if (out.run_fill_zero.verdict_constant) {
            out.verdict = Verdict::Quiescent;
        } else if (out.run_fill_one.verdict_constant) {
            out.verdict = Verdict::Epileptic;
        } else {
            out.verdict = Verdict::Sustaining;
        }
        return out;
    }

    // Empty complement: the two runs are the same oracle.
    if (out.run_fill_zero.verdict_constant) {
        const Code witness = sets.realized.front();
        const int f = fire_bit(witness, threshold_code);
        out.verdict = f == 1 ? Verdict::Epileptic : Verdict::Quiescent;
        out.disambiguation_note =
            "complement empty; constant runs disambiguated by fire_bit(" +
            std::to_string(witness) + ", " + std::to_string(threshold_code) + ") = " +
            std::to_string(f);
    } else {
        out.verdict = Verdict::Sustaining;
    }
    return out;
}

// Brute-force reference: evaluates the comparator on every snapshot entry.
// The attached evidence is the exact p_zero each DJ run would produce,
// computed by integer counting rather than simulation, so the two backends
// can be compared run for run.
inline Classification classify_classical(const Snapshot& snapshot, Code threshold_code) {
    snapshot.validate();
    detail::check_threshold(snapshot, threshold_code);

    bool any_fire = false;
    bool any_rest = false;
    for (Code c : snapshot.codes) {
        if (fire_bit(c, threshold_code)) {
            any_fire = true;
        } else {
            any_rest = true;
        }
    }

    Classification out;
    if (any_fire && !any_rest) {
        out.verdict = Verdict::Epileptic;
    } else if (!any_fire) {
        out.verdict = Verdict::Quiescent;
    } else {
        out.verdict = Verdict::Sustaining;
    }

    const RealizedSets sets = realized_sets_classical(snapshot);
    const std::uint64_t space = sets.space_size();
    std::uint64_t ones_on_realized = 0;
    for (Code s : sets.realized) {
        ones_on_realized += static_cast<std::uint64_t>(fire_bit(s, threshold_code));
    }
    for (int fill = 0; fill <= 1; ++fill) {
        const std::uint64_t ones =
            ones_on_realized + (fill == 1 ? space - sets.realized.size() : 0);
        // Signed sum of (-1)^g over the domain, exactly.
        const std::int64_t signed_sum =
            static_cast<std::int64_t>(space) - 2 * static_cast<std::int64_t>(ones);
        DJRunResult run;
        const double ratio = static_cast<double>(signed_sum) / static_cast<double>(space);
        run.p_zero = ratio * ratio;
        run.verdict_constant = std::llabs(signed_sum) == static_cast<std::int64_t>(space);
        if (fill == 0) {
            out.run_fill_zero = run;
        } else {
            out.run_fill_one = run;
        }
    }
    return out;
}

} // namespace qna

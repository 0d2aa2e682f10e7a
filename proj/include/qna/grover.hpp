#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qna/bitsets.hpp"
#include "qna/errors.hpp"
#include "qna/netmodel.hpp"
#include "qna/rng.hpp"
#include "qna/statevector.hpp"

namespace qna {

// Where the Grover superposition lives. List mode searches the snapshot's
// index positions (padded to a power of two), so a repeated code counts with
// its multiplicity. Domain mode searches the code space itself, where a
// target is marked at most once. The two modes reflect two readings of the
// search-space definition; list is the default.
enum class GroverMode { List, Domain };

inline const char* to_string(GroverMode mode) {
    return mode == GroverMode::List ? "list" : "domain";
}

struct GroverConfig {
    GroverMode mode = GroverMode::List;
    int repetitions = 3;                    // verification re-runs per target
    std::optional<int> iteration_override;  // fixed k instead of the schedule
    bool multiplicity_known = true;         // false: schedule with worst-case k
    std::uint64_t seed = 0;

    void validate() const {
        if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
        if (iteration_override && *iteration_override < 0) {
            throw ValidationError("iteration override must be >= 0");
        }
    }
};

namespace detail {
inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::uint64_t n) {
    int q = 0;
    while ((std::uint64_t{1} << q) < n) ++q;
    return q;
}

// Smallest power-of-two space holding `count` items, at least 2.
inline std::uint64_t padded_space(std::uint64_t count) {
    std::uint64_t n = 2;
    while (n < count) n <<= 1;
    return n;
}
} // namespace detail

// Iteration schedule floor((pi/4) sqrt(N/mu)); with the multiplicity unknown
// (mu = 0) the worst-case floor((pi/4) sqrt(N)) applies and the repetition
// loop absorbs the slack.
inline int iteration_count(std::uint64_t search_space, std::uint64_t multiplicity) {
    if (!detail::is_power_of_two(search_space)) {
        throw ValidationError("search space size must be a power of two");
    }
    if (multiplicity > search_space) {
        throw ValidationError("multiplicity cannot exceed the search space");
    }
    const double n = static_cast<double>(search_space);
    const double ratio = multiplicity == 0 ? n : n / static_cast<double>(multiplicity);
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

// Closed-form marked mass after k rounds from uniform:
// sin^2((2k+1) asin(sqrt(mu/N))). Serves as the independent analytic oracle
// for the simulator.
inline double success_probability(std::uint64_t search_space, std::uint64_t multiplicity, int rounds) {
    if (multiplicity == 0) return 0.0;
    if (!detail::is_power_of_two(search_space)) {
        throw ValidationError("search space size must be a power of two");
    }
    if (multiplicity > search_space) {
        throw ValidationError("multiplicity cannot exceed the search space");
    }
    const double theta =
        std::asin(std::sqrt(static_cast<double>(multiplicity) / static_cast<double>(search_space)));
    const double s = std::sin((2.0 * rounds + 1.0) * theta);
    return s * s;
}

// Phase-oracle predicate over snapshot index positions: marks position j iff
// it holds the target code. Padding positions past the list are never marked.
class ListOracle {
public:
    ListOracle(std::vector<Code> values, Code target)
        : values_(std::move(values)), target_(target) {}

    bool operator()(std::uint64_t index) const {
        return index < values_.size() && values_[index] == target_;
    }

    std::uint64_t list_size() const { return values_.size(); }
    Code target() const { return target_; }

private:
    std::vector<Code> values_;
    Code target_;
};

inline ListOracle build_list_oracle(const Snapshot& snapshot, Code target) {
    snapshot.validate();
    return ListOracle(snapshot.codes, target);
}

// Phase-oracle predicate over the code space: marks the target iff it was
// realized, so the marked set is {target} or empty.
class DomainOracle {
public:
    DomainOracle(Code target, bool target_realized)
        : target_(target), target_realized_(target_realized) {}

    bool operator()(std::uint64_t index) const {
        return target_realized_ && index == target_;
    }

    Code target() const { return target_; }
    bool target_realized() const { return target_realized_; }

private:
    Code target_;
    bool target_realized_;
};

inline DomainOracle build_domain_oracle(const RealizedSets& sets, Code target) {
    return DomainOracle(target, sets.contains(target));
}

struct MembershipEntry {
    Code target = 0;
    bool present = false;
    int iterations = 0;                  // k used per attempt
    int attempts = 0;
    std::uint64_t oracle_calls = 0;
    std::vector<std::uint64_t> measured; // raw outcome per attempt
};

struct MembershipReport {
    GroverMode mode = GroverMode::List;
    int repetitions = 0;
    int bit_width = 0;
    std::uint64_t search_space = 0;
    std::vector<MembershipEntry> entries;
    std::uint64_t total_oracle_calls = 0;
};

namespace detail {

// Shared attempt loop: prepare uniform, k Grover rounds, measure, verify the
// single outcome classically. A verified hit decides presence; r unverified
// attempts decide absence. Verification makes false positives impossible;
// false negatives are probabilistic and bounded by the rotation formula.
template <class Oracle, class Verify>
MembershipEntry membership_attempts(int qubits, const Oracle& oracle, const Verify& verified,
                                    Code target, int rounds, int repetitions, SeededRng& rng) {
    MembershipEntry entry;
    entry.target = target;
    entry.iterations = rounds;
    for (int attempt = 0; attempt < repetitions; ++attempt) {
        StateVector state = StateVector::uniform(qubits);
        for (int k = 0; k < rounds; ++k) {
            state.apply_phase_flip(oracle);
            state.apply_diffusion();
        }
        entry.oracle_calls += static_cast<std::uint64_t>(rounds);
        state.check_norm();
        const std::uint64_t outcome = state.measure(rng);
        entry.measured.push_back(outcome);
        ++entry.attempts;
        if (verified(outcome)) {
            entry.present = true;
            break;
        }
    }
    return entry;
}

inline MembershipEntry run_membership_impl(const Snapshot& snapshot, const RealizedSets* sets,
                                           Code target, const GroverConfig& config,
                                           SeededRng& rng) {
    config.validate();
    if (config.mode == GroverMode::List) {
        const std::uint64_t list_size = snapshot.codes.size();
        if (list_size == 1) {
            // One-element space: the uniform state is |0>, so the single
            // attempt deterministically measures position 0 with k = 0.
            MembershipEntry entry;
            entry.target = target;
            entry.iterations = 0;
            entry.attempts = 1;
            entry.measured.push_back(0);
            entry.present = snapshot.codes[0] == target;
            return entry;
        }
        const std::uint64_t space = detail::padded_space(list_size);
        const int qubits = detail::log2_exact(space);
        std::uint64_t multiplicity = 0;
        for (Code c : snapshot.codes) {
            if (c == target) ++multiplicity;
        }
        const int rounds = config.iteration_override
                               ? *config.iteration_override
                               : iteration_count(space, config.multiplicity_known ? multiplicity : 0);
        const ListOracle oracle = build_list_oracle(snapshot, target);
        const auto verify = [&](std::uint64_t idx) {
            return idx < list_size && snapshot.codes[idx] == target;
        };
        return membership_attempts(qubits, oracle, verify, target, rounds, config.repetitions, rng);
    }

    // Domain mode: superposition over all 2^n codes, multiplicity 0 or 1.
    const int qubits = snapshot.encoding.bit_width();
    const std::uint64_t space = std::uint64_t{1} << qubits;
    const bool realized = sets->contains(target);
    const std::uint64_t multiplicity = realized ? 1 : 0;
    const int rounds = config.iteration_override
                           ? *config.iteration_override
                           : iteration_count(space, config.multiplicity_known ? multiplicity : 0);
    const DomainOracle oracle = build_domain_oracle(*sets, target);
    const auto verify = [&](std::uint64_t code) {
        return code == target && sets->contains(target);
    };
    return membership_attempts(qubits, oracle, verify, target, rounds, config.repetitions, rng);
}

} // namespace detail

// Decides whether one target code occurs in the snapshot.
inline MembershipEntry run_membership(const Snapshot& snapshot, Code target,
                                      const GroverConfig& config, SeededRng& rng) {
    snapshot.validate();
    if (config.mode == GroverMode::Domain) {
        const RealizedSets sets = realized_sets_classical(snapshot);
        return detail::run_membership_impl(snapshot, &sets, target, config, rng);
    }
    return detail::run_membership_impl(snapshot, nullptr, target, config, rng);
}

inline constexpr int kSweepMaxBits = 12;

// Runs membership for every code in the space. Each target draws from an
// independent seed derived from (config.seed, target), so results do not
// depend on scheduling order.
inline MembershipReport sweep_membership(const Snapshot& snapshot, const GroverConfig& config) {
    snapshot.validate();
    config.validate();
    const int bits = snapshot.encoding.bit_width();
    if (bits > kSweepMaxBits) {
        throw SizeError("sweep over " + std::to_string(bits) + "-bit codes exceeds the " +
                        std::to_string(kSweepMaxBits) + "-bit ceiling");
    }
    const RealizedSets sets = realized_sets_classical(snapshot);
    MembershipReport report;
    report.mode = config.mode;
    report.repetitions = config.repetitions;
    report.bit_width = bits;
    report.search_space = config.mode == GroverMode::List
                              ? (snapshot.codes.size() == 1 ? 1 : detail::padded_space(snapshot.codes.size()))
                              : (std::uint64_t{1} << bits);
    const std::uint64_t space = std::uint64_t{1} << bits;
    report.entries.reserve(static_cast<std::size_t>(space));
    for (std::uint64_t target = 0; target < space; ++target) {
        SeededRng rng(derive_seed(config.seed, target));
        MembershipEntry entry = detail::run_membership_impl(snapshot, &sets,
                                                            static_cast<Code>(target), config, rng);
        report.total_oracle_calls += entry.oracle_calls;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// Assembles the partition from a finished sweep; multiplicities for the
// codes found present are counted classically from the snapshot.
inline RealizedSets realized_sets_from_report(const MembershipReport& report,
                                              const Snapshot& snapshot) {
    RealizedSets sets;
    sets.bit_width = report.bit_width;
    for (const MembershipEntry& entry : report.entries) {
        if (entry.present) {
            std::uint32_t count = 0;
            for (Code c : snapshot.codes) {
                if (c == entry.target) ++count;
            }
            sets.realized.push_back(entry.target);
            sets.multiplicity[entry.target] = count;
        } else {
            sets.complement.push_back(entry.target);
        }
    }
    return sets;
}

// Reconstructs the realized/complement partition from Grover searches alone.
inline RealizedSets compute_realized_sets_grover(const Snapshot& snapshot,
                                                 const GroverConfig& config) {
    return realized_sets_from_report(sweep_membership(snapshot, config), snapshot);
}

} // namespace qna

#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <qna/qna.hpp>

namespace fixtures {

// Complete digraph (no self loops) with one weight everywhere.
inline qna::Network complete_network(int nodes, double weight, double threshold) {
    qna::Network net;
    net.node_count = nodes;
    net.threshold = threshold;
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            if (i != j) net.edges.push_back({i, j, weight});
        }
    }
    return net;
}

inline qna::Snapshot snapshot_of_codes(std::vector<qna::Code> codes,
                                       qna::Encoding enc = qna::Encoding::default_unit()) {
    qna::Snapshot snap;
    snap.encoding = enc;
    snap.codes = std::move(codes);
    snap.validate();
    return snap;
}

// Snapshot whose multiset of code multiplicities is given. Codes are drawn
// without replacement from 0..scale and the value list is shuffled, so the
// list-mode oracle sees arbitrary positions.
inline qna::Snapshot snapshot_with_multiplicities(const std::vector<int>& multiplicities,
                                                  qna::SeededRng& rng,
                                                  const qna::Encoding& enc) {
    std::vector<qna::Code> alphabet(static_cast<std::size_t>(enc.scale()) + 1);
    std::iota(alphabet.begin(), alphabet.end(), 0u);
    // Fisher-Yates down to the needed prefix.
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(alphabet.size() - i));
        std::swap(alphabet[i], alphabet[j]);
    }
    std::vector<qna::Code> values;
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        for (int r = 0; r < multiplicities[i]; ++r) values.push_back(alphabet[i]);
    }
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
    return snapshot_of_codes(std::move(values), enc);
}

// The multiplicity patterns used for Grover-sweep fixtures. Every pattern
// keeps each present code's (search space, multiplicity) pair on a point of
// the rotation curve where the scheduled iteration count leaves a per-attempt
// miss probability small enough that the whole 100-snapshot corpus stays
// under the 1e-6 suite budget at three repetitions. The bound is not taken
// on faith: sweep_false_negative_bound below recomputes it from the actual
// corpus and the tests assert it.
inline const std::vector<std::vector<int>>& corpus_patterns() {
    static const std::vector<std::vector<int>> patterns = {
        {16, 16, 16, 16},                         // M=64, all mass on four codes
        std::vector<int>(32, 2),                  // M=64, thirty-two pairs
        {16, 16, 6, 6, 6, 6, 2, 2, 2, 2},         // M=64, mixed
        {8, 8, 8, 3, 3, 1, 1},                    // M=32, mixed with two singletons
        {16, 16, 16, 6, 3, 3, 2, 2},              // M=64, mixed odd multiplicities
        {4, 4, 4, 4},                             // M=16, four quads
        {2, 2, 2, 2},                             // M=8, four pairs
        {1, 1, 1, 1},                             // M=4, four distinct codes
        {1},                                      // M=1, one-element space
        {64},                                     // M=64, a single saturated code
    };
    return patterns;
}

inline std::vector<qna::Snapshot> grover_fixture_corpus(std::uint64_t seed, int count = 100) {
    const qna::Encoding enc = qna::Encoding::default_unit();
    std::vector<qna::Snapshot> corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    const auto& patterns = corpus_patterns();
    for (int i = 0; i < count; ++i) {
        qna::SeededRng rng(qna::derive_seed(seed, static_cast<std::uint64_t>(i)));
        const auto& pattern = patterns[static_cast<std::size_t>(rng.next_below(patterns.size()))];
        corpus.push_back(snapshot_with_multiplicities(pattern, rng, enc));
    }
    return corpus;
}

// Analytic false-negative bound for one sweep: the probability that any
// present target survives all scheduled attempts unverified, summed over
// present targets. Mirrors run_membership's schedule exactly.
inline double sweep_false_negative_bound(const qna::Snapshot& snapshot,
                                         const qna::GroverConfig& config) {
    const qna::RealizedSets sets = qna::realized_sets_classical(snapshot);
    const std::uint64_t list_size = snapshot.codes.size();
    if (config.mode == qna::GroverMode::List && list_size == 1) return 0.0;
    double bound = 0.0;
    for (qna::Code target : sets.realized) {
        std::uint64_t space;
        std::uint64_t multiplicity;
        if (config.mode == qna::GroverMode::List) {
            space = std::uint64_t{2};
            while (space < list_size) space <<= 1;
            multiplicity = sets.multiplicity_of(target);
        } else {
            space = std::uint64_t{1} << snapshot.encoding.bit_width();
            multiplicity = 1;
        }
        const int rounds = config.iteration_override
                               ? *config.iteration_override
                               : qna::iteration_count(space, config.multiplicity_known ? multiplicity : 0);
        const double p = qna::success_probability(space, multiplicity, rounds);
        bound += std::pow(1.0 - p, config.repetitions);
    }
    return bound;
}

// Balanced truth table over n-bit inputs: exactly half ones, seeded shuffle.
inline std::vector<std::uint8_t> random_balanced_table(int bits, qna::SeededRng& rng) {
    const std::uint64_t space = std::uint64_t{1} << bits;
    std::vector<std::uint8_t> table(space, 0);
    for (std::uint64_t i = 0; i < space / 2; ++i) table[i] = 1;
    for (std::uint64_t i = space; i > 1; --i) {
        const std::uint64_t j = rng.next_below(i);
        std::swap(table[i - 1], table[j]);
    }
    return table;
}

// Uniformly random snapshot: M codes drawn independently from 0..scale.
inline qna::Snapshot random_snapshot(std::uint64_t seed, std::size_t max_size,
                                     const qna::Encoding& enc = qna::Encoding::default_unit()) {
    qna::SeededRng rng(seed);
    const std::size_t size = 1 + static_cast<std::size_t>(rng.next_below(max_size));
    std::vector<qna::Code> codes;
    codes.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        codes.push_back(static_cast<qna::Code>(rng.next_below(static_cast<std::uint64_t>(enc.scale()) + 1)));
    }
    return snapshot_of_codes(std::move(codes), enc);
}

} // namespace fixtures

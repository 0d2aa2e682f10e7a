#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <qna/grover.hpp>

#include "support.hpp"

using qna::Code;
using qna::GroverConfig;
using qna::GroverMode;
using qna::MembershipEntry;
using qna::MembershipReport;
using qna::SeededRng;
using qna::Snapshot;

TEST_CASE("iteration schedule follows the floor formula") {
    CHECK(qna::iteration_count(128, 1) == 8);
    CHECK(qna::iteration_count(4, 1) == 1);
    CHECK(qna::iteration_count(4, 4) == 0);
    CHECK(qna::iteration_count(1024, 1024) == 0);
    CHECK(qna::iteration_count(64, 1) == 6);

    // Unknown multiplicity falls back to the worst case.
    CHECK(qna::iteration_count(128, 0) == 8);
    CHECK(qna::iteration_count(65536, 0) == 201);

    CHECK_THROWS_AS(qna::iteration_count(100, 1), qna::ValidationError);
    CHECK_THROWS_AS(qna::iteration_count(8, 9), qna::ValidationError);
}

TEST_CASE("success probability closed form") {
    CHECK(qna::success_probability(4, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qna::success_probability(8, 1, 2) == doctest::Approx(0.9453125).epsilon(1e-12));
    CHECK(qna::success_probability(128, 1, 0) == doctest::Approx(1.0 / 128.0).epsilon(1e-12));
    CHECK(qna::success_probability(64, 16, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(qna::success_probability(32, 1, 0) == doctest::Approx(1.0 / 32.0));
    CHECK(qna::success_probability(8, 0, 3) == 0.0);

    // The worked miss bound: one attempt misses with probability ~0.005 at
    // N=128, mu=1; three attempts drive it below 1.3e-7.
    const double miss = 1.0 - qna::success_probability(128, 1, qna::iteration_count(128, 1));
    CHECK(miss < 0.005);
    CHECK(miss > 0.004);
    CHECK(std::pow(miss, 3) < 1.3e-7);
}

TEST_CASE("list oracle marks exactly the positions holding the target") {
    const Snapshot snap = fixtures::snapshot_of_codes({85, 85, 50});

    const auto oracle85 = qna::build_list_oracle(snap, 85);
    CHECK(oracle85(0));
    CHECK(oracle85(1));
    CHECK_FALSE(oracle85(2));
    CHECK_FALSE(oracle85(3)); // padding position in the 4-dim space

    const auto oracle99 = qna::build_list_oracle(snap, 99);
    for (std::uint64_t j = 0; j < 4; ++j) CHECK_FALSE(oracle99(j));

    const auto single = qna::build_list_oracle(fixtures::snapshot_of_codes({7}), 7);
    CHECK(single(0));
    CHECK_FALSE(single(1));
}

TEST_CASE("domain oracle marks the target only when realized") {
    const Snapshot snap = fixtures::snapshot_of_codes({85, 85, 50});
    const qna::RealizedSets sets = qna::realized_sets_classical(snap);

    const auto present = qna::build_domain_oracle(sets, 85);
    int marks = 0;
    for (std::uint64_t x = 0; x < 128; ++x) {
        if (present(x)) ++marks;
    }
    CHECK(marks == 1);
    CHECK(present(85));

    const auto absent = qna::build_domain_oracle(sets, 99);
    for (std::uint64_t x = 0; x < 128; ++x) CHECK_FALSE(absent(x));
}

TEST_CASE("domain-mode amplification reaches the closed-form mass") {
    // S = {5} over three bits, k = 2 scheduled rounds.
    const qna::Encoding enc = qna::Encoding::full_range(3);
    const Snapshot snap = fixtures::snapshot_of_codes({5}, enc);
    const qna::RealizedSets sets = qna::realized_sets_classical(snap);
    const auto oracle = qna::build_domain_oracle(sets, 5);

    const int rounds = qna::iteration_count(8, 1);
    CHECK(rounds == 2);
    qna::StateVector sv = qna::StateVector::uniform(3);
    for (int k = 0; k < rounds; ++k) {
        sv.apply_phase_flip(oracle);
        sv.apply_diffusion();
    }
    CHECK(sv.prob_of_basis(5) == doctest::Approx(0.9453125).epsilon(1e-9));
}

TEST_CASE("membership of a present target is confirmed within the repetitions") {
    // mu = 1 in a 128-position list.
    std::vector<Code> codes(128, 3);
    codes[41] = 85;
    const Snapshot snap = fixtures::snapshot_of_codes(codes);

    GroverConfig config;
    config.seed = 2024;
    SeededRng rng(config.seed);
    const MembershipEntry entry = qna::run_membership(snap, 85, config, rng);
    CHECK(entry.present);
    CHECK(entry.iterations == 8);
    CHECK(entry.attempts >= 1);
    CHECK(entry.attempts <= 3);
    // The verified outcome is the position that holds the target.
    CHECK(snap.codes[entry.measured.back()] == 85);
}

TEST_CASE("membership of an absent target is never confirmed") {
    qna::SeededRng meta(909);
    for (int trial = 0; trial < 25; ++trial) {
        const Snapshot snap = fixtures::random_snapshot(meta.next_u64(), 64);
        const qna::RealizedSets sets = qna::realized_sets_classical(snap);
        Code target = 0;
        do {
            target = static_cast<Code>(meta.next_below(128));
        } while (sets.contains(target));

        for (GroverMode mode : {GroverMode::List, GroverMode::Domain}) {
            GroverConfig config;
            config.mode = mode;
            SeededRng rng(meta.next_u64());
            const MembershipEntry entry = qna::run_membership(snap, target, config, rng);
            CHECK_FALSE(entry.present);
            CHECK(entry.attempts == config.repetitions);
        }
    }
}

TEST_CASE("a one-element list is decided deterministically") {
    const Snapshot snap = fixtures::snapshot_of_codes({7});
    GroverConfig config;
    SeededRng rng(1);
    const MembershipEntry hit = qna::run_membership(snap, 7, config, rng);
    CHECK(hit.present);
    CHECK(hit.iterations == 0);
    CHECK(hit.attempts == 1);
    CHECK(hit.measured == std::vector<std::uint64_t>{0});

    const MembershipEntry miss = qna::run_membership(snap, 9, config, rng);
    CHECK_FALSE(miss.present);
}

TEST_CASE("grover sweep reconstructs the classical partition on the fixture corpus") {
    const auto corpus = fixtures::grover_fixture_corpus(424242);
    GroverConfig config;
    config.repetitions = 3;

    double suite_bound = 0.0;
    int checked = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        config.seed = qna::derive_seed(7001, i);
        suite_bound += fixtures::sweep_false_negative_bound(corpus[i], config);
        const qna::RealizedSets classical = qna::realized_sets_classical(corpus[i]);
        const qna::RealizedSets quantum = qna::compute_realized_sets_grover(corpus[i], config);
        CHECK(quantum.realized == classical.realized);
        CHECK(quantum.complement == classical.complement);
        CHECK(quantum.multiplicity == classical.multiplicity);
        ++checked;
    }
    CHECK(checked == 100);
    // The corpus is constructed so that the analytic false-negative bound of
    // the whole run stays below 1e-6.
    CHECK(suite_bound < 1e-6);
}

TEST_CASE("domain-mode sweep agrees with the classical partition") {
    GroverConfig config;
    config.mode = GroverMode::Domain;
    config.repetitions = 5;

    qna::SeededRng meta(31337);
    double suite_bound = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        // Few realized codes keep the analytic bound tiny at five repetitions.
        std::vector<Code> codes;
        const int distinct = 2 + static_cast<int>(meta.next_below(6));
        for (int d = 0; d < distinct; ++d) {
            const Code c = static_cast<Code>(meta.next_below(101));
            const int copies = 1 + static_cast<int>(meta.next_below(3));
            for (int r = 0; r < copies; ++r) codes.push_back(c);
        }
        const Snapshot snap = fixtures::snapshot_of_codes(codes);
        config.seed = meta.next_u64();
        suite_bound += fixtures::sweep_false_negative_bound(snap, config);
        const qna::RealizedSets classical = qna::realized_sets_classical(snap);
        const qna::RealizedSets quantum = qna::compute_realized_sets_grover(snap, config);
        CHECK(quantum.realized == classical.realized);
        CHECK(quantum.complement == classical.complement);
        CHECK(quantum.multiplicity == classical.multiplicity);
    }
    CHECK(suite_bound < 1e-6);
}

TEST_CASE("sweep accounting stays under the worst-case oracle budget") {
    const Snapshot snap = fixtures::snapshot_of_codes({85, 85, 50, 10, 10, 10});
    GroverConfig config;
    config.seed = 5;
    const MembershipReport report = qna::sweep_membership(snap, config);

    CHECK(report.entries.size() == 128);
    CHECK(report.search_space == 8); // six values padded to eight positions

    std::uint64_t total = 0;
    for (const auto& e : report.entries) total += e.oracle_calls;
    CHECK(total == report.total_oracle_calls);

    const double worst_rounds =
        std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(report.search_space)));
    CHECK(report.total_oracle_calls <=
          static_cast<std::uint64_t>(128.0 * config.repetitions * worst_rounds));

    SUBCASE("present entries count multiplicities classically") {
        const qna::RealizedSets sets = qna::compute_realized_sets_grover(snap, config);
        CHECK(sets.multiplicity_of(10) == 3);
        CHECK(sets.multiplicity_of(85) == 2);
        CHECK(sets.multiplicity_of(50) == 1);
    }
}

TEST_CASE("sweeps are deterministic for a fixed seed") {
    const Snapshot snap = fixtures::random_snapshot(999, 40);
    GroverConfig config;
    config.seed = 77;
    const MembershipReport a = qna::sweep_membership(snap, config);
    const MembershipReport b = qna::sweep_membership(snap, config);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].present == b.entries[i].present);
        CHECK(a.entries[i].measured == b.entries[i].measured);
    }
    CHECK(a.total_oracle_calls == b.total_oracle_calls);
}

TEST_CASE("unknown-multiplicity scheduling uses the worst case") {
    std::vector<Code> codes(32, 9); // mu = N: schedule would be k = 0 when known
    const Snapshot snap = fixtures::snapshot_of_codes(codes);
    GroverConfig config;
    config.multiplicity_known = false;
    SeededRng rng(3);
    const MembershipEntry entry = qna::run_membership(snap, 9, config, rng);
    CHECK(entry.iterations == qna::iteration_count(32, 0));
    CHECK(entry.present); // every position verifies regardless of rotation

    SUBCASE("iteration override pins the round count") {
        GroverConfig fixed;
        fixed.iteration_override = 2;
        SeededRng rng2(4);
        const MembershipEntry forced = qna::run_membership(snap, 9, fixed, rng2);
        CHECK(forced.iterations == 2);
    }
}

TEST_CASE("sweep rejects code spaces above the ceiling") {
    const qna::Encoding wide = qna::Encoding::full_range(13);
    const Snapshot snap = fixtures::snapshot_of_codes({1, 2, 3}, wide);
    GroverConfig config;
    CHECK_THROWS_AS(qna::sweep_membership(snap, config), qna::SizeError);
    CHECK_THROWS_AS(qna::compute_realized_sets_grover(snap, config), qna::SizeError);
}

TEST_CASE("invalid grover configuration is rejected") {
    GroverConfig config;
    config.repetitions = 0;
    CHECK_THROWS_AS(config.validate(), qna::ValidationError);
    GroverConfig negative;
    negative.iteration_override = -1;
    CHECK_THROWS_AS(negative.validate(), qna::ValidationError);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qna/errors.hpp"

namespace qna {

// An n-bit code for a quantized running summation.
using Code = std::uint32_t;

struct Edge {
    int source = 0;
    int target = 0;
    double weight = 0.0;
};

// Weighted directed graph with a global firing threshold. Node summations
// are clamped into [range_min, range_max] before thresholding and encoding.
struct Network {
    int node_count = 0;
    std::vector<Edge> edges;
    double threshold = 0.5;
    double range_min = 0.0;
    double range_max = 1.0;

    void validate() const {
        if (node_count < 1) throw ValidationError("network needs at least one node");
        if (!(range_max > range_min)) throw ValidationError("network range must be nonempty");
        if (threshold < range_min || threshold > range_max) {
            throw ValidationError("threshold outside the declared range");
        }
        std::unordered_set<std::uint64_t> pairs;
        pairs.reserve(edges.size());
        for (const auto& e : edges) {
            if (e.source < 0 || e.source >= node_count || e.target < 0 || e.target >= node_count) {
                throw ValidationError("edge references unknown node (" + std::to_string(e.source) +
                                      " -> " + std::to_string(e.target) + ")");
            }
            const std::uint64_t key =
                (static_cast<std::uint64_t>(e.source) << 32) | static_cast<std::uint32_t>(e.target);
            if (!pairs.insert(key).second) {
                throw ValidationError("duplicate edge (" + std::to_string(e.source) + " -> " +
                                      std::to_string(e.target) + ")");
            }
        }
    }
};

// Per-node firing bits at one time step.
using NodeStates = std::vector<std::uint8_t>;

// Fixed-point quantization of summations in [range_min, range_max] onto the
// integer codes 0..scale, represented with bit_width = ceil(log2(scale+1))
// bits. The default maps [0, 1] to 0..100 over 7 bits, i.e. two-decimal
// precision: 101 realizable codes in a 128-value space.
class Encoding {
public:
    Encoding(double range_min, double range_max, int scale)
        : range_min_(range_min), range_max_(range_max), scale_(scale) {
        if (!(range_max_ > range_min_)) throw ValidationError("encoding range must be nonempty");
        if (scale_ < 1) throw ValidationError("encoding scale must be >= 1");
        bit_width_ = 1;
        while ((std::uint64_t{1} << bit_width_) < static_cast<std::uint64_t>(scale_) + 1) {
            ++bit_width_;
        }
        if (bit_width_ > 24) throw SizeError("encoding wider than 24 bits unsupported");
    }

    static Encoding default_unit() { return Encoding(0.0, 1.0, 100); }

    // Full-capacity encoding: scale = 2^bits - 1, so every code is realizable.
    static Encoding full_range(int bits, double range_min = 0.0, double range_max = 1.0) {
        if (bits < 1 || bits > 24) throw SizeError("bit width must be in [1, 24]");
        return Encoding(range_min, range_max, static_cast<int>((std::uint64_t{1} << bits) - 1));
    }

    double range_min() const { return range_min_; }
    double range_max() const { return range_max_; }
    int scale() const { return scale_; }
    int bit_width() const { return bit_width_; }
    std::uint64_t capacity() const { return std::uint64_t{1} << bit_width_; }

    // Round-half-up quantization; 0.85 -> 85 on the default encoding.
    Code encode(double sigma) const {
        if (!(sigma >= range_min_ && sigma <= range_max_)) {
            throw RangeError("value " + std::to_string(sigma) + " outside encoding range [" +
                             std::to_string(range_min_) + ", " + std::to_string(range_max_) + "]");
        }
        const double unit = (sigma - range_min_) / (range_max_ - range_min_);
        return static_cast<Code>(std::floor(unit * scale_ + 0.5));
    }

    double decode(Code code) const {
        if (code > static_cast<Code>(scale_)) {
            throw RangeError("code " + std::to_string(code) + " above scale " +
                             std::to_string(scale_));
        }
        return range_min_ + static_cast<double>(code) / scale_ * (range_max_ - range_min_);
    }

    bool operator==(const Encoding& other) const {
        return range_min_ == other.range_min_ && range_max_ == other.range_max_ &&
               scale_ == other.scale_;
    }

private:
    double range_min_;
    double range_max_;
    int scale_;
    int bit_width_;
};

// The ordered list of per-node codes at observation time: the only dynamical
// input the classifier needs.
struct Snapshot {
    int time = 0;
    Encoding encoding = Encoding::default_unit();
    std::vector<Code> codes;

    void validate() const {
        if (codes.empty()) throw ValidationError("snapshot must contain at least one code");
        if (time < 0) throw ValidationError("snapshot time must be >= 0");
        for (std::size_t i = 0; i < codes.size(); ++i) {
            if (codes[i] > static_cast<Code>(encoding.scale())) {
                throw ValidationError("snapshot code " + std::to_string(codes[i]) + " at position " +
                                      std::to_string(i) + " above scale " +
                                      std::to_string(encoding.scale()));
            }
        }
    }
};

struct StepResult {
    NodeStates next;
    std::vector<double> summations;
};

// One synchronous integrate-and-fire update. Each node's running summation
// is the clamped weighted sum of its presynaptic firing bits; the node fires
// iff the summation reaches the threshold.
inline StepResult step(const Network& net, const NodeStates& state) {
    net.validate();
    if (state.size() != static_cast<std::size_t>(net.node_count)) {
        throw ValidationError("state length " + std::to_string(state.size()) +
                              " does not match node count " + std::to_string(net.node_count));
    }
    std::vector<double> sums(static_cast<std::size_t>(net.node_count), 0.0);
    for (const auto& e : net.edges) {
        if (state[static_cast<std::size_t>(e.source)]) {
            sums[static_cast<std::size_t>(e.target)] += e.weight;
        }
    }
    StepResult out;
    out.summations.resize(sums.size());
    out.next.resize(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        const double clamped = std::clamp(sums[i], net.range_min, net.range_max);
        out.summations[i] = clamped;
        out.next[i] = clamped >= net.threshold ? 1 : 0;
    }
    return out;
}

// Runs the dynamics for `horizon` steps and quantizes the final summations.
// Horizon 0 means one summation from the given state with no update
// iteration.
inline Snapshot evolve(const Network& net, NodeStates initial, int horizon,
                       const Encoding& encoding) {
    if (horizon < 0) throw ValidationError("horizon must be >= 0");
    StepResult last = step(net, initial);
    NodeStates state = std::move(last.next);
    for (int t = 1; t < horizon; ++t) {
        last = step(net, state);
        state = std::move(last.next);
    }
    Snapshot snap;
    snap.time = horizon;
    snap.encoding = encoding;
    snap.codes.reserve(last.summations.size());
    for (double sigma : last.summations) snap.codes.push_back(encoding.encode(sigma));
    snap.validate();
    return snap;
}

// Ingestion path for externally produced dynamics: quantizes a raw value
// list in order.
inline Snapshot snapshot_from_values(const std::vector<double>& values, const Encoding& encoding,
                                     int time) {
    if (values.empty()) throw ValidationError("value list must be nonempty");
    Snapshot snap;
    snap.time = time;
    snap.encoding = encoding;
    snap.codes.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        try {
            snap.codes.push_back(encoding.encode(values[i]));
        } catch (const RangeError& e) {
            throw RangeError("value at index " + std::to_string(i) + ": " + e.what());
        }
    }
    snap.validate();
    return snap;
}

} // namespace qna

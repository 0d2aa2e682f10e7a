#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "qna/errors.hpp"
#include "qna/netmodel.hpp"

namespace qna {

// Partition of the full n-bit code space into the codes realized by a
// snapshot and their complement, plus per-code occurrence counts. This is
// the exact classical construction the Grover backend is validated against.
struct RealizedSets {
    int bit_width = 0;
    std::vector<Code> realized;           // S_n, sorted ascending
    std::vector<Code> complement;         // S_n^c, sorted ascending
    std::map<Code, std::uint32_t> multiplicity; // occurrences in the snapshot, realized codes only

    std::uint64_t space_size() const { return std::uint64_t{1} << bit_width; }

    bool contains(Code code) const {
        return std::binary_search(realized.begin(), realized.end(), code);
    }

    std::uint32_t multiplicity_of(Code code) const {
        auto it = multiplicity.find(code);
        return it == multiplicity.end() ? 0 : it->second;
    }
};

// One pass over the snapshot; partition and multiplicities are exact.
inline RealizedSets realized_sets_classical(const Snapshot& snapshot) {
    snapshot.validate();
    RealizedSets sets;
    sets.bit_width = snapshot.encoding.bit_width();
    for (Code c : snapshot.codes) ++sets.multiplicity[c];
    sets.realized.reserve(sets.multiplicity.size());
    for (const auto& [code, count] : sets.multiplicity) sets.realized.push_back(code);
    const std::uint64_t space = sets.space_size();
    sets.complement.reserve(static_cast<std::size_t>(space) - sets.realized.size());
    std::size_t next = 0;
    for (std::uint64_t code = 0; code < space; ++code) {
        if (next < sets.realized.size() && sets.realized[next] == code) {
            ++next;
        } else {
            sets.complement.push_back(static_cast<Code>(code));
        }
    }
    return sets;
}

// True iff every snapshot code lands in the realized set and every realized
// code is hit by at least one snapshot entry.
inline bool surjection_check(const Snapshot& snapshot, const RealizedSets& sets) {
    for (Code c : snapshot.codes) {
        if (!sets.contains(c)) return false;
    }
    for (Code s : sets.realized) {
        if (std::find(snapshot.codes.begin(), snapshot.codes.end(), s) == snapshot.codes.end()) {
            return false;
        }
    }
    return true;
}

} // namespace qna

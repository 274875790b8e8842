#pragma once
// Homotopy moves H1-H3, shift moves, and a bounded breadth-first search used
// as a three-valued equivalence oracle (Equivalent / Unknown, never a proof
// of non-equivalence).

#include <optional>

#include "nano/core.hpp"

namespace nano {

enum class MoveKind { H1Remove, H1Insert, H2Remove, H2Insert, H3Forward, H3Backward, Shift };

struct MoveInstance {
    MoveKind kind;
    std::vector<std::pair<int, int>> site;  // (component, position) per involved spot
    Nanophrase result;
};

// An adjacent pair of positions inside one component.
struct PairSite {
    int comp = 0;
    int pos = 0;  // letters at pos, pos+1
    int first = 0, second = 0;
};

// Pattern xAByBAz with both pairs adjacent inside a component and
// label(A) = tau(label(B)).
struct H2Site {
    PairSite ab, ba;
    int a() const { return ab.first; }
    int b() const { return ab.second; }
};

// Left form xAByACzBCt with (label A, label B, label C) in S; the reverse
// matcher finds the right form xBAyCAzCBt under the same S condition.
struct H3Site {
    PairSite p1, p2, p3;
    int a = 0, b = 0, c = 0;
};

std::vector<PairSite> adjacent_pairs(const Nanophrase& p);
std::vector<H2Site> h2_sites(const Nanophrase& p, const HomotopyData& data);
std::vector<H3Site> h3_sites(const Nanophrase& p, const HomotopyData& data);
std::vector<H3Site> h3_sites_reverse(const Nanophrase& p, const HomotopyData& data);
Nanophrase apply_h3(const Nanophrase& p, const H3Site& s, bool forward);

std::vector<MoveInstance> enumerate_reductions(const Nanophrase& p, const HomotopyData& data);
std::vector<MoveInstance> enumerate_insertions(const Nanophrase& p, const HomotopyData& data,
                                               int max_rank);

Nanophrase apply_shift(const Nanophrase& p, int component, const HomotopyData& data);
std::vector<MoveInstance> shift_moves(const Nanophrase& p, const HomotopyData& data);

// Breadth-first search over canonical forms.  Returns the path length when a
// move sequence from p to q is found within the bounds, nullopt otherwise.
std::optional<int> bounded_equiv(const Nanophrase& p, const Nanophrase& q,
                                 const HomotopyData& data, int max_rank,
                                 long long max_states, bool closed);

}  // namespace nano

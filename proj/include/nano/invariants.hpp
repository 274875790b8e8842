#pragma once
// Concrete homotopy invariants: the linking matrix over pi, the bracket
// families l / l' / l'' and u, the alternation-counting T invariant, and the
// mod-2 count v4 of six rank-4 subwords of a Gauss word.
//
// Component indices are 0-based throughout; the CLI converts from 1-based.

#include "nano/formal.hpp"

namespace nano {

// Element of pi = <alpha | a + tau(a) = 0> in orientation coordinates:
// free orbits carry a signed integer, fixed orbits a bit.
struct PiElement {
    std::vector<long long> coeff;  // parallel to HomotopyData::orientation
    bool is_zero() const;
    friend bool operator==(const PiElement&, const PiElement&) = default;
};

PiElement pi_zero(const HomotopyData& data);
void pi_add_symbol(PiElement& g, Symbol s, const HomotopyData& data);
std::string pi_to_string(const PiElement& g, const HomotopyData& data);

struct LinkingMatrix {
    int components = 1;
    std::vector<PiElement> entries;  // row-major, components x components
    const PiElement& at(int i, int j) const {
        return entries[static_cast<size_t>(i * components + j)];
    }
    friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;
};

LinkingMatrix linking_matrix(const Nanophrase& p, const HomotopyData& data);

struct TaggedValue {
    long long value = 0;
    int modulus = 0;  // 0 means Z
    friend bool operator==(const TaggedValue&, const TaggedValue&) = default;
};
TaggedValue make_tagged(long long v, int modulus);
std::string to_string(const TaggedValue& t);

// T^i_{a,b} for every component and every ordered pair of orientation
// symbols; integer when both orbits are free, mod 2 otherwise.
struct TInvariant {
    int components = 1;
    int orientation_size = 0;
    std::vector<TaggedValue> values;  // [i][a][b]
    const TaggedValue& at(int i, int ai, int bi) const {
        return values[static_cast<size_t>((i * orientation_size + ai) * orientation_size + bi)];
    }
    friend bool operator==(const TInvariant&, const TInvariant&) = default;
};

TInvariant t_invariant(const Nanophrase& p, const HomotopyData& data);  // S diagonal only
TaggedValue t_entry(const Nanophrase& p, const HomotopyData& data, int comp, Symbol a, Symbol b);

enum class PatternKind { G, E, F, P };
// G: ...|A|...|A|...          E: comp i = AB, comp j = AB
// F: comp i = AB, comp j = BA P: comp i = ABAB (i == j) or ABA / B (i != j)
Nanophrase make_pattern_phrase(PatternKind kind, int r, int i, int j, Symbol a, Symbol b);

TaggedValue l_value(int i, int j, Symbol a, const Nanophrase& p, const HomotopyData& data);
TaggedValue l_prime(int i, int j, Symbol a, const Nanophrase& p, const HomotopyData& data);
TaggedValue l_double_prime(int i, int j, Symbol a, const Nanophrase& p,
                           const HomotopyData& data);
TaggedValue u_invariant(int i, int j, Symbol a, Symbol b, const Nanophrase& p,
                        const HomotopyData& data);  // S diagonal only

TaggedValue v4(const Nanophrase& w, const HomotopyData& data);  // one component, gauss data

// Adapters for the finite-type defect harness.
InvariantFn linking_fn(const HomotopyData& data, int r);
InvariantFn t_fn(const HomotopyData& data, int r);
InvariantFn u_fn(const HomotopyData& data, int i, int j, Symbol a, Symbol b);
InvariantFn l_fn(const HomotopyData& data, int i, int j, Symbol a);
InvariantFn l_prime_fn(const HomotopyData& data, int i, int j, Symbol a);
InvariantFn l_double_prime_fn(const HomotopyData& data, int i, int j, Symbol a);
InvariantFn v4_fn(const HomotopyData& data);

}  // namespace nano

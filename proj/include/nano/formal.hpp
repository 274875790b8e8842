#pragma once
// Integer linear combinations of isomorphism classes of phrases, semi-letter
// resolution, the subphrase-counting bracket, and the mutually inverse
// subphrase-sum maps theta / phi with their rank-truncated composite gamma.

#include <functional>

#include <gmpxx.h>

#include "nano/core.hpp"

namespace nano {

using Int = mpz_class;

struct FormalSum {
    int components;
    std::map<CanonicalForm, Int> terms;  // no zero coefficients stored

    explicit FormalSum(int r) : components(r) {}
    explicit FormalSum(const Nanophrase& p) : components(p.components) {
        terms.emplace(canonical_form(p), 1);
    }

    void add(const CanonicalForm& f, const Int& c);
    FormalSum& operator+=(const FormalSum& o);
    FormalSum& operator-=(const FormalSum& o);
    FormalSum& operator*=(const Int& c);
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const FormalSum&, const FormalSum&) = default;
};

struct DottedNanophrase {
    Nanophrase phrase;
    std::set<int> dots;  // subset of the occurring letter ids
};

DottedNanophrase parse_dotted_nanophrase(const std::string& text, const HomotopyData& data);
std::string print_dotted(const DottedNanophrase& d, const HomotopyData& data);

// Inclusion-exclusion over the 2^(#dots) resolutions: keeping a dotted letter
// contributes +, removing it flips the sign.
FormalSum resolve(const DottedNanophrase& d);

// Number of letter subsets of p whose induced subphrase is isomorphic to q;
// distinct subsets count separately even when isomorphic.
long long subphrase_count(const Nanophrase& q, const Nanophrase& p);
long long subphrase_count(const CanonicalForm& q, const Nanophrase& p);
Int angle_bracket(const FormalSum& q, const FormalSum& p);

FormalSum theta(const FormalSum& x);
FormalSum phi(const FormalSum& x);
FormalSum gamma(int n, const FormalSum& x);  // theta with terms of rank > n deleted

// A homotopy invariant as an opaque evaluation callback with a declared
// codomain: slot i lives in Z when moduli[i] == 0, in Z/moduli[i] otherwise.
struct InvariantFn {
    std::string name;
    std::vector<int> moduli;
    std::function<std::vector<long long>(const Nanophrase&)> eval;
};

// v extended linearly over resolve(d), reduced per slot modulus.
std::vector<long long> finite_type_defect(const InvariantFn& v, const DottedNanophrase& d);
bool all_zero(const std::vector<long long>& slots);

}  // namespace nano

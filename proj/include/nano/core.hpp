#pragma once
// Words, phrases and their homotopy data.
//
// A phrase is a sequence of components written with '|' separators; '0'
// denotes an empty component.  Every letter (A-Z, optional '.' suffix for a
// semi-letter) occurs exactly twice across the concatenation of all
// components.  A phrase text "ABC|BA|C:abc" assigns labels to letters in
// alphabetical order of the letter names: the i-th letter alphabetically
// carries the i-th token of the label word.
//
// Homotopy data configs are line based:
//   alpha: a b c          symbol tokens, unique, no whitespace/commas/parens
//   tau:   (a b) (c d)    involution as swaps; unlisted symbols are fixed
//   S:     aaa abc        triples; "diagonal" and "full" expand as expected;
//                         multi-char symbols use commas: a+,a+,a+
//   nu:    (a b)          optional second involution (shift moves)
// Lines starting with '#' are comments.  Built-in presets: gauss, vknot.

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nano {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Symbol = int;  // index into HomotopyData::alpha

struct HomotopyData {
    std::vector<std::string> alpha;
    std::vector<Symbol> tau;                 // involution, tau[tau[a]] == a
    std::set<std::array<Symbol, 3>> triples; // the set S
    std::optional<std::vector<Symbol>> nu;   // involution, present iff configured
    std::vector<Symbol> orientation;         // one representative per tau orbit

    Symbol symbol(const std::string& token) const;  // throws ParseError
    bool in_s(Symbol a, Symbol b, Symbol c) const;
    bool fixed_by_tau(Symbol a) const { return tau[static_cast<size_t>(a)] == a; }
    bool s_is_diagonal() const;
    Symbol orbit_rep(Symbol a) const;
    int orientation_index(Symbol a) const;  // index of a's orbit representative
    std::string fingerprint() const;

    static HomotopyData parse_config(const std::string& text);
    static HomotopyData preset(const std::string& name);
};

// An r-component phrase over arbitrary integer letter ids, each occurring
// exactly twice in the concatenation, with a label in alpha per letter.
struct Nanophrase {
    int components = 1;
    std::vector<std::vector<int>> comps;
    std::map<int, Symbol> labels;

    int rank() const { return static_cast<int>(labels.size()); }
    int length() const;
};

Nanophrase trivial_phrase(int components);
Nanophrase make_nanophrase(int components, std::vector<std::vector<int>> comps,
                           std::map<int, Symbol> labels);  // validates

// Letters relabelled 0,1,2,... in order of first occurrence in the
// concatenation.  Two phrases are isomorphic iff their canonical forms are
// equal.  The comparison order (rank, code, labels) matches the
// lexicographic order of the printed text for single-character alphabets.
struct CanonicalForm {
    int components = 1;
    int rank = 0;
    std::vector<int> code;       // letter ids with kSep / kEmpty markers
    std::vector<Symbol> labels;  // labels[i] = label of letter i

    static constexpr int kSep = std::numeric_limits<int>::max();
    static constexpr int kEmpty = -1;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
        if (auto c = a.components <=> b.components; c != 0) return c;
        if (auto c = a.rank <=> b.rank; c != 0) return c;
        if (auto c = a.code <=> b.code; c != 0) return c;
        return a.labels <=> b.labels;
    }
    std::string key() const;  // compact byte encoding for hashing
};

CanonicalForm canonical_form(const Nanophrase& p);
Nanophrase to_nanophrase(const CanonicalForm& f);

// All 2^rank subphrases, one per subset of letters, same component count.
std::vector<Nanophrase> subphrases(const Nanophrase& p);
Nanophrase delete_letters(const Nanophrase& p, const std::vector<int>& ids);
Nanophrase keep_letters(const Nanophrase& p, const std::vector<int>& ids);
std::vector<int> letters_in_order(const Nanophrase& p);  // by first occurrence

struct ParsedPhrase {
    Nanophrase phrase;
    std::vector<int> dotted;  // letter ids marked as semi-letters
};
ParsedPhrase parse_phrase_text(const std::string& text, const HomotopyData& data);
Nanophrase parse_nanophrase(const std::string& text, const HomotopyData& data);

std::string print_phrase(const CanonicalForm& f, const HomotopyData& data);
std::string print_phrase(const Nanophrase& p, const HomotopyData& data);

}  // namespace nano

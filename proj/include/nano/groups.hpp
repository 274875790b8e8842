#pragma once
// Exact computation of the universal degree-n groups: generator enumeration,
// relation generation (types 1-4 plus shift identifications for closed
// homotopy), integer Smith normal form, and projection of gamma to
// coordinates in the resulting abelian group.
//
// Relation-row generation is data parallel over base phrases; the OpenMP
// kernel and the plain serial loop produce identical row lists and both stay
// available (the serial path is the reference the tests compare against).

#include "nano/formal.hpp"
#include "nano/moves.hpp"

namespace nano {

// All isomorphism classes of r-component phrases of rank <= max_rank,
// ordered by rank then canonical text.
std::vector<CanonicalForm> enumerate_phrases(const HomotopyData& data, int r, int max_rank);

using Row = std::vector<std::pair<int, Int>>;  // sorted by column, no zeros

struct GroupPresentation {
    int components = 1;
    int degree = 0;
    bool closed = false;
    std::vector<CanonicalForm> generators;
    std::vector<Row> rows;
};

std::vector<Row> relation_rows_serial(const HomotopyData& data, int r, int n, bool closed);
GroupPresentation generate_relations(const HomotopyData& data, int r, int n, bool closed,
                                     int jobs = 0);  // 0 = library default threads

struct SmithResult {
    std::vector<Int> diag;                // invariant factors d1 | d2 | ..., 0 past the rank
    std::vector<std::vector<Int>> left;   // U with U*M*V = D (empty unless requested)
    std::vector<std::vector<Int>> right;  // V
};
SmithResult smith_normal_form(std::vector<std::vector<Int>> m, bool want_left, bool want_right);

struct AbelianGroupStructure {
    int components = 1;
    int degree = 0;
    bool closed = false;
    std::string data_fingerprint;
    std::vector<CanonicalForm> generators;
    int free_rank = 0;
    std::vector<Int> torsion;             // factors >= 2, each dividing the next
    std::vector<std::vector<Int>> basis;  // column transform V of the relation matrix
    std::vector<Int> diag;                // per generator column, 0 for free

    std::string to_string() const;  // "Z (+) Z/2"
    // coordinates of a formal sum: torsion residues first, then free parts
    std::vector<Int> coordinates(const FormalSum& x) const;
};

AbelianGroupStructure group_structure(const HomotopyData& data, int r, int n, bool closed,
                                      int jobs = 0);

std::vector<Int> gamma_coordinates(const Nanophrase& p, const AbelianGroupStructure& g,
                                   const HomotopyData& data, bool normalized);

// Exhaustive finite-type check: first dotted phrase (in enumeration order)
// with num_dots dots and rank <= max_rank whose defect under v is nonzero.
std::optional<DottedNanophrase> find_defect_counterexample(const HomotopyData& data, int r,
                                                           int max_rank, int num_dots,
                                                           const InvariantFn& v, int jobs = 0);

}  // namespace nano

#include <doctest.h>

#include "nano/groups.hpp"
#include "nano/invariants.hpp"
#include "support.hpp"

using namespace nano;
using namespace nano::testing;

namespace {

HomotopyData two_free_diag() {
    // two free orbits, S diagonal
    return HomotopyData::parse_config("alpha: a b c d\ntau: (a b) (c d)\nS: diagonal\n");
}

// independent route for l: the angle bracket formula instead of the
// linking-matrix coefficient
TaggedValue l_via_bracket(int i, int j, Symbol a, const Nanophrase& p, const HomotopyData& d) {
    FormalSum comb(p.components);
    comb.add(canonical_form(make_pattern_phrase(PatternKind::G, p.components, i, j, a, a)), 1);
    if (!d.fixed_by_tau(a)) {
        Symbol b = d.tau[static_cast<size_t>(a)];
        comb.add(canonical_form(make_pattern_phrase(PatternKind::G, p.components, i, j, b, b)),
                 -1);
        return make_tagged(angle_bracket(comb, FormalSum(p)).get_si(), 0);
    }
    return make_tagged(angle_bracket(comb, FormalSum(p)).get_si(), 2);
}

// the 45 H3 pairs tabulated for the v4 invariance proof, left form first
const std::vector<std::pair<const char*, const char*>>& h3_table_pairs() {
    static const std::vector<std::pair<const char*, const char*>> pairs = {
        {"DABDACEBCE", "DBADCAECBE"}, {"DABEACDBCE", "DBAECADCBE"},
        {"DABEACEBCD", "DBAECAECBD"}, {"DEABDACEBC", "DEBADCAECB"},
        {"DEABEACDBC", "DEBAECADCB"}, {"DEABDACBCE", "DEBADCACBE"},
        {"DEABEACBCD", "DEBAECACBD"}, {"DEABACDBCE", "DEBACADCBE"},
        {"DEABACEBCD", "DEBACAECBD"}, {"DABDEACEBC", "DBADECAECB"},
        {"DABEDACEBC", "DBAEDCAECB"}, {"DABDEACBCE", "DBADECACBE"},
        {"DABEDACBCE", "DBAEDCACBE"}, {"ABDEACDBCE", "BADECADCBE"},
        {"ABDEACEBCD", "BADECAECBD"}, {"DABEACDEBC", "DBAECADECB"},
        {"DABEACEDBC", "DBAECAEDCB"}, {"DABACDEBCE", "DBACADECBE"},
        {"DABACEDBCE", "DBACAEDCBE"}, {"ABDACDEBCE", "BADCADECBE"},
        {"ABDACEDBCE", "BADCAEDCBE"}, {"DABEACBCDE", "DBAECACBDE"},
        {"DABEACBCED", "DBAECACBED"}, {"DABACEBCDE", "DBACAECBDE"},
        {"DABACEBCED", "DBACAECBED"}, {"ABDACEBCDE", "BADCAECBDE"},
        {"ABDACEBCED", "BADCAECBED"}, {"DEDABEACBC", "DEDBAECACB"},
        {"DEDABACEBC", "DEDBACAECB"}, {"DEDABACBCE", "DEDBACACBE"},
        {"DABEDEACBC", "DBAEDECACB"}, {"ABDEDACEBC", "BADEDCAECB"},
        {"ABDEDACBCE", "BADEDCACBE"}, {"DABACEDEBC", "DBACAEDECB"},
        {"ABDACEDEBC", "BADCAEDECB"}, {"ABACDEDBCE", "BACADEDCBE"},
        {"DABACBCEDE", "DBACACBEDE"}, {"ABDACBCEDE", "BADCACBEDE"},
        {"ABACDBCEDE", "BACADCBEDE"},
    };
    return pairs;
}

const std::vector<std::pair<const char*, const char*>>& h3_table2_pairs() {
    static const std::vector<std::pair<const char*, const char*>> pairs = {
        {"DABDACBC", "DBADCACB"}, {"DABACDBC", "DBACADCB"}, {"DABACBCD", "DBACACBD"},
        {"ABDACDBC", "BADCADCB"}, {"ABDACBCD", "BADCACBD"}, {"ABACDBCD", "BACADCBD"},
    };
    return pairs;
}

Nanophrase parse_word(const std::string& w, const HomotopyData& gw) {
    return parse_nanophrase(w + ":" + std::string(w.size() / 2, 'a'), gw);
}

}  // namespace

TEST_CASE("pi elements accumulate in orientation coordinates") {
    HomotopyData d = mixed_data();  // a fixed; {b, c} free with representative b
    PiElement g = pi_zero(d);
    pi_add_symbol(g, d.symbol("b"), d);
    pi_add_symbol(g, d.symbol("c"), d);
    CHECK(g.is_zero());  // b + tau(b) = 0
    pi_add_symbol(g, d.symbol("a"), d);
    pi_add_symbol(g, d.symbol("a"), d);
    CHECK(g.is_zero());  // 2a = 0 on the fixed orbit
    pi_add_symbol(g, d.symbol("c"), d);
    CHECK(g.coeff == std::vector<long long>{0, -1});
    CHECK(pi_to_string(g, d) == "-1·b");
}

TEST_CASE("linking matrix of AB|A|B") {
    HomotopyData free2 = HomotopyData::parse_config("alpha: a b\ntau: (a b)\nS:\n");
    LinkingMatrix m = linking_matrix(parse_nanophrase("AB|A|B:ab", free2), free2);
    CHECK(m.at(0, 1).coeff == std::vector<long long>{1});   // a
    CHECK(m.at(0, 2).coeff == std::vector<long long>{-1});  // b = -a in pi
    CHECK(m.at(1, 2).is_zero());
    CHECK(m.at(0, 0).is_zero());
    CHECK(m.at(1, 0) == m.at(0, 1));

    HomotopyData fixed2 = HomotopyData::parse_config("alpha: a b\ntau:\nS:\n");
    LinkingMatrix mf = linking_matrix(parse_nanophrase("AB|A|B:ab", fixed2), fixed2);
    CHECK(mf.at(0, 1).coeff == std::vector<long long>{1, 0});
    CHECK(mf.at(0, 2).coeff == std::vector<long long>{0, 1});

    LinkingMatrix one = linking_matrix(parse_nanophrase("ABAB:aa", fixed2), fixed2);
    CHECK(one.components == 1);
    CHECK(one.at(0, 0).is_zero());
}

TEST_CASE("the two T-independence phrases share a linking matrix") {
    HomotopyData d = mixed_data();  // labels a, b, tau(b) = c
    Nanophrase p1 = parse_nanophrase("ABAC|BC|0:abc", d);
    Nanophrase p2 = parse_nanophrase("ABAC|0|BC:abc", d);
    CHECK(linking_matrix(p1, d) == linking_matrix(p2, d));
}

TEST_CASE("l agrees with its angle bracket formula") {
    Rng rng(71);
    HomotopyData d = mixed_data();
    Symbol a = d.symbol("a"), b = d.symbol("b");
    CHECK(l_value(0, 1, a, trivial_phrase(2), d).value == 0);
    for (int it = 0; it < 300; ++it) {
        Nanophrase p = random_phrase(rng, d, 2, 4);
        CHECK(l_value(0, 1, a, p, d) == l_via_bracket(0, 1, a, p, d));
        CHECK(l_value(0, 1, b, p, d) == l_via_bracket(0, 1, b, p, d));
    }
    CHECK_THROWS_AS(l_value(1, 0, a, trivial_phrase(2), d), PreconditionError);
    CHECK_THROWS_AS(l_value(0, 1, d.symbol("c"), trivial_phrase(2), d), PreconditionError);
}

TEST_CASE("l' squares l and l'' reproduces the l bit") {
    Rng rng(73);
    HomotopyData d = mixed_data();
    Symbol a = d.symbol("a"), b = d.symbol("b");
    for (int it = 0; it < 1000; ++it) {
        Nanophrase p = random_phrase(rng, d, 2, 4);
        long long lb = l_value(0, 1, b, p, d).value;  // b is free, value in Z
        CHECK(l_prime(0, 1, b, p, d).value == lb * lb);
        long long la = l_value(0, 1, a, p, d).value;  // a is fixed, a bit
        long long lpp = l_double_prime(0, 1, a, p, d).value;
        CHECK((lpp == 0 || lpp == 1));
        CHECK(lpp == la);
    }
    CHECK_THROWS_AS(l_prime(0, 1, a, trivial_phrase(2), d), PreconditionError);
    CHECK_THROWS_AS(l_double_prime(0, 1, b, trivial_phrase(2), d), PreconditionError);
}

TEST_CASE("pattern phrases match their definitions") {
    HomotopyData d = two_free_diag();
    Symbol a = d.symbol("a"), c = d.symbol("c");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::G, 2, 0, 1, a, a), d) == "A|A:a");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::E, 2, 0, 1, a, c), d) == "AB|AB:ac");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::F, 2, 0, 1, a, c), d) == "AB|BA:ac");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::P, 1, 0, 0, a, c), d) == "ABAB:ac");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::P, 3, 0, 2, a, c), d) == "ABA|0|B:ac");
    CHECK(print_phrase(make_pattern_phrase(PatternKind::P, 2, 1, 0, a, c), d) == "A|BAB:ca");
    CHECK_THROWS_AS(make_pattern_phrase(PatternKind::G, 2, 1, 1, a, a), PreconditionError);
    CHECK_THROWS_AS(make_pattern_phrase(PatternKind::P, 2, 0, 5, a, c), PreconditionError);
}

TEST_CASE("u on the worked examples") {
    HomotopyData d = two_free_diag();
    Symbol a = d.symbol("a"), c = d.symbol("c");
    Nanophrase pat = make_pattern_phrase(PatternKind::P, 2, 0, 1, a, c);
    CHECK(u_invariant(0, 1, a, c, pat, d) == make_tagged(1, 0));
    CHECK(u_invariant(0, 1, a, a, make_pattern_phrase(PatternKind::P, 2, 0, 1, a, a), d) ==
          make_tagged(1, 0));
    CHECK(u_invariant(0, 1, a, c, parse_nanophrase("B|B:c", d), d) == make_tagged(0, 0));

    CHECK_THROWS_AS(u_invariant(0, 0, a, a, pat, d), PreconditionError);
    HomotopyData vk = HomotopyData::preset("vknot");
    CHECK_THROWS_AS(u_invariant(0, 1, 0, 1, trivial_phrase(2), vk), PreconditionError);
    CHECK_THROWS_AS(u_invariant(0, 1, d.symbol("b"), c, pat, d), PreconditionError);
}

TEST_CASE("u distinguishes the pair that T cannot") {
    HomotopyData d = mixed_data();
    Symbol a = d.symbol("a"), b = d.symbol("b");
    Nanophrase p1 = parse_nanophrase("ABAC|BC|0:abc", d);
    Nanophrase p2 = parse_nanophrase("ABAC|0|BC:abc", d);
    TaggedValue u1 = u_invariant(0, 1, a, b, p1, d);
    TaggedValue u2 = u_invariant(0, 1, a, b, p2, d);
    CHECK(u1.value == 1);
    CHECK(u2.value == 0);
    CHECK(t_invariant(p1, d) == t_invariant(p2, d));
    CHECK(linking_matrix(p1, d) == linking_matrix(p2, d));
}

TEST_CASE("T entries satisfy the tau symmetries") {
    Rng rng(79);
    HomotopyData d = mixed_data();
    for (int it = 0; it < 200; ++it) {
        Nanophrase p = random_phrase(rng, d, 2, 4);
        for (Symbol a = 0; a < 3; ++a)
            for (Symbol b = 0; b < 3; ++b) {
                Symbol ta = d.tau[static_cast<size_t>(a)], tb = d.tau[static_cast<size_t>(b)];
                TaggedValue t = t_entry(p, d, 0, a, b);
                CHECK(t_entry(p, d, 0, ta, b) == make_tagged(-t.value, t.modulus));
                CHECK(t_entry(p, d, 0, a, tb) == make_tagged(-t.value, t.modulus));
                CHECK(t_entry(p, d, 0, ta, tb) == t);
            }
    }
}

// T^i_{a,b} decomposes over u: interleaved pairs inside component i give the
// u_{i,i} difference, a partner letter crossing into a later component j
// alternates as XYXY (+u_{i,j,a,b}), into an earlier one as YXYX (-u_{i,j,a,b}).
TEST_CASE("T is a signed combination of u invariants") {
    Rng rng(83);
    auto combination = [](const Nanophrase& p, const HomotopyData& d, int i, Symbol a,
                          Symbol b) {
        long long expect = 0;
        if (a != b) {
            expect += u_invariant(i, i, a, b, p, d).value;
            expect -= u_invariant(i, i, b, a, p, d).value;
        }
        for (int j = 0; j < i; ++j) expect -= u_invariant(i, j, a, b, p, d).value;
        for (int j = i + 1; j < p.components; ++j)
            expect += u_invariant(i, j, a, b, p, d).value;
        return expect;
    };
    HomotopyData d = two_free_diag();  // both orbits free keeps everything in Z
    for (int it = 0; it < 150; ++it) {
        int r = 1 + static_cast<int>(rng.below(3));
        Nanophrase p = random_phrase(rng, d, r, 4);
        for (int i = 0; i < r; ++i)
            for (Symbol a : d.orientation)
                for (Symbol b : d.orientation)
                    CHECK(t_entry(p, d, i, a, b).value == combination(p, d, i, a, b));
    }
    // and the mod-2 flavor over a mixed alphabet
    HomotopyData m = mixed_data();
    for (int it = 0; it < 150; ++it) {
        Nanophrase p = random_phrase(rng, m, 2, 4);
        for (int i = 0; i < 2; ++i)
            for (Symbol a : m.orientation)
                for (Symbol b : m.orientation) {
                    if (!m.fixed_by_tau(a) && !m.fixed_by_tau(b)) continue;
                    long long expect = combination(p, m, i, a, b);
                    CHECK(t_entry(p, m, i, a, b).value == ((expect % 2) + 2) % 2);
                }
    }
}

TEST_CASE("T of the trivial phrase vanishes") {
    HomotopyData d = mixed_data();
    TInvariant t = t_invariant(trivial_phrase(3), d);
    for (const auto& v : t.values) CHECK(v.value == 0);
    CHECK_THROWS_AS(t_invariant(trivial_phrase(1), HomotopyData::preset("vknot")),
                    PreconditionError);
}

TEST_CASE("v4 on the six patterns, the counterexample and the trivial word") {
    HomotopyData gw = HomotopyData::preset("gauss");
    for (const char* w : {"ABACDCBD", "ABCACDBD", "ABCADBDC", "ABCBDACD", "ABCDBDAC",
                          "ABCDCADB"})
        CHECK(v4(parse_word(w, gw), gw) == make_tagged(1, 2));
    CHECK(v4(parse_word("ABACDCBD", gw), gw).value == 1);
    CHECK(v4(trivial_phrase(1), gw) == make_tagged(0, 2));
    CHECK_THROWS_AS(v4(trivial_phrase(2), gw), PreconditionError);
    CHECK_THROWS_AS(v4(trivial_phrase(1), mixed_data()), PreconditionError);
}

TEST_CASE("the tabulated H3 pairs: matched site, v4 and T agree across the move") {
    HomotopyData gw = HomotopyData::preset("gauss");
    auto check_pair = [&](const char* from, const char* to) {
        Nanophrase w = parse_word(from, gw);
        Nanophrase img = parse_word(to, gw);
        bool matched = false;
        for (const auto& s : h3_sites(w, gw))
            if (canonical_form(apply_h3(w, s, true)) == canonical_form(img)) matched = true;
        CHECK(matched);
        CHECK(v4(w, gw) == v4(img, gw));
        CHECK(t_invariant(w, gw) == t_invariant(img, gw));
    };
    for (const auto& [from, to] : h3_table_pairs()) check_pair(from, to);
    for (const auto& [from, to] : h3_table2_pairs()) check_pair(from, to);
    // the rank-4 rows carry known v4 values
    const long long expect[6] = {0, 1, 0, 0, 1, 0};
    for (size_t i = 0; i < 6; ++i)
        CHECK(v4(parse_word(h3_table2_pairs()[i].first, gw), gw).value == expect[i]);
}

TEST_CASE("invariance under random move sequences, small sample") {
    Rng rng(89);
    HomotopyData d = mixed_data();
    Symbol a = d.symbol("a"), b = d.symbol("b");
    for (int it = 0; it < 400; ++it) {
        Nanophrase p = random_phrase(rng, d, 2, 4);
        LinkingMatrix lm = linking_matrix(p, d);
        TInvariant t = t_invariant(p, d);
        TaggedValue u = u_invariant(0, 1, a, b, p, d);
        Nanophrase cur = p;
        for (int step = 0; step < 4; ++step) {
            auto next = random_move_result(rng, cur, d, 6, false);
            if (!next) break;
            cur = *next;
        }
        CHECK(linking_matrix(cur, d) == lm);
        CHECK(t_invariant(cur, d) == t);
        CHECK(u_invariant(0, 1, a, b, cur, d) == u);
    }
    // linking matrix also survives shift moves
    for (int it = 0; it < 200; ++it) {
        Nanophrase p = random_phrase(rng, d, 2, 4);
        LinkingMatrix lm = linking_matrix(p, d);
        Nanophrase cur = p;
        for (int step = 0; step < 4; ++step) {
            auto next = random_move_result(rng, cur, d, 6, true);
            if (!next) break;
            cur = *next;
        }
        CHECK(linking_matrix(cur, d) == lm);
    }
    // v4 under gauss moves
    HomotopyData gw = HomotopyData::preset("gauss");
    for (int it = 0; it < 300; ++it) {
        Nanophrase p = random_phrase(rng, gw, 1, 5);
        TaggedValue v = v4(p, gw);
        Nanophrase cur = p;
        for (int step = 0; step < 3; ++step) {
            auto next = random_move_result(rng, cur, gw, 6, false);
            if (!next) break;
            cur = *next;
        }
        CHECK(v4(cur, gw) == v);
    }
}

TEST_CASE("degree witnesses one dot below the vanishing level") {
    HomotopyData d = mixed_data();
    // linking matrix: nonzero defect on a single dot
    auto w1 = find_defect_counterexample(d, 2, 2, 1, linking_fn(d, 2));
    REQUIRE(w1.has_value());
    CHECK(w1->dots.size() == 1);
    // u and T: nonzero defect on two dots
    auto w2 = find_defect_counterexample(d, 2, 2, 2,
                                         u_fn(d, 0, 1, d.symbol("a"), d.symbol("b")));
    REQUIRE(w2.has_value());
    auto w3 = find_defect_counterexample(d, 2, 2, 2, t_fn(d, 2));
    REQUIRE(w3.has_value());
    // v4: nonzero defect on four dots
    HomotopyData gw = HomotopyData::preset("gauss");
    auto w4 = find_defect_counterexample(gw, 1, 4, 4, v4_fn(gw));
    REQUIRE(w4.has_value());
    CHECK(!all_zero(finite_type_defect(v4_fn(gw), *w4)));
}

TEST_CASE("v4 vanishes on five dots over rank five, the small sweep") {
    HomotopyData gw = HomotopyData::preset("gauss");
    CHECK(!find_defect_counterexample(gw, 1, 5, 5, v4_fn(gw)).has_value());
}

TEST_CASE("linking matrix vanishes on two dots, rank up to three") {
    HomotopyData d = mixed_data();
    CHECK(!find_defect_counterexample(d, 1, 3, 2, linking_fn(d, 1)).has_value());
    CHECK(!find_defect_counterexample(d, 2, 3, 2, linking_fn(d, 2)).has_value());
}

TEST_CASE("v4 is not invariant under shift moves") {
    HomotopyData gw = HomotopyData::preset("gauss");
    bool witness = false;
    std::string found;
    for (const auto& f : enumerate_phrases(gw, 1, 5)) {
        Nanophrase w = to_nanophrase(f);
        Nanophrase shifted = apply_shift(w, 0, gw);
        if (v4(w, gw) != v4(shifted, gw)) {
            witness = true;
            found = print_phrase(w, gw);
            break;
        }
    }
    CHECK(witness);
    MESSAGE("shift witness: ", found);
}

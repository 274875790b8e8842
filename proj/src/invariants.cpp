#include "nano/invariants.hpp"

#include <algorithm>
#include <sstream>

namespace nano {

/******** pi ********/

bool PiElement::is_zero() const {
    return std::all_of(coeff.begin(), coeff.end(), [](long long v) { return v == 0; });
}

PiElement pi_zero(const HomotopyData& data) {
    return PiElement{std::vector<long long>(data.orientation.size(), 0)};
}

void pi_add_symbol(PiElement& g, Symbol s, const HomotopyData& data) {
    Symbol rep = data.orbit_rep(s);
    int idx = data.orientation_index(s);
    if (data.fixed_by_tau(s)) {
        g.coeff[static_cast<size_t>(idx)] ^= 1;
    } else {
        g.coeff[static_cast<size_t>(idx)] += (s == rep) ? 1 : -1;
    }
}

std::string pi_to_string(const PiElement& g, const HomotopyData& data) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < g.coeff.size(); ++i) {
        if (g.coeff[i] == 0) continue;
        if (!first) os << " + ";
        os << g.coeff[i] << "·" << data.alpha[static_cast<size_t>(data.orientation[i])];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

/******** linking matrix ********/

LinkingMatrix linking_matrix(const Nanophrase& p, const HomotopyData& data) {
    int r = p.components;
    LinkingMatrix m;
    m.components = r;
    m.entries.assign(static_cast<size_t>(r * r), pi_zero(data));

    std::map<int, std::pair<int, int>> comp_of;  // letter -> its two components
    for (int ci = 0; ci < r; ++ci)
        for (int id : p.comps[static_cast<size_t>(ci)]) {
            auto it = comp_of.find(id);
            if (it == comp_of.end())
                comp_of[id] = {ci, -1};
            else
                it->second.second = ci;
        }
    for (const auto& [id, cc] : comp_of) {
        auto [i, j] = cc;
        if (i == j) continue;
        pi_add_symbol(m.entries[static_cast<size_t>(i * r + j)], p.labels.at(id), data);
        pi_add_symbol(m.entries[static_cast<size_t>(j * r + i)], p.labels.at(id), data);
    }
    return m;
}

/******** tagged values ********/

TaggedValue make_tagged(long long v, int modulus) {
    if (modulus > 0) v = ((v % modulus) + modulus) % modulus;
    return {v, modulus};
}

std::string to_string(const TaggedValue& t) {
    std::string s = std::to_string(t.value);
    if (t.modulus > 0) s += " (mod " + std::to_string(t.modulus) + ")";
    return s;
}

/******** T invariant ********/

namespace {

struct Occurrences {
    // letter id -> (first, second) position in the concatenation, and the
    // component of each occurrence
    std::map<int, std::array<int, 2>> pos;
    std::map<int, std::array<int, 2>> comp;
};

Occurrences occurrences(const Nanophrase& p) {
    Occurrences o;
    int at = 0;
    for (size_t ci = 0; ci < p.comps.size(); ++ci)
        for (int id : p.comps[ci]) {
            if (o.pos.count(id)) {
                o.pos[id][1] = at;
                o.comp[id][1] = static_cast<int>(ci);
            } else {
                o.pos[id] = {at, -1};
                o.comp[id] = {static_cast<int>(ci), -1};
            }
            ++at;
        }
    return o;
}

// +1 when X and Y alternate starting with X, -1 starting with Y, else 0
int alternation(const std::array<int, 2>& x, const std::array<int, 2>& y) {
    if (x[0] < y[0] && y[0] < x[1] && x[1] < y[1]) return 1;
    if (y[0] < x[0] && x[0] < y[1] && y[1] < x[1]) return -1;
    return 0;
}

int epsilon(Symbol x, Symbol a, const HomotopyData& data) {
    if (x == a) return 1;
    if (x == data.tau[static_cast<size_t>(a)] && !data.fixed_by_tau(a)) return -1;
    return 0;
}

}  // namespace

TaggedValue t_entry(const Nanophrase& p, const HomotopyData& data, int comp, Symbol a, Symbol b) {
    if (!data.s_is_diagonal()) throw PreconditionError("T is an invariant only for diagonal S");
    Occurrences o = occurrences(p);
    long long total = 0;
    for (const auto& [x, cc] : o.comp) {
        if (cc[0] != comp || cc[1] != comp) continue;
        int ea = epsilon(p.labels.at(x), a, data);
        if (ea == 0) continue;
        for (const auto& [y, yp] : o.pos) {
            if (y == x) continue;
            int eb = epsilon(p.labels.at(y), b, data);
            if (eb == 0) continue;
            total += static_cast<long long>(ea) * eb * alternation(o.pos.at(x), yp);
        }
    }
    bool integral = !data.fixed_by_tau(a) && !data.fixed_by_tau(b);
    return make_tagged(total, integral ? 0 : 2);
}

TInvariant t_invariant(const Nanophrase& p, const HomotopyData& data) {
    if (!data.s_is_diagonal()) throw PreconditionError("T is an invariant only for diagonal S");
    int os = static_cast<int>(data.orientation.size());
    TInvariant t;
    t.components = p.components;
    t.orientation_size = os;

    Occurrences o = occurrences(p);
    std::vector<long long> acc(static_cast<size_t>(p.components) * os * os, 0);
    for (const auto& [x, cc] : o.comp) {
        if (cc[0] != cc[1]) continue;
        int i = cc[0];
        for (const auto& [y, yp] : o.pos) {
            if (y == x) continue;
            int nv = alternation(o.pos.at(x), yp);
            if (nv == 0) continue;
            for (int ai = 0; ai < os; ++ai) {
                int ea = epsilon(p.labels.at(x), data.orientation[static_cast<size_t>(ai)], data);
                if (ea == 0) continue;
                for (int bi = 0; bi < os; ++bi) {
                    int eb =
                        epsilon(p.labels.at(y), data.orientation[static_cast<size_t>(bi)], data);
                    if (eb == 0) continue;
                    acc[static_cast<size_t>((i * os + ai) * os + bi)] +=
                        static_cast<long long>(ea) * eb * nv;
                }
            }
        }
    }
    size_t k = 0;
    for (int i = 0; i < p.components; ++i)
        for (int ai = 0; ai < os; ++ai)
            for (int bi = 0; bi < os; ++bi, ++k) {
                Symbol a = data.orientation[static_cast<size_t>(ai)];
                Symbol b = data.orientation[static_cast<size_t>(bi)];
                bool integral = !data.fixed_by_tau(a) && !data.fixed_by_tau(b);
                t.values.push_back(make_tagged(acc[k], integral ? 0 : 2));
            }
    return t;
}

/******** pattern phrases ********/

Nanophrase make_pattern_phrase(PatternKind kind, int r, int i, int j, Symbol a, Symbol b) {
    if (i < 0 || i >= r || j < 0 || j >= r) throw PreconditionError("component index out of range");
    Nanophrase p = trivial_phrase(r);
    const int A = 0, B = 1;
    switch (kind) {
        case PatternKind::G:
            if (i >= j) throw PreconditionError("g pattern needs i < j");
            p.comps[static_cast<size_t>(i)] = {A};
            p.comps[static_cast<size_t>(j)] = {A};
            p.labels[A] = a;
            return p;
        case PatternKind::E:
            if (i >= j) throw PreconditionError("e pattern needs i < j");
            p.comps[static_cast<size_t>(i)] = {A, B};
            p.comps[static_cast<size_t>(j)] = {A, B};
            break;
        case PatternKind::F:
            if (i >= j) throw PreconditionError("f pattern needs i < j");
            p.comps[static_cast<size_t>(i)] = {A, B};
            p.comps[static_cast<size_t>(j)] = {B, A};
            break;
        case PatternKind::P:
            if (i == j) {
                p.comps[static_cast<size_t>(i)] = {A, B, A, B};
            } else {
                p.comps[static_cast<size_t>(i)] = {A, B, A};
                p.comps[static_cast<size_t>(j)] = {B};
            }
            break;
    }
    p.labels[A] = a;
    p.labels[B] = b;
    return p;
}

/******** l family ********/

TaggedValue l_value(int i, int j, Symbol a, const Nanophrase& p, const HomotopyData& data) {
    if (i >= j) throw PreconditionError("l needs i < j");
    if (j >= p.components) throw PreconditionError("component index out of range");
    if (data.orientation_index(a) < 0 || data.orbit_rep(a) != a)
        throw PreconditionError("symbol must belong to the orientation");
    LinkingMatrix m = linking_matrix(p, data);
    long long c = m.at(i, j).coeff[static_cast<size_t>(data.orientation_index(a))];
    return make_tagged(c, data.fixed_by_tau(a) ? 2 : 0);
}

TaggedValue l_prime(int i, int j, Symbol a, const Nanophrase& p, const HomotopyData& data) {
    if (i >= j) throw PreconditionError("l' needs i < j");
    if (data.fixed_by_tau(a)) throw PreconditionError("l' needs a != tau(a)");
    Symbol b = data.tau[static_cast<size_t>(a)];
    int r = p.components;
    FormalSum comb(r);
    auto add = [&](PatternKind k, Symbol x, Symbol y, int coeff) {
        comb.add(canonical_form(make_pattern_phrase(k, r, i, j, x, y)), coeff);
    };
    add(PatternKind::E, a, a, 2);
    add(PatternKind::F, a, a, 2);
    add(PatternKind::E, a, b, -2);
    add(PatternKind::F, a, b, -2);
    add(PatternKind::E, b, a, -2);
    add(PatternKind::F, b, a, -2);
    add(PatternKind::E, b, b, 2);
    add(PatternKind::F, b, b, 2);
    add(PatternKind::G, a, a, 1);
    add(PatternKind::G, b, b, 1);
    Int v = angle_bracket(comb, FormalSum(p));
    return make_tagged(v.get_si(), 0);
}

TaggedValue l_double_prime(int i, int j, Symbol a, const Nanophrase& p,
                           const HomotopyData& data) {
    if (i >= j) throw PreconditionError("l'' needs i < j");
    if (!data.fixed_by_tau(a)) throw PreconditionError("l'' needs a = tau(a)");
    int r = p.components;
    FormalSum comb(r);
    comb.add(canonical_form(make_pattern_phrase(PatternKind::E, r, i, j, a, a)), 2);
    comb.add(canonical_form(make_pattern_phrase(PatternKind::F, r, i, j, a, a)), 2);
    comb.add(canonical_form(make_pattern_phrase(PatternKind::G, r, i, j, a, a)), 1);
    Int v = angle_bracket(comb, FormalSum(p));
    return make_tagged(v.get_si(), 4);
}

/******** u ********/

TaggedValue u_invariant(int i, int j, Symbol a, Symbol b, const Nanophrase& p,
                        const HomotopyData& data) {
    if (!data.s_is_diagonal()) throw PreconditionError("u is an invariant only for diagonal S");
    if (i == j && a == b) throw PreconditionError("u_{i,i,a,a} is not a homotopy invariant");
    if (data.orbit_rep(a) != a || data.orbit_rep(b) != b)
        throw PreconditionError("symbols must belong to the orientation");
    int r = p.components;
    Symbol ta = data.tau[static_cast<size_t>(a)];
    Symbol tb = data.tau[static_cast<size_t>(b)];
    bool fa = data.fixed_by_tau(a), fb = data.fixed_by_tau(b);

    FormalSum comb(r);
    auto add = [&](Symbol x, Symbol y, int coeff) {
        comb.add(canonical_form(make_pattern_phrase(PatternKind::P, r, i, j, x, y)), coeff);
    };
    add(a, b, 1);
    if (!fa) add(ta, b, -1);
    if (!fb) add(a, tb, -1);
    if (!fa && !fb) add(ta, tb, 1);
    Int v = angle_bracket(comb, FormalSum(p));
    return make_tagged(v.get_si(), (!fa && !fb) ? 0 : 2);
}

/******** v4 ********/

namespace {

const std::vector<CanonicalForm>& v4_patterns() {
    static const std::vector<CanonicalForm> pats = [] {
        HomotopyData gw = HomotopyData::preset("gauss");
        std::vector<CanonicalForm> v;
        for (const char* w : {"ABACDCBD", "ABCACDBD", "ABCADBDC", "ABCBDACD", "ABCDBDAC",
                              "ABCDCADB"})
            v.push_back(canonical_form(parse_nanophrase(std::string(w) + ":aaaa", gw)));
        return v;
    }();
    return pats;
}

}  // namespace

TaggedValue v4(const Nanophrase& w, const HomotopyData& data) {
    if (w.components != 1) throw PreconditionError("v4 is defined for one-component words");
    if (data.alpha.size() != 1 || !data.s_is_diagonal())
        throw PreconditionError("v4 needs the gauss homotopy data");
    long long total = 0;
    for (const auto& pat : v4_patterns()) total += subphrase_count(pat, w);
    return make_tagged(total, 2);
}

/******** defect-harness adapters ********/

InvariantFn linking_fn(const HomotopyData& data, int r) {
    std::vector<int> moduli;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (Symbol s : data.orientation) moduli.push_back(data.fixed_by_tau(s) ? 2 : 0);
    return {"linking", std::move(moduli), [&data, r](const Nanophrase& p) {
                LinkingMatrix m = linking_matrix(p, data);
                std::vector<long long> out;
                for (int i = 0; i < r; ++i)
                    for (int j = i + 1; j < r; ++j)
                        for (long long c : m.at(i, j).coeff) out.push_back(c);
                return out;
            }};
}

InvariantFn t_fn(const HomotopyData& data, int r) {
    std::vector<int> moduli;
    for (int i = 0; i < r; ++i)
        for (Symbol a : data.orientation)
            for (Symbol b : data.orientation)
                moduli.push_back((!data.fixed_by_tau(a) && !data.fixed_by_tau(b)) ? 0 : 2);
    return {"t", std::move(moduli), [&data](const Nanophrase& p) {
                TInvariant t = t_invariant(p, data);
                std::vector<long long> out;
                for (const auto& v : t.values) out.push_back(v.value);
                return out;
            }};
}

InvariantFn u_fn(const HomotopyData& data, int i, int j, Symbol a, Symbol b) {
    bool integral = !data.fixed_by_tau(a) && !data.fixed_by_tau(b);
    return {"u", {integral ? 0 : 2}, [&data, i, j, a, b](const Nanophrase& p) {
                return std::vector<long long>{u_invariant(i, j, a, b, p, data).value};
            }};
}

InvariantFn l_fn(const HomotopyData& data, int i, int j, Symbol a) {
    return {"l", {data.fixed_by_tau(a) ? 2 : 0}, [&data, i, j, a](const Nanophrase& p) {
                return std::vector<long long>{l_value(i, j, a, p, data).value};
            }};
}

InvariantFn l_prime_fn(const HomotopyData& data, int i, int j, Symbol a) {
    return {"lp", {0}, [&data, i, j, a](const Nanophrase& p) {
                return std::vector<long long>{l_prime(i, j, a, p, data).value};
            }};
}

InvariantFn l_double_prime_fn(const HomotopyData& data, int i, int j, Symbol a) {
    return {"lpp", {4}, [&data, i, j, a](const Nanophrase& p) {
                return std::vector<long long>{l_double_prime(i, j, a, p, data).value};
            }};
}

InvariantFn v4_fn(const HomotopyData& data) {
    return {"v4", {2}, [&data](const Nanophrase& p) {
                return std::vector<long long>{v4(p, data).value};
            }};
}

}  // namespace nano

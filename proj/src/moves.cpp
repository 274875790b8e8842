#include "nano/moves.hpp"

#include <deque>
#include <unordered_set>

namespace nano {

std::vector<PairSite> adjacent_pairs(const Nanophrase& p) {
    std::vector<PairSite> out;
    for (size_t ci = 0; ci < p.comps.size(); ++ci) {
        const auto& c = p.comps[ci];
        for (size_t i = 0; i + 1 < c.size(); ++i)
            out.push_back({static_cast<int>(ci), static_cast<int>(i), c[i], c[i + 1]});
    }
    return out;
}

namespace {

// strictly before and disjoint: the second pair starts after the first ends
bool before(const PairSite& x, const PairSite& y) {
    return x.comp < y.comp || (x.comp == y.comp && x.pos + 1 < y.pos);
}

}  // namespace

std::vector<H2Site> h2_sites(const Nanophrase& p, const HomotopyData& data) {
    std::vector<H2Site> out;
    auto pairs = adjacent_pairs(p);
    for (const auto& s1 : pairs) {
        if (s1.first == s1.second) continue;
        if (data.tau[static_cast<size_t>(p.labels.at(s1.first))] != p.labels.at(s1.second))
            continue;
        for (const auto& s2 : pairs) {
            if (!before(s1, s2)) continue;
            if (s2.first == s1.second && s2.second == s1.first) out.push_back({s1, s2});
        }
    }
    return out;
}

std::vector<H3Site> h3_sites(const Nanophrase& p, const HomotopyData& data) {
    std::vector<H3Site> out;
    auto pairs = adjacent_pairs(p);
    for (const auto& s1 : pairs) {
        if (s1.first == s1.second) continue;
        for (const auto& s2 : pairs) {
            if (!before(s1, s2) || s2.first != s1.first) continue;
            for (const auto& s3 : pairs) {
                if (!before(s2, s3)) continue;
                if (s3.first != s1.second || s3.second != s2.second) continue;
                int a = s1.first, b = s1.second, c = s2.second;
                if (!data.in_s(p.labels.at(a), p.labels.at(b), p.labels.at(c))) continue;
                out.push_back({s1, s2, s3, a, b, c});
            }
        }
    }
    return out;
}

std::vector<H3Site> h3_sites_reverse(const Nanophrase& p, const HomotopyData& data) {
    std::vector<H3Site> out;
    auto pairs = adjacent_pairs(p);
    for (const auto& s1 : pairs) {  // (B,A)
        if (s1.first == s1.second) continue;
        for (const auto& s2 : pairs) {  // (C,A)
            if (!before(s1, s2) || s2.second != s1.second) continue;
            for (const auto& s3 : pairs) {  // (C,B)
                if (!before(s2, s3)) continue;
                if (s3.first != s2.first || s3.second != s1.first) continue;
                int a = s1.second, b = s1.first, c = s2.first;
                if (!data.in_s(p.labels.at(a), p.labels.at(b), p.labels.at(c))) continue;
                out.push_back({s1, s2, s3, a, b, c});
            }
        }
    }
    return out;
}

Nanophrase apply_h3(const Nanophrase& p, const H3Site& s, bool forward) {
    Nanophrase q = p;
    auto swap_pair = [&q](const PairSite& ps) {
        std::swap(q.comps[static_cast<size_t>(ps.comp)][static_cast<size_t>(ps.pos)],
                  q.comps[static_cast<size_t>(ps.comp)][static_cast<size_t>(ps.pos) + 1]);
    };
    (void)forward;  // both directions swap the three blocks in place
    swap_pair(s.p1);
    swap_pair(s.p2);
    swap_pair(s.p3);
    return q;
}

std::vector<MoveInstance> enumerate_reductions(const Nanophrase& p, const HomotopyData& data) {
    std::vector<MoveInstance> out;
    for (const auto& s : adjacent_pairs(p)) {
        if (s.first != s.second) continue;
        out.push_back({MoveKind::H1Remove,
                       {{s.comp, s.pos}, {s.comp, s.pos + 1}},
                       delete_letters(p, {s.first})});
    }
    for (const auto& s : h2_sites(p, data)) {
        out.push_back({MoveKind::H2Remove,
                       {{s.ab.comp, s.ab.pos}, {s.ab.comp, s.ab.pos + 1},
                        {s.ba.comp, s.ba.pos}, {s.ba.comp, s.ba.pos + 1}},
                       delete_letters(p, {s.a(), s.b()})});
    }
    for (const auto& s : h3_sites(p, data)) {
        out.push_back({MoveKind::H3Forward,
                       {{s.p1.comp, s.p1.pos}, {s.p2.comp, s.p2.pos}, {s.p3.comp, s.p3.pos}},
                       apply_h3(p, s, true)});
    }
    for (const auto& s : h3_sites_reverse(p, data)) {
        out.push_back({MoveKind::H3Backward,
                       {{s.p1.comp, s.p1.pos}, {s.p2.comp, s.p2.pos}, {s.p3.comp, s.p3.pos}},
                       apply_h3(p, s, false)});
    }
    return out;
}

namespace {

struct Gap {
    int comp;
    int pos;  // 0..len, insertion point inside the component
};

std::vector<Gap> all_gaps(const Nanophrase& p) {
    std::vector<Gap> out;
    for (size_t ci = 0; ci < p.comps.size(); ++ci)
        for (size_t i = 0; i <= p.comps[ci].size(); ++i)
            out.push_back({static_cast<int>(ci), static_cast<int>(i)});
    return out;
}

int fresh_id(const Nanophrase& p) {
    return p.labels.empty() ? 0 : p.labels.rbegin()->first + 1;
}

}  // namespace

std::vector<MoveInstance> enumerate_insertions(const Nanophrase& p, const HomotopyData& data,
                                               int max_rank) {
    if (max_rank < p.rank()) throw PreconditionError("max_rank below current rank");
    std::vector<MoveInstance> out;
    auto gaps = all_gaps(p);
    int base = fresh_id(p);

    if (p.rank() + 1 <= max_rank) {
        for (const auto& g : gaps) {
            for (size_t a = 0; a < data.alpha.size(); ++a) {
                Nanophrase q = p;
                auto& comp = q.comps[static_cast<size_t>(g.comp)];
                comp.insert(comp.begin() + g.pos, {base, base});
                q.labels[base] = static_cast<Symbol>(a);
                out.push_back({MoveKind::H1Insert, {{g.comp, g.pos}}, std::move(q)});
            }
        }
    }
    if (p.rank() + 2 <= max_rank) {
        for (size_t i = 0; i < gaps.size(); ++i) {
            for (size_t j = i; j < gaps.size(); ++j) {
                for (size_t a = 0; a < data.alpha.size(); ++a) {
                    int A = base, B = base + 1;
                    Nanophrase q = p;
                    // later gap first so the earlier index stays valid
                    auto& c2 = q.comps[static_cast<size_t>(gaps[j].comp)];
                    c2.insert(c2.begin() + gaps[j].pos, {B, A});
                    auto& c1 = q.comps[static_cast<size_t>(gaps[i].comp)];
                    c1.insert(c1.begin() + gaps[i].pos, {A, B});
                    q.labels[A] = static_cast<Symbol>(a);
                    q.labels[B] = data.tau[a];
                    out.push_back({MoveKind::H2Insert,
                                   {{gaps[i].comp, gaps[i].pos}, {gaps[j].comp, gaps[j].pos}},
                                   std::move(q)});
                }
            }
        }
    }
    return out;
}

Nanophrase apply_shift(const Nanophrase& p, int component, const HomotopyData& data) {
    if (!data.nu) throw PreconditionError("shift moves need a nu involution");
    if (component < 0 || component >= p.components)
        throw PreconditionError("component index out of range");
    const auto& c = p.comps[static_cast<size_t>(component)];
    if (c.size() < 2) return p;
    Nanophrase q = p;
    auto& qc = q.comps[static_cast<size_t>(component)];
    int head = qc.front();
    qc.erase(qc.begin());
    bool internal = std::count(qc.begin(), qc.end(), head) == 1;  // other occurrence here too
    qc.push_back(head);
    if (internal) q.labels[head] = (*data.nu)[static_cast<size_t>(q.labels[head])];
    return q;
}

std::vector<MoveInstance> shift_moves(const Nanophrase& p, const HomotopyData& data) {
    if (!data.nu) throw PreconditionError("shift moves need a nu involution");
    std::vector<MoveInstance> out;
    for (int ci = 0; ci < p.components; ++ci) {
        if (p.comps[static_cast<size_t>(ci)].size() < 2) continue;
        out.push_back({MoveKind::Shift, {{ci, 0}}, apply_shift(p, ci, data)});
    }
    return out;
}

std::optional<int> bounded_equiv(const Nanophrase& p, const Nanophrase& q,
                                 const HomotopyData& data, int max_rank,
                                 long long max_states, bool closed) {
    if (p.components != q.components)
        throw PreconditionError("phrases have different component counts");
    if (closed && !data.nu) throw PreconditionError("closed search needs a nu involution");

    std::string target = canonical_form(q).key();
    std::string start = canonical_form(p).key();
    if (start == target) return 0;

    std::unordered_set<std::string> seen{start};
    std::deque<std::pair<Nanophrase, int>> frontier{{p, 0}};
    while (!frontier.empty()) {
        auto [cur, depth] = std::move(frontier.front());
        frontier.pop_front();

        std::vector<MoveInstance> moves = enumerate_reductions(cur, data);
        if (cur.rank() < max_rank) {
            auto ins = enumerate_insertions(cur, data, max_rank);
            moves.insert(moves.end(), std::make_move_iterator(ins.begin()),
                         std::make_move_iterator(ins.end()));
        }
        if (closed) {
            auto sh = shift_moves(cur, data);
            moves.insert(moves.end(), std::make_move_iterator(sh.begin()),
                         std::make_move_iterator(sh.end()));
        }
        for (auto& m : moves) {
            std::string k = canonical_form(m.result).key();
            if (k == target) return depth + 1;
            if (static_cast<long long>(seen.size()) >= max_states) continue;
            if (seen.insert(std::move(k)).second)
                frontier.emplace_back(std::move(m.result), depth + 1);
        }
    }
    return std::nullopt;
}

}  // namespace nano

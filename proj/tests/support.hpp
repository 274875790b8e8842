#pragma once
// Shared test machinery: a deterministic RNG, random phrase / move
// generators, and a brute-force isomorphism oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "nano/moves.hpp"

namespace nano::testing {

// splitmix64: deterministic across platforms, unlike <random> distributions
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline Nanophrase random_phrase(Rng& rng, const HomotopyData& data, int r, int max_rank) {
    int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank) + 1));
    std::vector<int> word;
    for (int i = 0; i < m; ++i) {
        word.push_back(i);
        word.push_back(i);
    }
    for (size_t i = word.size(); i > 1; --i)
        std::swap(word[i - 1], word[rng.below(i)]);

    std::vector<int> cuts;  // r-1 cut points into the 2m+1 gaps
    for (int i = 0; i < r - 1; ++i)
        cuts.push_back(static_cast<int>(rng.below(word.size() + 1)));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(static_cast<int>(word.size()));

    Nanophrase p;
    p.components = r;
    size_t at = 0;
    for (int cut : cuts) {
        p.comps.emplace_back();
        while (at < static_cast<size_t>(cut)) p.comps.back().push_back(word[at++]);
    }
    for (int i = 0; i < m; ++i)
        p.labels[i] = static_cast<Symbol>(rng.below(data.alpha.size()));
    return p;
}

// all moves available from p: reductions, insertions up to max_rank, and
// shift moves when requested
inline std::vector<MoveInstance> all_moves(const Nanophrase& p, const HomotopyData& data,
                                           int max_rank, bool with_shifts) {
    std::vector<MoveInstance> moves = enumerate_reductions(p, data);
    if (p.rank() < max_rank) {
        auto ins = enumerate_insertions(p, data, max_rank);
        moves.insert(moves.end(), ins.begin(), ins.end());
    }
    if (with_shifts && data.nu) {
        auto sh = shift_moves(p, data);
        moves.insert(moves.end(), sh.begin(), sh.end());
    }
    return moves;
}

inline std::optional<Nanophrase> random_move_result(Rng& rng, const Nanophrase& p,
                                                    const HomotopyData& data, int max_rank,
                                                    bool with_shifts) {
    auto moves = all_moves(p, data, max_rank, with_shifts);
    if (moves.empty()) return std::nullopt;
    return moves[rng.below(moves.size())].result;
}

// tries every label-preserving bijection between the letter sets
inline bool iso_bruteforce(const Nanophrase& p, const Nanophrase& q) {
    if (p.components != q.components || p.rank() != q.rank()) return false;
    std::vector<int> lp, lq;
    for (const auto& [id, lab] : p.labels) lp.push_back(id);
    for (const auto& [id, lab] : q.labels) lq.push_back(id);
    std::vector<int> perm(lq.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        std::map<int, int> map;
        for (size_t i = 0; i < lp.size() && ok; ++i) {
            int to = lq[static_cast<size_t>(perm[i])];
            if (p.labels.at(lp[i]) != q.labels.at(to)) ok = false;
            map[lp[i]] = to;
        }
        for (size_t ci = 0; ci < p.comps.size() && ok; ++ci) {
            if (p.comps[ci].size() != q.comps[ci].size()) ok = false;
            for (size_t k = 0; k < p.comps[ci].size() && ok; ++k)
                if (map.at(p.comps[ci][k]) != q.comps[ci][k]) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline Nanophrase rename_letters(const Nanophrase& p, const std::map<int, int>& sigma) {
    Nanophrase q;
    q.components = p.components;
    q.comps.resize(p.comps.size());
    for (size_t ci = 0; ci < p.comps.size(); ++ci)
        for (int id : p.comps[ci]) q.comps[ci].push_back(sigma.at(id));
    for (const auto& [id, lab] : p.labels) q.labels[sigma.at(id)] = lab;
    return q;
}

inline HomotopyData mixed_data() {  // one fixed orbit, one free orbit, S diagonal
    return HomotopyData::parse_config("alpha: a b c\ntau: (b c)\nS: diagonal\nnu: (b c)\n");
}

}  // namespace nano::testing

#include "nano/groups.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nano {

/******** enumeration ********/

namespace {

// Canonical Gauss sequences of length 2m over letters 0..m-1: every letter
// twice, first occurrences in increasing order.
void gauss_sequences(int m, std::vector<int>& seq, std::vector<int>& open, int opened,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(seq.size()) == 2 * m) {
        out.push_back(seq);
        return;
    }
    if (opened < m) {
        seq.push_back(opened);
        open.push_back(opened);
        gauss_sequences(m, seq, open, opened + 1, out);
        open.pop_back();
        seq.pop_back();
    }
    for (size_t k = 0; k < open.size(); ++k) {
        int letter = open[k];
        open.erase(open.begin() + static_cast<long>(k));
        seq.push_back(letter);
        gauss_sequences(m, seq, open, opened, out);
        seq.pop_back();
        open.insert(open.begin() + static_cast<long>(k), letter);
    }
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

CanonicalForm form_from_split(const std::vector<int>& seq, const std::vector<int>& split,
                              const std::vector<Symbol>& labels, int m) {
    CanonicalForm f;
    f.components = static_cast<int>(split.size());
    f.rank = m;
    f.labels = labels;
    size_t at = 0;
    for (size_t ci = 0; ci < split.size(); ++ci) {
        if (ci > 0) f.code.push_back(CanonicalForm::kSep);
        if (split[ci] == 0) {
            f.code.push_back(CanonicalForm::kEmpty);
            continue;
        }
        for (int k = 0; k < split[ci]; ++k) f.code.push_back(seq[at++]);
    }
    return f;
}

}  // namespace

std::vector<CanonicalForm> enumerate_phrases(const HomotopyData& data, int r, int max_rank) {
    if (r < 1 || max_rank < 0) throw PreconditionError("bad enumeration bounds");
    std::vector<CanonicalForm> out;
    int nsym = static_cast<int>(data.alpha.size());
    for (int m = 0; m <= max_rank; ++m) {
        std::vector<std::vector<int>> seqs;
        {
            std::vector<int> seq, open;
            gauss_sequences(m, seq, open, 0, seqs);
        }
        std::vector<std::vector<int>> splits;
        {
            std::vector<int> cur;
            compositions(2 * m, r, cur, splits);
        }
        std::vector<Symbol> labels(static_cast<size_t>(m), 0);
        for (const auto& seq : seqs) {
            for (const auto& split : splits) {
                // odometer over all label words
                std::fill(labels.begin(), labels.end(), 0);
                while (true) {
                    out.push_back(form_from_split(seq, split, labels, m));
                    int k = m - 1;
                    while (k >= 0 && labels[static_cast<size_t>(k)] == nsym - 1) {
                        labels[static_cast<size_t>(k)] = 0;
                        --k;
                    }
                    if (k < 0) break;
                    ++labels[static_cast<size_t>(k)];
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/******** relation rows ********/

namespace {

struct RelationContext {
    const HomotopyData& data;
    int n;
    const std::vector<CanonicalForm>& generators;  // sorted

    int index_of(const CanonicalForm& f) const {
        auto it = std::lower_bound(generators.begin(), generators.end(), f);
        if (it == generators.end() || !(*it == f))
            throw PreconditionError("relation term is not a generator");
        return static_cast<int>(it - generators.begin());
    }
};

Row normalize_row(std::map<int, Int>& acc) {
    Row row;
    for (auto& [col, c] : acc)
        if (c != 0) row.emplace_back(col, c);
    return row;
}

bool has_adjacent_equal_pair(const Nanophrase& p) {
    for (const auto& c : p.comps)
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i] == c[i + 1]) return true;
    return false;
}

std::vector<Row> rows_for_base(const CanonicalForm& base, const RelationContext& ctx) {
    std::vector<Row> rows;
    Nanophrase p = to_nanophrase(base);
    int k = base.rank;
    bool base_kept = k <= ctx.n;
    int base_idx = base_kept ? ctx.index_of(base) : -1;

    if (base_kept && has_adjacent_equal_pair(p)) rows.push_back({{base_idx, 1}});

    auto add_term = [&](std::map<int, Int>& acc, const Nanophrase& q, int coeff) {
        acc[ctx.index_of(canonical_form(q))] += coeff;
    };

    for (const auto& s : h2_sites(p, ctx.data)) {
        std::map<int, Int> acc;
        if (base_kept) acc[base_idx] += 1;
        add_term(acc, delete_letters(p, {s.b()}), 1);  // xAyAz
        add_term(acc, delete_letters(p, {s.a()}), 1);  // xByBz
        Row row = normalize_row(acc);
        if (!row.empty()) rows.push_back(std::move(row));
    }

    for (const auto& s : h3_sites(p, ctx.data)) {
        std::map<int, Int> acc;
        Nanophrase img = apply_h3(p, s, true);
        if (base_kept) {
            acc[base_idx] += 1;
            add_term(acc, img, -1);
        }
        add_term(acc, delete_letters(p, {s.c}), 1);
        add_term(acc, delete_letters(p, {s.b}), 1);
        add_term(acc, delete_letters(p, {s.a}), 1);
        add_term(acc, delete_letters(img, {s.c}), -1);
        add_term(acc, delete_letters(img, {s.b}), -1);
        add_term(acc, delete_letters(img, {s.a}), -1);
        Row row = normalize_row(acc);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> shift_rows(const RelationContext& ctx) {
    std::vector<Row> rows;
    for (size_t gi = 0; gi < ctx.generators.size(); ++gi) {
        Nanophrase p = to_nanophrase(ctx.generators[gi]);
        for (int c = 0; c < p.components; ++c) {
            CanonicalForm shifted = canonical_form(apply_shift(p, c, ctx.data));
            if (shifted == ctx.generators[gi]) continue;
            std::map<int, Int> acc;
            acc[static_cast<int>(gi)] += 1;
            acc[ctx.index_of(shifted)] -= 1;
            rows.push_back(normalize_row(acc));
        }
    }
    return rows;
}

std::vector<Row> dedupe_rows(std::vector<Row> rows) {
    std::set<Row> seen;
    std::vector<Row> out;
    for (auto& r : rows)
        if (seen.insert(r).second) out.push_back(std::move(r));
    return out;
}

}  // namespace

std::vector<Row> relation_rows_serial(const HomotopyData& data, int r, int n, bool closed) {
    if (closed && !data.nu) throw PreconditionError("closed homotopy needs a nu involution");
    std::vector<CanonicalForm> bases = enumerate_phrases(data, r, n + 1);
    std::vector<CanonicalForm> generators;
    for (const auto& f : bases)
        if (f.rank <= n) generators.push_back(f);
    RelationContext ctx{data, n, generators};

    std::vector<Row> rows;
    for (const auto& base : bases)
        for (auto& row : rows_for_base(base, ctx)) rows.push_back(std::move(row));
    if (closed)
        for (auto& row : shift_rows(ctx)) rows.push_back(std::move(row));
    return dedupe_rows(std::move(rows));
}

GroupPresentation generate_relations(const HomotopyData& data, int r, int n, bool closed,
                                     int jobs) {
    if (closed && !data.nu) throw PreconditionError("closed homotopy needs a nu involution");
    GroupPresentation pres;
    pres.components = r;
    pres.degree = n;
    pres.closed = closed;

    std::vector<CanonicalForm> bases = enumerate_phrases(data, r, n + 1);
    for (const auto& f : bases)
        if (f.rank <= n) pres.generators.push_back(f);
    RelationContext ctx{data, n, pres.generators};

    std::vector<std::vector<Row>> per_base(bases.size());
#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#else
    (void)jobs;
#endif
    for (long bi = 0; bi < static_cast<long>(bases.size()); ++bi)
        per_base[static_cast<size_t>(bi)] = rows_for_base(bases[static_cast<size_t>(bi)], ctx);

    std::vector<Row> rows;
    for (auto& chunk : per_base)
        for (auto& row : chunk) rows.push_back(std::move(row));
    if (closed)
        for (auto& row : shift_rows(ctx)) rows.push_back(std::move(row));
    pres.rows = dedupe_rows(std::move(rows));
    return pres;
}

/******** Smith normal form ********/

namespace {

// quotient with |a - q*b| <= |b| / 2
Int div_round_nearest(const Int& a, const Int& b) {
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int two_rem = 2 * abs(rem);
    if (two_rem > abs(b)) q += (sgn(rem) == sgn(b)) ? 1 : -1;
    return q;
}

}  // namespace

SmithResult smith_normal_form(std::vector<std::vector<Int>> m, bool want_left, bool want_right) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    SmithResult res;
    auto identity = [](size_t n) {
        std::vector<std::vector<Int>> id(n, std::vector<Int>(n, 0));
        for (size_t i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    };
    if (want_left) res.left = identity(rows);
    if (want_right) res.right = identity(cols);

    auto swap_rows_op = [&](size_t a, size_t b) {
        std::swap(m[a], m[b]);
        if (want_left) std::swap(res.left[a], res.left[b]);
    };
    auto swap_cols_op = [&](size_t a, size_t b) {
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
        if (want_right)
            for (size_t i = 0; i < cols; ++i) std::swap(res.right[i][a], res.right[i][b]);
    };
    auto row_sub = [&](size_t dst, size_t src, const Int& q) {  // row dst -= q * row src
        if (q == 0) return;
        for (size_t j = 0; j < cols; ++j) m[dst][j] -= q * m[src][j];
        if (want_left)
            for (size_t j = 0; j < rows; ++j) res.left[dst][j] -= q * res.left[src][j];
    };
    auto col_sub = [&](size_t dst, size_t src, const Int& q) {  // col dst -= q * col src
        if (q == 0) return;
        for (size_t i = 0; i < rows; ++i) m[i][dst] -= q * m[i][src];
        if (want_right)
            for (size_t i = 0; i < cols; ++i) res.right[i][dst] -= q * res.right[i][src];
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing submatrix into the pivot
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (!found || abs(m[i][j]) < abs(m[pi][pj])) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) swap_rows_op(t, pi);
        if (pj != t) swap_cols_op(t, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                row_sub(i, t, div_round_nearest(m[i][t], m[t][t]));
                if (m[i][t] != 0) {  // remainder strictly smaller, promote it
                    swap_rows_op(t, i);
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                col_sub(j, t, div_round_nearest(m[t][j], m[t][t]));
                if (m[t][j] != 0) {
                    swap_cols_op(t, j);
                    dirty = true;
                }
            }
            if (!dirty) {
                // pivot must divide the rest of the submatrix
                for (size_t i = t + 1; i < rows && !dirty; ++i)
                    for (size_t j = t + 1; j < cols && !dirty; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            row_sub(t, i, -1);  // row t += row i
                            dirty = true;
                        }
            }
        }
        ++t;
    }

    for (size_t k = 0; k < t; ++k) {
        if (m[k][k] < 0) {
            for (size_t i = 0; i < rows; ++i) m[i][k] = -m[i][k];
            if (want_right)
                for (size_t i = 0; i < cols; ++i) res.right[i][k] = -res.right[i][k];
        }
    }
    res.diag.assign(cols, 0);
    for (size_t k = 0; k < t; ++k) res.diag[k] = m[k][k];
    return res;
}

/******** group structure ********/

std::string AbelianGroupStructure::to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) parts.push_back("Z/" + d.get_str());
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
    return out;
}

std::vector<Int> AbelianGroupStructure::coordinates(const FormalSum& x) const {
    size_t g = generators.size();
    std::vector<Int> vec(g, 0);
    for (const auto& [f, c] : x.terms) {
        auto it = std::lower_bound(generators.begin(), generators.end(), f);
        if (it == generators.end() || !(*it == f))
            throw PreconditionError("formal sum has a term outside the generator set");
        vec[static_cast<size_t>(it - generators.begin())] = c;
    }
    std::vector<Int> y(g, 0);
    for (size_t i = 0; i < g; ++i) {
        if (vec[i] == 0) continue;
        for (size_t j = 0; j < g; ++j) y[j] += vec[i] * basis[i][j];
    }
    std::vector<Int> coords;
    for (size_t k = 0; k < g; ++k) {  // torsion residues (diag >= 2 comes before diag == 0)
        if (diag[k] == 0 || diag[k] == 1) continue;
        Int rres;
        mpz_mod(rres.get_mpz_t(), y[k].get_mpz_t(), diag[k].get_mpz_t());
        coords.push_back(rres);
    }
    for (size_t k = 0; k < g; ++k)
        if (diag[k] == 0) coords.push_back(y[k]);
    return coords;
}

AbelianGroupStructure group_structure(const HomotopyData& data, int r, int n, bool closed,
                                      int jobs) {
    GroupPresentation pres = generate_relations(data, r, n, closed, jobs);
    size_t g = pres.generators.size();
    std::vector<std::vector<Int>> mat(pres.rows.size(), std::vector<Int>(g, 0));
    for (size_t i = 0; i < pres.rows.size(); ++i)
        for (const auto& [col, c] : pres.rows[i]) mat[i][static_cast<size_t>(col)] = c;

    SmithResult snf = smith_normal_form(std::move(mat), false, true);

    AbelianGroupStructure out;
    out.components = r;
    out.degree = n;
    out.closed = closed;
    out.data_fingerprint = data.fingerprint();
    out.generators = std::move(pres.generators);
    out.diag = std::move(snf.diag);
    if (snf.right.empty()) {  // no relation rows at all
        out.basis.assign(g, std::vector<Int>(g, 0));
        for (size_t i = 0; i < g; ++i) out.basis[i][i] = 1;
        out.diag.assign(g, 0);
    } else {
        out.basis = std::move(snf.right);
    }
    out.free_rank = 0;
    for (const auto& d : out.diag) {
        if (d == 0) ++out.free_rank;
        else if (d >= 2) out.torsion.push_back(d);
    }
    return out;
}

std::vector<Int> gamma_coordinates(const Nanophrase& p, const AbelianGroupStructure& g,
                                   const HomotopyData& data, bool normalized) {
    if (p.components != g.components)
        throw PreconditionError("phrase does not match the structure's component count");
    if (data.fingerprint() != g.data_fingerprint)
        throw PreconditionError("homotopy data does not match the structure");
    std::vector<Int> coords = g.coordinates(gamma(g.degree, FormalSum(p)));
    if (normalized) {
        std::vector<Int> base = g.coordinates(gamma(g.degree, FormalSum(trivial_phrase(g.components))));
        size_t nt = g.torsion.size();
        for (size_t k = 0; k < coords.size(); ++k) {
            coords[k] -= base[k];
            if (k < nt) {
                Int rres;
                mpz_mod(rres.get_mpz_t(), coords[k].get_mpz_t(), g.torsion[k].get_mpz_t());
                coords[k] = rres;
            }
        }
    }
    return coords;
}

/******** finite-type sweep ********/

std::optional<DottedNanophrase> find_defect_counterexample(const HomotopyData& data, int r,
                                                           int max_rank, int num_dots,
                                                           const InvariantFn& v, int jobs) {
    std::vector<CanonicalForm> all = enumerate_phrases(data, r, max_rank);
    std::vector<CanonicalForm> cands;
    for (auto& f : all)
        if (f.rank >= num_dots) cands.push_back(std::move(f));

    // per-phrase scan of every dot subset; parallel over phrases with the
    // smallest violating phrase index kept so the result is deterministic
    std::atomic<long> first_bad{static_cast<long>(cands.size())};
    auto scan_phrase = [&](long pi) -> std::optional<std::set<int>> {
        Nanophrase p = to_nanophrase(cands[static_cast<size_t>(pi)]);
        std::vector<int> order = letters_in_order(p);
        int nn = static_cast<int>(order.size());
        std::vector<int> idx(static_cast<size_t>(num_dots));
        for (int i = 0; i < num_dots; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            DottedNanophrase d;
            d.phrase = p;
            for (int i : idx) d.dots.insert(order[static_cast<size_t>(i)]);
            if (!all_zero(finite_type_defect(v, d))) return d.dots;
            int i = num_dots - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == nn - num_dots + i) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < num_dots; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
        return std::nullopt;
    };

    std::map<long, std::set<int>> hits;
#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (long pi = 0; pi < static_cast<long>(cands.size()); ++pi) {
        if (pi > first_bad.load(std::memory_order_relaxed)) continue;
        auto hit = scan_phrase(pi);
        if (hit) {
#pragma omp critical
            {
                hits[pi] = *hit;
                long cur = first_bad.load();
                while (pi < cur && !first_bad.compare_exchange_weak(cur, pi)) {}
            }
        }
    }
#else
    (void)jobs;
    for (long pi = 0; pi < static_cast<long>(cands.size()); ++pi) {
        auto hit = scan_phrase(pi);
        if (hit) {
            hits[pi] = *hit;
            first_bad.store(pi);
            break;
        }
    }
#endif
    long bad = first_bad.load();
    if (bad >= static_cast<long>(cands.size())) return std::nullopt;
    DottedNanophrase d;
    d.phrase = to_nanophrase(cands[static_cast<size_t>(bad)]);
    d.dots = hits.at(bad);
    return d;
}

}  // namespace nano

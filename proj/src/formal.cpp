#include "nano/formal.hpp"

#include <algorithm>

namespace nano {

void FormalSum::add(const CanonicalForm& f, const Int& c) {
    if (f.components != components) throw PreconditionError("component count mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(f, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
    if (o.components != components) throw PreconditionError("component count mismatch");
    for (const auto& [f, c] : o.terms) add(f, c);
    return *this;
}

FormalSum& FormalSum::operator-=(const FormalSum& o) {
    if (o.components != components) throw PreconditionError("component count mismatch");
    for (const auto& [f, c] : o.terms) add(f, -c);
    return *this;
}

FormalSum& FormalSum::operator*=(const Int& c) {
    if (c == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [f, v] : terms) v *= c;
    return *this;
}

DottedNanophrase parse_dotted_nanophrase(const std::string& text, const HomotopyData& data) {
    ParsedPhrase pp = parse_phrase_text(text, data);
    DottedNanophrase d;
    d.phrase = std::move(pp.phrase);
    d.dots.insert(pp.dotted.begin(), pp.dotted.end());
    return d;
}

std::string print_dotted(const DottedNanophrase& d, const HomotopyData& data) {
    // canonical relabelling, then reinsert the dots on the renamed letters
    CanonicalForm f = canonical_form(d.phrase);
    std::map<int, int> rename;
    {
        std::vector<int> order = letters_in_order(d.phrase);
        for (size_t i = 0; i < order.size(); ++i) rename[order[i]] = static_cast<int>(i);
    }
    std::string plain = print_phrase(f, data);
    std::string out;
    for (char ch : plain) {
        out.push_back(ch);
        if (ch >= 'A' && ch <= 'Z') {
            int id = ch - 'A';
            for (int orig : d.dots)
                if (rename.at(orig) == id) out.push_back('.');
        }
    }
    return out;
}

FormalSum resolve(const DottedNanophrase& d) {
    std::vector<int> dotted(d.dots.begin(), d.dots.end());
    int m = static_cast<int>(dotted.size());
    if (m > 20) throw PreconditionError("too many semi-letters to resolve");
    std::vector<int> keep_base;
    for (const auto& [id, lab] : d.phrase.labels)
        if (!d.dots.count(id)) keep_base.push_back(id);

    FormalSum out(d.phrase.components);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> keep = keep_base;
        int removed = 0;
        for (int b = 0; b < m; ++b) {
            if (mask & (1u << b))
                keep.push_back(dotted[static_cast<size_t>(b)]);
            else
                ++removed;
        }
        out.add(canonical_form(keep_letters(d.phrase, keep)), (removed % 2 == 0) ? 1 : -1);
    }
    return out;
}

long long subphrase_count(const CanonicalForm& q, const Nanophrase& p) {
    int k = q.rank;
    int n = p.rank();
    if (q.components != p.components) throw PreconditionError("component count mismatch");
    if (k > n) return 0;
    std::vector<int> order = letters_in_order(p);
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    long long count = 0;
    while (true) {
        std::vector<int> keep;
        keep.reserve(static_cast<size_t>(k));
        for (int i : idx) keep.push_back(order[static_cast<size_t>(i)]);
        if (canonical_form(keep_letters(p, keep)) == q) ++count;
        // next k-combination of {0..n-1}
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return count;
}

long long subphrase_count(const Nanophrase& q, const Nanophrase& p) {
    return subphrase_count(canonical_form(q), p);
}

Int angle_bracket(const FormalSum& q, const FormalSum& p) {
    if (q.components != p.components) throw PreconditionError("component count mismatch");
    Int total = 0;
    for (const auto& [pf, pc] : p.terms) {
        Nanophrase pp = to_nanophrase(pf);
        for (const auto& [qf, qc] : q.terms)
            total += qc * pc * Int(static_cast<long>(subphrase_count(qf, pp)));
    }
    return total;
}

namespace {

FormalSum subphrase_sum(const FormalSum& x, bool alternate, int truncate_above) {
    FormalSum out(x.components);
    for (const auto& [f, c] : x.terms) {
        Nanophrase p = to_nanophrase(f);
        for (const auto& q : subphrases(p)) {
            int qr = q.rank();
            if (truncate_above >= 0 && qr > truncate_above) continue;
            Int coeff = c;
            if (alternate && (f.rank - qr) % 2 != 0) coeff = -coeff;
            out.add(canonical_form(q), coeff);
        }
    }
    return out;
}

}  // namespace

FormalSum theta(const FormalSum& x) { return subphrase_sum(x, false, -1); }

FormalSum phi(const FormalSum& x) { return subphrase_sum(x, true, -1); }

FormalSum gamma(int n, const FormalSum& x) {
    if (n < 0) throw PreconditionError("gamma needs n >= 0");
    return subphrase_sum(x, false, n);
}

std::vector<long long> finite_type_defect(const InvariantFn& v, const DottedNanophrase& d) {
    std::vector<int> dotted(d.dots.begin(), d.dots.end());
    int m = static_cast<int>(dotted.size());
    std::vector<int> keep_base;
    for (const auto& [id, lab] : d.phrase.labels)
        if (!d.dots.count(id)) keep_base.push_back(id);

    std::vector<long long> acc(v.moduli.size(), 0);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> keep = keep_base;
        int removed = 0;
        for (int b = 0; b < m; ++b) {
            if (mask & (1u << b))
                keep.push_back(dotted[static_cast<size_t>(b)]);
            else
                ++removed;
        }
        std::vector<long long> val = v.eval(keep_letters(d.phrase, keep));
        if (val.size() != acc.size()) throw PreconditionError("invariant slot count mismatch");
        long long sign = (removed % 2 == 0) ? 1 : -1;
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += sign * val[i];
    }
    for (size_t i = 0; i < acc.size(); ++i) {
        int mod = v.moduli[i];
        if (mod > 0) acc[i] = ((acc[i] % mod) + mod) % mod;
    }
    return acc;
}

bool all_zero(const std::vector<long long>& slots) {
    return std::all_of(slots.begin(), slots.end(), [](long long v) { return v == 0; });
}

}  // namespace nano

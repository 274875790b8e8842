#include "nano/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace nano {

/******** HomotopyData ********/

Symbol HomotopyData::symbol(const std::string& token) const {
    for (size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] == token) return static_cast<Symbol>(i);
    throw ParseError("unknown symbol '" + token + "'");
}

bool HomotopyData::in_s(Symbol a, Symbol b, Symbol c) const {
    return triples.count({a, b, c}) != 0;
}

bool HomotopyData::s_is_diagonal() const {
    if (triples.size() != alpha.size()) return false;
    for (size_t a = 0; a < alpha.size(); ++a)
        if (!in_s(static_cast<Symbol>(a), static_cast<Symbol>(a), static_cast<Symbol>(a)))
            return false;
    return true;
}

Symbol HomotopyData::orbit_rep(Symbol a) const {
    Symbol b = tau[static_cast<size_t>(a)];
    if (a == b) return a;
    return alpha[static_cast<size_t>(a)] < alpha[static_cast<size_t>(b)] ? a : b;
}

int HomotopyData::orientation_index(Symbol a) const {
    Symbol rep = orbit_rep(a);
    for (size_t i = 0; i < orientation.size(); ++i)
        if (orientation[i] == rep) return static_cast<int>(i);
    return -1;
}

std::string HomotopyData::fingerprint() const {
    std::ostringstream os;
    os << "alpha=";
    for (const auto& t : alpha) os << t << ',';
    os << ";tau=";
    for (Symbol t : tau) os << t << ',';
    os << ";S=";
    for (const auto& t : triples) os << t[0] << '.' << t[1] << '.' << t[2] << ',';
    os << ";nu=";
    if (nu)
        for (Symbol t : *nu) os << t << ',';
    else
        os << "-";
    return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// "(a b) (c d)" -> involution over alpha, unlisted symbols fixed
std::vector<Symbol> parse_involution(const std::string& rest, const HomotopyData& d,
                                     const char* what) {
    std::vector<Symbol> inv(d.alpha.size());
    for (size_t i = 0; i < inv.size(); ++i) inv[i] = static_cast<Symbol>(i);
    std::vector<bool> used(d.alpha.size(), false);
    size_t i = 0;
    while (i < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[i]))) { ++i; continue; }
        if (rest[i] != '(') throw ParseError(std::string(what) + ": expected '('");
        size_t close = rest.find(')', i);
        if (close == std::string::npos) throw ParseError(std::string(what) + ": missing ')'");
        auto toks = split_ws(rest.substr(i + 1, close - i - 1));
        if (toks.size() != 2) throw ParseError(std::string(what) + ": a swap needs two symbols");
        Symbol x = d.symbol(toks[0]), y = d.symbol(toks[1]);
        if (used[x] || used[y] || (x == y && used[x]))
            throw ParseError(std::string(what) + ": not an involution (symbol repeated)");
        used[x] = used[y] = true;
        inv[x] = y;
        inv[y] = x;
        i = close + 1;
    }
    return inv;
}

std::array<Symbol, 3> parse_triple(const std::string& tok, const HomotopyData& d) {
    std::array<Symbol, 3> t{};
    if (tok.find(',') != std::string::npos) {
        size_t a = tok.find(','), b = tok.find(',', a + 1);
        if (b == std::string::npos || tok.find(',', b + 1) != std::string::npos)
            throw ParseError("triple '" + tok + "' must have three symbols");
        t[0] = d.symbol(tok.substr(0, a));
        t[1] = d.symbol(tok.substr(a + 1, b - a - 1));
        t[2] = d.symbol(tok.substr(b + 1));
    } else {
        if (tok.size() != 3)
            throw ParseError("triple '" + tok + "' must juxtapose three single-char symbols");
        for (int k = 0; k < 3; ++k) t[k] = d.symbol(std::string(1, tok[k]));
    }
    return t;
}

}  // namespace

HomotopyData HomotopyData::parse_config(const std::string& text) {
    HomotopyData d;
    bool saw_alpha = false, saw_tau = false, saw_s = false, saw_nu = false;
    std::string tau_rest, s_rest, nu_rest;

    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("config line missing ':': " + line);
        std::string key = line.substr(0, colon);
        key.erase(std::remove_if(key.begin(), key.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  key.end());
        std::string rest = line.substr(colon + 1);
        if (key == "alpha") {
            if (saw_alpha) throw ParseError("duplicate alpha line");
            saw_alpha = true;
            for (const auto& tok : split_ws(rest)) {
                if (tok.find_first_of(",()|:.") != std::string::npos)
                    throw ParseError("bad symbol token '" + tok + "'");
                if (std::find(d.alpha.begin(), d.alpha.end(), tok) != d.alpha.end())
                    throw ParseError("duplicate alpha symbol '" + tok + "'");
                d.alpha.push_back(tok);
            }
            if (d.alpha.empty()) throw ParseError("alpha must be non-empty");
        } else if (key == "tau") {
            saw_tau = true;
            tau_rest = rest;
        } else if (key == "S") {
            saw_s = true;
            s_rest = rest;
        } else if (key == "nu") {
            saw_nu = true;
            nu_rest = rest;
        } else {
            throw ParseError("unknown config key '" + key + "'");
        }
    }
    if (!saw_alpha) throw ParseError("config missing alpha line");

    d.tau = saw_tau ? parse_involution(tau_rest, d, "tau")
                    : parse_involution("", d, "tau");
    if (saw_nu) d.nu = parse_involution(nu_rest, d, "nu");

    if (saw_s) {
        auto toks = split_ws(s_rest);
        if (toks.size() == 1 && toks[0] == "diagonal") {
            for (size_t a = 0; a < d.alpha.size(); ++a)
                d.triples.insert({(Symbol)a, (Symbol)a, (Symbol)a});
        } else if (toks.size() == 1 && toks[0] == "full") {
            for (size_t a = 0; a < d.alpha.size(); ++a)
                for (size_t b = 0; b < d.alpha.size(); ++b)
                    for (size_t c = 0; c < d.alpha.size(); ++c)
                        d.triples.insert({(Symbol)a, (Symbol)b, (Symbol)c});
        } else {
            for (const auto& tok : toks) d.triples.insert(parse_triple(tok, d));
        }
    }

    // orientation: per orbit, the lexicographically least token, in alpha order
    for (size_t a = 0; a < d.alpha.size(); ++a) {
        Symbol rep = d.orbit_rep(static_cast<Symbol>(a));
        if (rep == static_cast<Symbol>(a)) d.orientation.push_back(rep);
    }
    return d;
}

HomotopyData HomotopyData::preset(const std::string& name) {
    if (name == "gauss")
        return parse_config("alpha: a\ntau:\nS: diagonal\nnu:\n");
    if (name == "vknot")
        return parse_config(
            "alpha: a+ a- b+ b-\n"
            "tau: (a+ b-) (a- b+)\n"
            "S: a+,a+,a+ a+,a+,a- a+,a-,a- a-,a-,a- a-,a-,a+ a-,a+,a+ "
            "b+,b+,b+ b+,b+,b- b+,b-,b- b-,b-,b- b-,b-,b+ b-,b+,b+\n"
            "nu: (a+ b+) (a- b-)\n");
    throw ParseError("unknown preset '" + name + "' (expected gauss or vknot)");
}

/******** Nanophrase ********/

int Nanophrase::length() const {
    int n = 0;
    for (const auto& c : comps) n += static_cast<int>(c.size());
    return n;
}

Nanophrase trivial_phrase(int components) {
    Nanophrase p;
    p.components = components;
    p.comps.assign(static_cast<size_t>(components), {});
    return p;
}

Nanophrase make_nanophrase(int components, std::vector<std::vector<int>> comps,
                           std::map<int, Symbol> labels) {
    if (components < 1 || static_cast<int>(comps.size()) != components)
        throw ParseError("component count mismatch");
    std::map<int, int> count;
    for (const auto& c : comps)
        for (int id : c) ++count[id];
    for (const auto& [id, n] : count)
        if (n != 2) throw ParseError("letter occurs " + std::to_string(n) + " times, expected 2");
    if (count.size() != labels.size()) throw ParseError("label map does not match letters");
    for (const auto& [id, n] : count)
        if (!labels.count(id)) throw ParseError("letter without label");
    Nanophrase p;
    p.components = components;
    p.comps = std::move(comps);
    p.labels = std::move(labels);
    return p;
}

std::vector<int> letters_in_order(const Nanophrase& p) {
    std::vector<int> order;
    std::set<int> seen;
    for (const auto& c : p.comps)
        for (int id : c)
            if (seen.insert(id).second) order.push_back(id);
    return order;
}

/******** CanonicalForm ********/

CanonicalForm canonical_form(const Nanophrase& p) {
    CanonicalForm f;
    f.components = p.components;
    std::map<int, int> rename;
    for (size_t ci = 0; ci < p.comps.size(); ++ci) {
        if (ci > 0) f.code.push_back(CanonicalForm::kSep);
        if (p.comps[ci].empty()) {
            f.code.push_back(CanonicalForm::kEmpty);
            continue;
        }
        for (int id : p.comps[ci]) {
            auto it = rename.find(id);
            int nid;
            if (it == rename.end()) {
                nid = static_cast<int>(rename.size());
                rename.emplace(id, nid);
                f.labels.push_back(p.labels.at(id));
            } else {
                nid = it->second;
            }
            f.code.push_back(nid);
        }
    }
    f.rank = static_cast<int>(rename.size());
    return f;
}

Nanophrase to_nanophrase(const CanonicalForm& f) {
    Nanophrase p;
    p.components = f.components;
    p.comps.emplace_back();
    for (int v : f.code) {
        if (v == CanonicalForm::kSep)
            p.comps.emplace_back();
        else if (v != CanonicalForm::kEmpty)
            p.comps.back().push_back(v);
    }
    for (size_t i = 0; i < f.labels.size(); ++i) p.labels[static_cast<int>(i)] = f.labels[i];
    return p;
}

std::string CanonicalForm::key() const {
    std::string s;
    s.reserve(code.size() + labels.size() + 1);
    for (int v : code) {
        if (v == kSep)
            s.push_back('\x01');
        else if (v == kEmpty)
            s.push_back('\x02');
        else
            s.push_back(static_cast<char>(3 + v));
    }
    s.push_back('\x00');
    for (Symbol v : labels) s.push_back(static_cast<char>(3 + v));
    return s;
}

/******** subphrases ********/

Nanophrase keep_letters(const Nanophrase& p, const std::vector<int>& ids) {
    std::set<int> keep(ids.begin(), ids.end());
    Nanophrase q;
    q.components = p.components;
    q.comps.resize(p.comps.size());
    for (size_t ci = 0; ci < p.comps.size(); ++ci)
        for (int id : p.comps[ci])
            if (keep.count(id)) q.comps[ci].push_back(id);
    for (int id : keep) q.labels[id] = p.labels.at(id);
    return q;
}

Nanophrase delete_letters(const Nanophrase& p, const std::vector<int>& ids) {
    std::set<int> del(ids.begin(), ids.end());
    std::vector<int> keep;
    for (const auto& [id, lab] : p.labels)
        if (!del.count(id)) keep.push_back(id);
    return keep_letters(p, keep);
}

std::vector<Nanophrase> subphrases(const Nanophrase& p) {
    int n = p.rank();
    if (n > 20) throw PreconditionError("rank too large to enumerate subphrases");
    std::vector<int> order = letters_in_order(p);
    std::vector<Nanophrase> out;
    out.reserve(static_cast<size_t>(1) << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> keep;
        for (int b = 0; b < n; ++b)
            if (mask & (1u << b)) keep.push_back(order[static_cast<size_t>(b)]);
        out.push_back(keep_letters(p, keep));
    }
    return out;
}

/******** text grammar ********/

namespace {

// Longest-match tokenization of a label word with backtracking, so that
// multi-char symbol sets like {a+, a-} parse unambiguously.
bool tokenize_labels(const std::string& s, size_t i, const HomotopyData& d,
                     std::vector<Symbol>& out) {
    if (i == s.size()) return true;
    std::vector<size_t> candidates;
    for (size_t k = 0; k < d.alpha.size(); ++k)
        if (s.compare(i, d.alpha[k].size(), d.alpha[k]) == 0) candidates.push_back(k);
    std::sort(candidates.begin(), candidates.end(), [&](size_t x, size_t y) {
        return d.alpha[x].size() > d.alpha[y].size();
    });
    for (size_t k : candidates) {
        out.push_back(static_cast<Symbol>(k));
        if (tokenize_labels(s, i + d.alpha[k].size(), d, out)) return true;
        out.pop_back();
    }
    return false;
}

std::vector<Symbol> parse_label_word(const std::string& s, const HomotopyData& d) {
    std::vector<Symbol> out;
    if (s.empty()) return out;
    if (s.find(',') != std::string::npos) {
        size_t start = 0;
        while (true) {
            size_t comma = s.find(',', start);
            std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
            out.push_back(d.symbol(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }
    if (!tokenize_labels(s, 0, d, out))
        throw ParseError("cannot tokenize label word '" + s + "'");
    return out;
}

}  // namespace

ParsedPhrase parse_phrase_text(const std::string& text, const HomotopyData& data) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("phrase missing ':' label word");
    std::string body = text.substr(0, colon);
    std::string word = text.substr(colon + 1);

    Nanophrase p;
    p.comps.emplace_back();
    std::map<int, int> occurrences;
    std::set<int> dotted_ids, undotted_seen;
    size_t i = 0;
    bool comp_is_zero = false;
    bool comp_has_letter = false;
    while (i < body.size()) {
        char c = body[i];
        if (c == '|') {
            p.comps.emplace_back();
            comp_is_zero = comp_has_letter = false;
            ++i;
        } else if (c == '0') {
            if (comp_is_zero || comp_has_letter)
                throw ParseError("'0' must stand alone as an empty component");
            comp_is_zero = true;
            ++i;
        } else if (c >= 'A' && c <= 'Z') {
            if (comp_is_zero) throw ParseError("'0' must stand alone as an empty component");
            comp_has_letter = true;
            int id = c - 'A';
            bool dot = (i + 1 < body.size() && body[i + 1] == '.');
            p.comps.back().push_back(id);
            ++occurrences[id];
            if (dot)
                dotted_ids.insert(id);
            else
                undotted_seen.insert(id);
            i += dot ? 2 : 1;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "' in phrase");
        }
    }
    p.components = static_cast<int>(p.comps.size());

    for (const auto& [id, n] : occurrences)
        if (n != 2)
            throw ParseError(std::string("letter '") + static_cast<char>('A' + id) +
                             "' occurs " + std::to_string(n) + " times, expected 2");
    for (int id : dotted_ids)
        if (undotted_seen.count(id))
            throw ParseError(std::string("letter '") + static_cast<char>('A' + id) +
                             "' must carry the dot at both occurrences or neither");

    std::vector<Symbol> labels = parse_label_word(word, data);
    if (labels.size() != occurrences.size())
        throw ParseError("label word length " + std::to_string(labels.size()) +
                         " does not match rank " + std::to_string(occurrences.size()));
    size_t k = 0;
    for (const auto& [id, n] : occurrences) p.labels[id] = labels[k++];  // alphabetical order

    ParsedPhrase out;
    out.phrase = std::move(p);
    out.dotted.assign(dotted_ids.begin(), dotted_ids.end());
    return out;
}

Nanophrase parse_nanophrase(const std::string& text, const HomotopyData& data) {
    ParsedPhrase pp = parse_phrase_text(text, data);
    if (!pp.dotted.empty()) throw ParseError("semi-letters not allowed here");
    return pp.phrase;
}

std::string print_phrase(const CanonicalForm& f, const HomotopyData& data) {
    if (f.rank > 26) throw PreconditionError("rank exceeds the A-Z text grammar");
    std::string s;
    bool comp_empty = true;
    for (int v : f.code) {
        if (v == CanonicalForm::kSep) {
            if (comp_empty) s.push_back('0');
            s.push_back('|');
            comp_empty = true;
        } else if (v == CanonicalForm::kEmpty) {
            // explicit marker, printed when the component closes
        } else {
            s.push_back(static_cast<char>('A' + v));
            comp_empty = false;
        }
    }
    if (comp_empty) s.push_back('0');
    s.push_back(':');
    bool single = true;
    for (const auto& t : data.alpha) single = single && t.size() == 1;
    for (size_t i = 0; i < f.labels.size(); ++i) {
        if (!single && i > 0) s.push_back(',');
        s += data.alpha[static_cast<size_t>(f.labels[i])];
    }
    return s;
}

std::string print_phrase(const Nanophrase& p, const HomotopyData& data) {
    return print_phrase(canonical_form(p), data);
}

}  // namespace nano

// Command-line frontend: parsing, moves, invariants and group computation as
// reproducible batch runs.  Exit codes: 0 success, 1 verification failure or
// UNKNOWN where a definitive answer was requested, 2 input error, 3
// precondition violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nano/groups.hpp"
#include "nano/invariants.hpp"

namespace {

using namespace nano;

struct DataOptions {
    std::string preset;
    std::string data_file;
};

void add_data_options(CLI::App* cmd, DataOptions& opt) {
    auto* p = cmd->add_option("--preset", opt.preset, "built-in homotopy data (gauss, vknot)");
    auto* f = cmd->add_option("--data", opt.data_file, "homotopy data config file");
    p->excludes(f);
    f->excludes(p);
}

HomotopyData load_data(const DataOptions& opt) {
    if (!opt.preset.empty()) return HomotopyData::preset(opt.preset);
    if (!opt.data_file.empty()) {
        std::ifstream in(opt.data_file);
        if (!in) throw ParseError("cannot open data file '" + opt.data_file + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return HomotopyData::parse_config(ss.str());
    }
    throw ParseError("one of --preset / --data is required");
}

std::string format_sum(const FormalSum& s, const HomotopyData& data) {
    std::ostringstream os;
    for (const auto& [f, c] : s.terms) {
        Int mag = abs(c);
        os << (c >= 0 ? "+" : "-") << mag.get_str() << "·" << print_phrase(f, data)
           << "\n";
    }
    if (s.terms.empty()) os << "0\n";
    return os.str();
}

Symbol need_symbol(const HomotopyData& data, const std::string& tok, const char* flag) {
    if (tok.empty()) throw ParseError(std::string("missing required symbol flag ") + flag);
    return data.symbol(tok);
}

int cmd_invariant(const DataOptions& dopt, const std::string& name, const std::string& phrase,
                  int i1, int j1, const std::string& atok, const std::string& btok) {
    HomotopyData data = load_data(dopt);
    Nanophrase p = parse_nanophrase(phrase, data);
    int i = i1 - 1, j = j1 - 1;
    std::ostringstream os;
    if (name == "v4") {
        os << "v4 = " << to_string(v4(p, data)) << "\n";
    } else if (name == "linking") {
        LinkingMatrix m = linking_matrix(p, data);
        for (int a = 0; a < m.components; ++a)
            for (int b = 0; b < m.components; ++b)
                os << "l[" << a + 1 << "][" << b + 1 << "] = " << pi_to_string(m.at(a, b), data)
                   << "\n";
    } else if (name == "t") {
        TInvariant t = t_invariant(p, data);
        for (int c = 0; c < t.components; ++c)
            for (int ai = 0; ai < t.orientation_size; ++ai)
                for (int bi = 0; bi < t.orientation_size; ++bi)
                    os << "T[" << c + 1 << "]["
                       << data.alpha[(size_t)data.orientation[(size_t)ai]] << "]["
                       << data.alpha[(size_t)data.orientation[(size_t)bi]]
                       << "] = " << to_string(t.at(c, ai, bi)) << "\n";
    } else if (name == "u") {
        Symbol a = need_symbol(data, atok, "-a"), b = need_symbol(data, btok, "-b");
        os << "u[" << i1 << "][" << j1 << "][" << atok << "][" << btok
           << "] = " << to_string(u_invariant(i, j, a, b, p, data)) << "\n";
    } else if (name == "l" || name == "lp" || name == "lpp") {
        Symbol a = need_symbol(data, atok, "-a");
        TaggedValue v = name == "l"    ? l_value(i, j, a, p, data)
                        : name == "lp" ? l_prime(i, j, a, p, data)
                                       : l_double_prime(i, j, a, p, data);
        const char* label = name == "l" ? "l" : name == "lp" ? "l'" : "l''";
        os << label << "[" << i1 << "][" << j1 << "][" << atok << "] = " << to_string(v)
           << "\n";
    } else {
        throw ParseError("unknown invariant '" + name + "'");
    }
    std::cout << os.str();
    return 0;
}

int cmd_group(const DataOptions& dopt, int r, int n, bool closed, bool dump, int jobs) {
    HomotopyData data = load_data(dopt);
    if (dump) {
        GroupPresentation pres = generate_relations(data, r, n, closed, jobs);
        for (size_t g = 0; g < pres.generators.size(); ++g)
            std::cout << "generator\t" << g << "\t" << print_phrase(pres.generators[g], data)
                      << "\n";
        for (const auto& row : pres.rows) {
            std::cout << "relation";
            for (const auto& [col, c] : row)
                std::cout << "\t" << c.get_str() << "*"
                          << print_phrase(pres.generators[(size_t)col], data);
            std::cout << "\n";
        }
    }
    AbelianGroupStructure g = group_structure(data, r, n, closed, jobs);
    std::cout << g.to_string() << "\n";
    return 0;
}

int cmd_equiv(const DataOptions& dopt, const std::string& ptext, const std::string& qtext,
              int max_rank, long long max_states, bool closed) {
    HomotopyData data = load_data(dopt);
    Nanophrase p = parse_nanophrase(ptext, data);
    Nanophrase q = parse_nanophrase(qtext, data);
    if (max_rank < 0) max_rank = std::max(p.rank(), q.rank()) + 2;
    auto res = bounded_equiv(p, q, data, max_rank, max_states, closed);
    if (res) {
        std::cout << "EQUIVALENT (" << *res << (*res == 1 ? " move" : " moves") << ")\n";
        return 0;
    }
    std::cout << "UNKNOWN\n";
    return 1;
}

int cmd_bracket(const DataOptions& dopt, const std::string& qtext, const std::string& ptext) {
    HomotopyData data = load_data(dopt);
    Nanophrase q = parse_nanophrase(qtext, data);
    Nanophrase p = parse_nanophrase(ptext, data);
    std::cout << angle_bracket(FormalSum(q), FormalSum(p)).get_str() << "\n";
    return 0;
}

int cmd_gamma(const DataOptions& dopt, int n, const std::string& ptext) {
    HomotopyData data = load_data(dopt);
    Nanophrase p = parse_nanophrase(ptext, data);
    std::cout << format_sum(gamma(n, FormalSum(p)), data);
    return 0;
}

int cmd_verify(const DataOptions& dopt, const std::string& name, int degree, int max_rank,
               int r, int i1, int j1, const std::string& atok, const std::string& btok,
               int jobs) {
    HomotopyData data = load_data(dopt);
    int i = i1 - 1, j = j1 - 1;
    InvariantFn fn;
    if (name == "v4")
        fn = v4_fn(data);
    else if (name == "linking")
        fn = linking_fn(data, r);
    else if (name == "t")
        fn = t_fn(data, r);
    else if (name == "u")
        fn = u_fn(data, i, j, need_symbol(data, atok, "-a"), need_symbol(data, btok, "-b"));
    else if (name == "l")
        fn = l_fn(data, i, j, need_symbol(data, atok, "-a"));
    else if (name == "lp")
        fn = l_prime_fn(data, i, j, need_symbol(data, atok, "-a"));
    else if (name == "lpp")
        fn = l_double_prime_fn(data, i, j, need_symbol(data, atok, "-a"));
    else
        throw ParseError("unknown invariant '" + name + "'");

    auto bad = find_defect_counterexample(data, r, max_rank, degree + 1, fn, jobs);
    if (!bad) {
        std::cout << "PASS\n";
        return 0;
    }
    std::cout << "FAIL: nonzero defect on " << print_dotted(*bad, data) << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homotopy invariants of words and phrases"};
    app.require_subcommand(1);

    DataOptions dopt;
    std::string name, phrase, ptext, qtext, atok, btok;
    int r = 1, n = 0, i1 = 1, j1 = 2, degree = 0, max_rank = -1, jobs = 0;
    long long max_states = 1000000;
    bool closed = false, dump = false;

    auto* inv = app.add_subcommand("invariant", "evaluate an invariant on a phrase");
    add_data_options(inv, dopt);
    inv->add_option("--name", name, "linking|t|u|l|lp|lpp|v4")->required();
    inv->add_option("-i", i1, "first component index (1-based)");
    inv->add_option("-j", j1, "second component index (1-based)");
    inv->add_option("-a", atok, "first symbol");
    inv->add_option("-b", btok, "second symbol");
    inv->add_option("phrase", phrase, "phrase text")->required();

    auto* grp = app.add_subcommand("group", "invariant-factor form of a universal group");
    add_data_options(grp, dopt);
    grp->add_option("-r", r, "component count")->required();
    grp->add_option("-n", n, "degree")->required();
    grp->add_flag("--closed", closed, "impose shift identifications");
    grp->add_flag("--dump-presentation", dump, "TSV dump of generators and relations");
    grp->add_option("--jobs", jobs, "threads for relation generation");

    auto* eqv = app.add_subcommand("equiv", "bounded search for a move sequence");
    add_data_options(eqv, dopt);
    eqv->add_option("p", ptext, "first phrase")->required();
    eqv->add_option("q", qtext, "second phrase")->required();
    eqv->add_option("--max-rank", max_rank, "rank cap for insertions");
    eqv->add_option("--max-states", max_states, "state cap for the search");
    eqv->add_flag("--closed", closed, "allow shift moves");

    auto* brk = app.add_subcommand("bracket", "subphrase count <q, p>");
    add_data_options(brk, dopt);
    brk->add_option("q", qtext, "pattern phrase")->required();
    brk->add_option("p", ptext, "target phrase")->required();

    auto* gma = app.add_subcommand("gamma", "rank-truncated subphrase sum");
    add_data_options(gma, dopt);
    gma->add_option("-n", n, "degree")->required();
    gma->add_option("phrase", phrase, "phrase text")->required();

    auto* ver = app.add_subcommand("verify", "exhaustive finite-type degree check");
    add_data_options(ver, dopt);
    ver->add_option("--name", name, "linking|t|u|l|lp|lpp|v4")->required();
    ver->add_option("--degree", degree, "claimed degree")->required();
    ver->add_option("--max-rank", max_rank, "rank cap for the sweep")->required();
    ver->add_option("-r", r, "component count");
    ver->add_option("-i", i1, "first component index (1-based)");
    ver->add_option("-j", j1, "second component index (1-based)");
    ver->add_option("-a", atok, "first symbol");
    ver->add_option("-b", btok, "second symbol");
    ver->add_option("--jobs", jobs, "threads for the sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (inv->parsed()) return cmd_invariant(dopt, name, phrase, i1, j1, atok, btok);
        if (grp->parsed()) return cmd_group(dopt, r, n, closed, dump, jobs);
        if (eqv->parsed()) return cmd_equiv(dopt, ptext, qtext, max_rank, max_states, closed);
        if (brk->parsed()) return cmd_bracket(dopt, qtext, ptext);
        if (gma->parsed()) return cmd_gamma(dopt, n, phrase);
        if (ver->parsed())
            return cmd_verify(dopt, name, degree, max_rank, r, i1, j1, atok, btok, jobs);
    } catch (const nano::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const nano::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

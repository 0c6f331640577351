#include "qb/bracket.hpp"
#include "qb/errors.hpp"
#include "qb/json_codec.hpp"
#include "qb/quasimodular.hpp"
#include "qb/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qb;

// family-spec grammar:
//   expr   := term ('*' term)*
//   term   := 'Todot' '[' expr (',' expr)* ']' | atom
//   atom   := NAME '(' int (',' int)? (';' params)? ')' | rational
//   params := param (',' param)*       named (a=, b=, t=, s=, m=) or positional
// families: Q, Qgjt, H, Ht, S, St, T, Tst (positional params: Q->a, H->t, S->a, T->a,b)
struct SpecParser {
    std::string s;
    size_t pos = 0;
    long long order;

    explicit SpecParser(std::string text, long long ord) : s(std::move(text)), order(ord) {}

    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& m) { throw BadParam("parse error at offset " + std::to_string(pos) + ": " + m); }

    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() && (isalnum((unsigned char)s[pos]))) ++pos;
        if (start == pos) fail("expected a name");
        return s.substr(start, pos - start);
    }

    Rat rational() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && (isdigit((unsigned char)s[pos]) || s[pos] == '/')) ++pos;
        if (start == pos) fail("expected a number");
        return parse_rat(s.substr(start, pos - start));
    }

    PartitionFunction parse_expr() {
        PartitionFunction f = parse_term();
        while (true) {
            skip();
            if (!eat('*')) break;
            f = f * parse_term();
        }
        return f;
    }

    PartitionFunction parse_term() {
        skip();
        size_t save = pos;
        if (pos < s.size() && isalpha((unsigned char)s[pos])) {
            std::string name = ident();
            if (name == "Todot") {
                if (!eat('[')) fail("expected [");
                PartitionFunction acc = parse_expr();
                while (eat(',')) acc = odot(acc, parse_expr(), order);
                if (!eat(']')) fail("expected ]");
                return acc;
            }
            pos = save;
            return parse_family();
        }
        Rat c = rational();
        CycQ cc(c);
        return PartitionFunction(rat_str(c), 0, 1, [cc](const Partition&) { return cc; });
    }

    PartitionFunction parse_family() {
        std::string name = ident();
        if (!eat('(')) fail("expected (");
        std::vector<Rat> nums;
        nums.push_back(rational());
        while (eat(',')) nums.push_back(rational());
        std::map<std::string, Rat> named;
        std::vector<Rat> positional;
        if (eat(';')) {
            do {
                skip();
                size_t save = pos;
                if (pos < s.size() && isalpha((unsigned char)s[pos])) {
                    std::string key = ident();
                    if (eat('=')) {
                        named[key] = rational();
                        continue;
                    }
                    pos = save;
                }
                positional.push_back(rational());
            } while (eat(','));
        }
        if (!eat(')')) fail("expected )");
        auto geti = [&](const Rat& r) {
            if (!is_integer(r)) fail("integer parameter expected");
            return (int)to_ll(num(r));
        };
        auto named_or = [&](const std::string& key, size_t posidx, const Rat& dflt) {
            auto it = named.find(key);
            if (it != named.end()) return it->second;
            if (posidx < positional.size()) return positional[posidx];
            return dflt;
        };
        int k = geti(nums[0]);
        if (name == "Q") {
            if (named.count("m")) return pf_Q_gjt(k, to_ll(num(named["m"])));
            return pf_Q(k, named_or("a", 0, Rat(0)));
        }
        if (name == "Qgjt") return pf_Q_gjt(k, geti(named_or("m", 0, Rat(1))));
        if (name == "H") {
            if (named.count("t") || (!positional.empty() && !named.count("a")))
                return pf_H_t(k, geti(named_or("t", 0, Rat(1))));
            return pf_H(k, named_or("a", 0, Rat(0)));
        }
        if (name == "S") {
            if (named.count("t")) return pf_S_t(k, geti(named["t"]));
            return pf_S(k, named_or("a", 0, Rat(0)));
        }
        if (name == "T") {
            if (nums.size() != 2) fail("T takes two orders");
            int l = geti(nums[1]);
            if (named.count("s") || named.count("t"))
                return pf_T_st(k, l, geti(named_or("s", 0, Rat(1))), geti(named_or("t", 1, Rat(1))));
            if (named.count("a") || named.count("b") || !positional.empty())
                return pf_T(k, l, named_or("a", 0, Rat(0)), named_or("b", 1, Rat(0)));
            return pf_T_unshifted(k, l);
        }
        fail("unknown family " + name);
    }
};

void emit_series(const QSeries& s, const std::string& format) {
    if (format == "csv") {
        std::cout << "exp,coeff\n";
        for (auto& [e, c] : s.terms()) std::cout << rat_str(e) << ",\"" << c.reduced().str() << "\"\n";
        return;
    }
    std::cout << to_json(s).dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-bracket engine"};
    app.require_subcommand(0, 1);

    std::string spec;
    long long order = 8;
    std::string format = "json";
    app.add_option("spec", spec, "partition-function family expression");
    app.add_option("--order", order, "q-expansion order (inclusive)");
    app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* cert = app.add_subcommand("certify", "exact membership certificate for a series");
    std::string cert_spec, cert_input;
    int cert_weight = 0, cert_depth = -1;
    long long cert_level = 1, cert_margin = 10, cert_order = -1;
    cert->add_option("--family", cert_spec, "bracket a family expression as the target");
    cert->add_option("--input", cert_input, "read the target series as JSON from a file, or - for stdin");
    cert->add_option("--weight", cert_weight, "target weight")->required();
    cert->add_option("--level", cert_level, "congruence level (1..4)");
    cert->add_option("--depth", cert_depth, "depth bound (default weight/2)");
    cert->add_option("--margin", cert_margin, "verification margin");
    cert->add_option("--order", cert_order, "bracket order when --family is used");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    long long v_order = -1, v_margin = 10;
    int v_jet = -1;
    std::uint64_t v_seed = 1;
    bool v_serial = false;
    ver->add_option("suite", suite, "suite id, or 'all'")->required();
    ver->add_option("--order", v_order, "q-order override");
    ver->add_option("--jet-order", v_jet, "jet-order override");
    ver->add_option("--margin", v_margin, "certification margin");
    ver->add_option("--seed", v_seed, "seed for randomized property sampling");
    ver->add_flag("--serial", v_serial, "disable the parallel check runner");
    ver->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cert->parsed()) {
            QSeries target(Rat(0));
            std::string name = "series";
            if (!cert_spec.empty()) {
                if (cert_order < 0) {
                    int d = cert_depth < 0 ? cert_weight / 2 : cert_depth;
                    cert_order = (long long)spanning_set(cert_level, cert_weight, d, Rat(2)).size() +
                                 cert_margin + 2;
                }
                SpecParser p(cert_spec, cert_order);
                PartitionFunction f = p.parse_expr();
                p.skip();
                if (p.pos != p.s.size()) throw BadParam("trailing input in family expression");
                target = qbracket(f, cert_order);
                name = f.name();
            } else if (!cert_input.empty()) {
                json j;
                if (cert_input == "-") {
                    std::cin >> j;
                } else {
                    std::ifstream in(cert_input);
                    if (!in) throw BadParam("cannot open " + cert_input);
                    in >> j;
                }
                target = qseries_from_json(j);
            } else {
                throw BadParam("certify needs --family or --input");
            }
            int d = cert_depth < 0 ? cert_weight / 2 : cert_depth;
            Certificate c = certify(target, cert_weight, cert_level, d, cert_margin, name);
            std::cout << c.to_json().dump(2) << "\n";
            return 0;
        }
        if (ver->parsed()) {
            SuiteOptions opt;
            opt.order = v_order;
            opt.jet_order = v_jet;
            opt.margin = v_margin;
            opt.seed = v_seed;
            opt.parallel = !v_serial;
            bool ok = true;
            std::vector<std::string> ids;
            if (suite == "all")
                ids = suite_names();
            else {
                bool known = false;
                for (auto& n : suite_names()) known = known || n == suite;
                if (!known) {
                    std::cerr << "unknown suite: " << suite << "\n";
                    return 2;
                }
                ids.push_back(suite);
            }
            for (auto& id : ids) {
                SuiteReport r = run_suite(id, opt);
                std::cout << r.to_json().dump(2) << "\n";
                ok = ok && r.all_ok();
            }
            return ok ? 0 : 1;
        }
        if (spec.empty()) {
            std::cerr << app.help();
            return 2;
        }
        SpecParser p(spec, order);
        PartitionFunction f = p.parse_expr();
        p.skip();
        if (p.pos != p.s.size()) throw BadParam("trailing input in family expression");
        emit_series(qbracket(f, order), format);
        return 0;
    } catch (const BadParam& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}

#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "neron/errors.hpp"
#include "neron/polynomial.hpp"
#include "neron/presentation.hpp"
#include "neron/variables.hpp"

namespace neron {

namespace dsl {

struct Token {
    enum class Type { ident, integer, symbol, end };
    Type type = Type::end;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text, int base_line = 1) { tokenize(text, base_line); }

    const Token& peek(int ahead = 0) const {
        size_t i = pos_ + static_cast<size_t>(ahead);
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    Token next() {
        const Token& t = peek();
        if (t.type != Token::Type::end) ++pos_;
        return t;
    }

    bool at_end() const { return peek().type == Token::Type::end; }

private:
    void tokenize(const std::string& s, int base_line) {
        int line = base_line, col = 1;
        size_t i = 0;
        auto advance = [&](char ch) {
            if (ch == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        };
        while (i < s.size()) {
            char ch = s[i];
            if (ch == '#') {  // comment to end of line
                while (i < s.size() && s[i] != '\n') {
                    advance(s[i]);
                    ++i;
                }
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
                advance(ch);
                ++i;
                continue;
            }
            Token t;
            t.line = line;
            t.col = col;
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                t.type = Token::Type::ident;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                                        s[i] == '_')) {
                    t.text += s[i];
                    advance(s[i]);
                    ++i;
                }
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                t.type = Token::Type::integer;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    t.text += s[i];
                    advance(s[i]);
                    ++i;
                }
            } else if (std::string("+-*^/=,;()[]").find(ch) != std::string::npos) {
                t.type = Token::Type::symbol;
                t.text = std::string(1, ch);
                advance(ch);
                ++i;
            } else {
                throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
            }
            tokens_.push_back(std::move(t));
        }
        Token end;
        end.type = Token::Type::end;
        end.line = line;
        end.col = col;
        tokens_.push_back(end);
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

inline bool is_symbol(const Token& t, const char* s) {
    return t.type == Token::Type::symbol && t.text == s;
}

[[noreturn]] inline void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg + (t.type == Token::Type::end ? " (at end of input)"
                                                       : " (found '" + t.text + "')"),
                     t.line, t.col);
}

inline void expect_symbol(Lexer& lx, const char* s) {
    if (!is_symbol(lx.peek(), s)) fail(lx.peek(), std::string("expected '") + s + "'");
    lx.next();
}

// Polynomial expressions: + - * ^, integer and rational p/q coefficients,
// parentheses, and juxtaposition as multiplication ("2x", "(1+x)T").
class ExprParser {
public:
    ExprParser(Lexer& lx, SharedUniverse u) : lx_(lx), u_(std::move(u)) {}

    Polynomial parse_expr() {
        bool negate = false;
        if (is_symbol(lx_.peek(), "-")) {
            lx_.next();
            negate = true;
        } else if (is_symbol(lx_.peek(), "+")) {
            lx_.next();
        }
        Polynomial acc = parse_term();
        if (negate) acc = -acc;
        while (is_symbol(lx_.peek(), "+") || is_symbol(lx_.peek(), "-")) {
            bool minus = lx_.next().text == "-";
            Polynomial t = parse_term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

private:
    bool starts_factor(const Token& t) const {
        return t.type == Token::Type::ident || t.type == Token::Type::integer ||
               is_symbol(t, "(");
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        for (;;) {
            if (is_symbol(lx_.peek(), "*")) {
                lx_.next();
                acc *= parse_factor();
            } else if (starts_factor(lx_.peek())) {
                acc *= parse_factor();  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_factor() {
        Polynomial base = parse_primary();
        if (is_symbol(lx_.peek(), "^")) {
            lx_.next();
            const Token& t = lx_.peek();
            if (t.type != Token::Type::integer) fail(t, "expected integer exponent");
            lx_.next();
            base = base.pow(std::stoi(t.text));
        }
        return base;
    }

    Polynomial parse_primary() {
        const Token& t = lx_.peek();
        if (t.type == Token::Type::integer) {
            lx_.next();
            BigInt num(t.text);
            if (is_symbol(lx_.peek(), "/")) {
                lx_.next();
                const Token& d = lx_.peek();
                if (d.type != Token::Type::integer) fail(d, "expected integer denominator");
                lx_.next();
                BigInt den(d.text);
                if (den == 0) fail(d, "zero denominator in rational literal");
                return Polynomial::constant(u_, Rational(num, den));
            }
            return Polynomial::constant(u_, Rational(num));
        }
        if (t.type == Token::Type::ident) {
            auto v = u_->find(t.text);
            if (!v) fail(t, "undeclared variable '" + t.text + "'");
            lx_.next();
            return Polynomial::variable(u_, *v);
        }
        if (is_symbol(t, "(")) {
            lx_.next();
            Polynomial inner = parse_expr();
            expect_symbol(lx_, ")");
            return inner;
        }
        fail(t, "expected expression");
    }

    Lexer& lx_;
    SharedUniverse u_;
};

}  // namespace dsl

// Parses a single polynomial expression over an existing universe; the
// test-suite workhorse.
inline Polynomial parse_polynomial(const SharedUniverse& u, const std::string& text) {
    dsl::Lexer lx(text);
    dsl::ExprParser p(lx, u);
    Polynomial out = p.parse_expr();
    if (!lx.at_end()) dsl::fail(lx.peek(), "trailing input after expression");
    return out;
}

// A parsed .nrn problem file. The variable universe is built from the
// declarations; T-variables and the reserved auxiliaries are appended
// automatically.
struct ProblemFile {
    SessionVars sv;
    std::vector<std::string> x_names, y_names;
    std::vector<Polynomial> j_gens, i_gens;
    std::vector<int> f_indices;   // 0-based
    std::vector<int> minor_cols;  // 0-based
    Polynomial n_poly;
    std::vector<Polynomial> y_prime;
    int k = 1;
    int c = 0;
    std::optional<int> trunc;

    DesingularizationInput to_input() const {
        DesingularizationInput inp;
        inp.sv = sv;
        inp.j_gens = j_gens;
        inp.i_gens = i_gens;
        inp.f_indices = f_indices;
        inp.minor_cols = minor_cols;
        inp.n_poly = n_poly;
        inp.y_prime = y_prime;
        inp.k = k;
        inp.c = c;
        inp.trunc = trunc;
        return inp;
    }

    // Canonical text; parse(render(parse(t))) == parse(t) by construction.
    std::string render() const {
        std::ostringstream os;
        auto namelist = [&](const std::vector<std::string>& ns) {
            std::string out;
            for (size_t i = 0; i < ns.size(); ++i) out += (i ? ", " : "") + ns[i];
            return out;
        };
        auto polylist = [&](const std::vector<Polynomial>& ps) {
            std::string out;
            for (size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].str();
            return out;
        };
        auto intlist = [&](const std::vector<int>& is) {
            std::string out = "[";
            for (size_t i = 0; i < is.size(); ++i)
                out += (i ? ", " : "") + std::to_string(is[i] + 1);
            return out + "]";
        };
        os << "field Q;\n";
        os << "vars " << namelist(x_names) << ";\n";
        if (!j_gens.empty()) os << "J = " << polylist(j_gens) << ";\n";
        os << "Yvars " << namelist(y_names) << ";\n";
        os << "I = " << polylist(i_gens) << ";\n";
        os << "f = " << intlist(f_indices) << ";\n";
        os << "cols = " << intlist(minor_cols) << ";\n";
        os << "N = " << n_poly.str() << ";\n";
        os << "yprime = [";
        for (size_t i = 0; i < y_prime.size(); ++i) os << (i ? ", " : "") << y_prime[i].str();
        os << "];\n";
        os << "k = " << k << ";\n";
        os << "c = " << c << ";\n";
        if (trunc) os << "D = " << *trunc << ";\n";
        return os.str();
    }
};

namespace dsl {

inline const std::set<std::string>& statement_keys() {
    static const std::set<std::string> keys{"field", "vars", "J",      "Yvars", "I", "f",
                                            "cols",  "N",    "yprime", "k",     "c", "D"};
    return keys;
}

struct RawStatement {
    Token key;
    std::vector<Token> body;  // tokens between key (and optional '=') and ';'
    bool had_equals = false;
};

inline std::vector<RawStatement> split_statements(Lexer& lx) {
    std::vector<RawStatement> out;
    while (!lx.at_end()) {
        RawStatement st;
        const Token& k = lx.peek();
        if (k.type != Token::Type::ident || !statement_keys().count(k.text))
            fail(k, "expected a statement keyword");
        st.key = lx.next();
        if (is_symbol(lx.peek(), "=")) {
            lx.next();
            st.had_equals = true;
        }
        while (!lx.at_end() && !is_symbol(lx.peek(), ";")) st.body.push_back(lx.next());
        if (lx.at_end()) fail(lx.peek(), "missing ';' after statement '" + st.key.text + "'");
        lx.next();  // ';'
        out.push_back(std::move(st));
    }
    return out;
}

inline Lexer body_lexer(const RawStatement& st) {
    // Re-render the body tokens at their original positions so nested
    // diagnostics keep accurate line/column information.
    std::string text;
    int line = st.body.empty() ? st.key.line : st.body.front().line;
    int col = st.body.empty() ? st.key.col : st.body.front().col;
    text.append(static_cast<size_t>(line - 1), '\n');
    text.append(static_cast<size_t>(col - 1), ' ');
    int cur_line = line, cur_col = col;
    for (const auto& t : st.body) {
        while (cur_line < t.line) {
            text += '\n';
            ++cur_line;
            cur_col = 1;
        }
        while (cur_col < t.col) {
            text += ' ';
            ++cur_col;
        }
        text += t.text;
        cur_col += static_cast<int>(t.text.size());
    }
    return Lexer(text);
}

}  // namespace dsl

inline ProblemFile parse_problem(const std::string& text) {
    using dsl::RawStatement;
    dsl::Lexer lx(text);
    std::vector<RawStatement> statements = dsl::split_statements(lx);
    std::map<std::string, const RawStatement*> by_key;
    for (const auto& st : statements) {
        if (by_key.count(st.key.text))
            dsl::fail(st.key, "duplicate statement '" + st.key.text + "'");
        by_key[st.key.text] = &st;
    }
    auto require = [&](const std::string& key) -> const RawStatement& {
        auto it = by_key.find(key);
        if (it == by_key.end())
            throw ParseError("missing required statement '" + key + "'", 1, 1);
        return *it->second;
    };

    auto names_of = [&](const RawStatement& st) {
        std::vector<std::string> names;
        dsl::Lexer blx = dsl::body_lexer(st);
        for (;;) {
            const dsl::Token& t = blx.peek();
            if (t.type != dsl::Token::Type::ident) dsl::fail(t, "expected a variable name");
            if (dsl::statement_keys().count(t.text))
                dsl::fail(t, "'" + t.text + "' is reserved and cannot name a variable");
            if (t.text[0] == '_')
                dsl::fail(t, "variable names starting with '_' are reserved");
            names.push_back(t.text);
            blx.next();
            if (dsl::is_symbol(blx.peek(), ",")) {
                blx.next();
                continue;
            }
            if (blx.at_end()) break;
            dsl::fail(blx.peek(), "expected ',' or ';'");
        }
        return names;
    };

    ProblemFile pf;
    if (by_key.count("field")) {
        dsl::Lexer blx = dsl::body_lexer(*by_key["field"]);
        const dsl::Token& t = blx.peek();
        if (t.type != dsl::Token::Type::ident || t.text != "Q")
            dsl::fail(t, "only the rational field Q is supported");
    }
    pf.x_names = names_of(require("vars"));
    pf.y_names = names_of(require("Yvars"));
    pf.sv = make_session(pf.x_names, pf.y_names);

    auto parse_poly_list = [&](const RawStatement& st) {
        std::vector<Polynomial> ps;
        dsl::Lexer blx = dsl::body_lexer(st);
        dsl::ExprParser ep(blx, pf.sv.u);
        for (;;) {
            ps.push_back(ep.parse_expr());
            if (dsl::is_symbol(blx.peek(), ",")) {
                blx.next();
                continue;
            }
            if (blx.at_end()) break;
            dsl::fail(blx.peek(), "expected ',' or ';' after polynomial");
        }
        return ps;
    };
    auto parse_single_poly = [&](const RawStatement& st) {
        dsl::Lexer blx = dsl::body_lexer(st);
        dsl::ExprParser ep(blx, pf.sv.u);
        Polynomial p = ep.parse_expr();
        if (!blx.at_end()) dsl::fail(blx.peek(), "trailing input after polynomial");
        return p;
    };
    auto parse_poly_vector = [&](const RawStatement& st) {
        std::vector<Polynomial> ps;
        dsl::Lexer blx = dsl::body_lexer(st);
        dsl::expect_symbol(blx, "[");
        dsl::ExprParser ep(blx, pf.sv.u);
        if (!dsl::is_symbol(blx.peek(), "]")) {
            for (;;) {
                ps.push_back(ep.parse_expr());
                if (dsl::is_symbol(blx.peek(), ",")) {
                    blx.next();
                    continue;
                }
                break;
            }
        }
        dsl::expect_symbol(blx, "]");
        if (!blx.at_end()) dsl::fail(blx.peek(), "trailing input after ']'");
        return ps;
    };
    auto parse_index_list = [&](const RawStatement& st, int limit, const std::string& what) {
        std::vector<int> out;
        dsl::Lexer blx = dsl::body_lexer(st);
        dsl::expect_symbol(blx, "[");
        for (;;) {
            const dsl::Token& t = blx.peek();
            if (t.type != dsl::Token::Type::integer) dsl::fail(t, "expected an index");
            int v = std::stoi(t.text);
            if (v < 1 || v > limit)
                dsl::fail(t, what + " index " + t.text + " out of range [1, " +
                                 std::to_string(limit) + "]");
            for (int prev : out)
                if (prev == v - 1) dsl::fail(t, "duplicate " + what + " index " + t.text);
            out.push_back(v - 1);
            blx.next();
            if (dsl::is_symbol(blx.peek(), ",")) {
                blx.next();
                continue;
            }
            break;
        }
        dsl::expect_symbol(blx, "]");
        return out;
    };
    auto parse_int = [&](const RawStatement& st, const std::string& what) {
        dsl::Lexer blx = dsl::body_lexer(st);
        bool neg = false;
        if (dsl::is_symbol(blx.peek(), "-")) {
            blx.next();
            neg = true;
        }
        const dsl::Token& t = blx.peek();
        if (t.type != dsl::Token::Type::integer) dsl::fail(t, "expected an integer for " + what);
        int v = std::stoi(t.text);
        blx.next();
        if (!blx.at_end()) dsl::fail(blx.peek(), "trailing input after integer");
        return neg ? -v : v;
    };

    if (by_key.count("J")) pf.j_gens = parse_poly_list(*by_key["J"]);
    pf.i_gens = parse_poly_list(require("I"));
    pf.f_indices = parse_index_list(require("f"), static_cast<int>(pf.i_gens.size()), "f");
    pf.minor_cols = parse_index_list(require("cols"), static_cast<int>(pf.y_names.size()), "cols");
    pf.n_poly = parse_single_poly(require("N"));
    pf.y_prime = parse_poly_vector(require("yprime"));
    pf.k = parse_int(require("k"), "k");
    pf.c = parse_int(require("c"), "c");
    if (by_key.count("D")) pf.trunc = parse_int(*by_key["D"], "D");

    // Semantic validation with named diagnostics.
    const RawStatement& yst = require("yprime");
    if (pf.y_prime.size() != pf.y_names.size())
        dsl::fail(yst.key, "yprime must have one entry per Y variable");
    std::vector<VarId> xy = pf.sv.x;
    xy.insert(xy.end(), pf.sv.y.begin(), pf.sv.y.end());
    for (const auto& p : pf.j_gens)
        if (!p.supported_on(pf.sv.x)) dsl::fail(by_key["J"]->key, "J generators must lie in k[x]");
    for (const auto& p : pf.i_gens)
        if (!p.supported_on(xy)) dsl::fail(require("I").key, "I generators must lie in k[x, Y]");
    if (!pf.n_poly.supported_on(xy)) dsl::fail(require("N").key, "N must lie in k[x, Y]");
    for (const auto& p : pf.y_prime)
        if (!p.supported_on(pf.sv.x)) dsl::fail(yst.key, "yprime entries must lie in k[x]");
    if (pf.k < 1) dsl::fail(require("k").key, "k must be positive");
    if (pf.c < 0) dsl::fail(require("c").key, "c must be non-negative");
    if (pf.trunc && *pf.trunc < 1) dsl::fail(by_key["D"]->key, "D must be positive");
    if (pf.f_indices.size() != pf.minor_cols.size())
        dsl::fail(require("cols").key, "f and cols must select the same number r");
    if (pf.f_indices.size() > pf.y_names.size())
        dsl::fail(require("f").key, "r cannot exceed the number of Y variables");
    return pf;
}

}  // namespace neron

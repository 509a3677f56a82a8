#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "neron/desingularize.hpp"
#include "neron/presentation.hpp"
#include "neron/problem.hpp"

namespace neron {

namespace render_detail {

// Structural form of h_l: "Y - x - x^3 - (2x + 2x^3)*T". Falls back to the
// canonical polynomial string when the structural pieces are unavailable.
inline std::string h_line(const SmoothPresentation& pres, int l) {
    const SharedUniverse& u = pres.sv.u;
    int orig = pres.perm[static_cast<size_t>(l)];
    std::ostringstream os;
    os << u->name(pres.sv.y[static_cast<size_t>(orig)]);
    const Polynomial& yp = pres.y_prime[static_cast<size_t>(orig)];
    if (!yp.is_zero()) {
        std::string s = (-yp).str();
        os << (s[0] == '-' ? " - " + s.substr(1) : " + " + s);
    }
    std::map<VarId, Polynomial> ybind;
    for (int j = 0; j < pres.n(); ++j)
        ybind[pres.sv.y[static_cast<size_t>(j)]] = pres.y_prime[static_cast<size_t>(j)];
    Polynomial d_e = pres.d.pow(pres.e);
    for (int j = 0; j < pres.n(); ++j) {
        Polynomial coeff = d_e * pres.G[static_cast<size_t>(l)][static_cast<size_t>(j)].substitute(ybind);
        if (coeff.is_zero()) continue;
        os << " - (" << coeff.str() << ")*" << u->name(pres.sv.t[static_cast<size_t>(j)]);
    }
    return os.str();
}

inline std::string matrix_str(const std::vector<std::vector<Polynomial>>& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace render_detail

// Deterministic text form of a presentation, re-readable by
// read_presentation. Certificates come from a verification run on the
// presentation.
inline std::string render_presentation(const SmoothPresentation& pres,
                                       const VerifyReport& verify) {
    std::ostringstream os;
    auto namelist = [&](const std::vector<VarId>& ids) {
        std::string out;
        for (size_t i = 0; i < ids.size(); ++i)
            out += (i ? ", " : "") + pres.sv.u->name(ids[i]);
        return out;
    };
    os << "NERON PRESENTATION v1\n";
    os << "RING\n";
    os << "field Q;\n";
    os << "vars " << namelist(pres.sv.x) << ";\n";
    if (!pres.j_gens.empty()) {
        os << "J = ";
        for (size_t i = 0; i < pres.j_gens.size(); ++i)
            os << (i ? ", " : "") << pres.j_gens[i].str();
        os << ";\n";
    }
    os << "Yvars " << namelist(pres.sv.y) << ";\n";
    os << "Tvars " << namelist(pres.sv.t) << ";\n";
    os << "IDEAL-I\n";
    os << "I = ";
    for (size_t i = 0; i < pres.i_gens.size(); ++i) os << (i ? ", " : "") << pres.i_gens[i].str();
    os << ";\n";
    auto intlist = [](const std::vector<int>& is) {
        std::string out = "[";
        for (size_t i = 0; i < is.size(); ++i) out += (i ? ", " : "") + std::to_string(is[i] + 1);
        return out + "]";
    };
    os << "f = " << intlist(pres.f_indices) << ";\n";
    os << "N = " << pres.n_poly.str() << ";\n";
    os << "yprime = [";
    for (size_t i = 0; i < pres.y_prime.size(); ++i)
        os << (i ? ", " : "") << pres.y_prime[i].str();
    os << "];\n";
    os << "k = " << pres.k << ";\n";
    os << "c = " << pres.c << ";\n";
    os << "PERM\n";
    os << "cols = " << intlist(pres.minor_cols) << ";\n";
    os << "perm = " << intlist(pres.perm) << ";\n";
    os << "MATRICES\n";
    os << "d = " << pres.d.str() << ";\n";
    os << "e = " << pres.e << ";\n";
    os << "H = " << render_detail::matrix_str(pres.H) << ";\n";
    os << "G = " << render_detail::matrix_str(pres.G) << ";\n";
    os << "H-SYSTEM\n";
    for (int l = 0; l < pres.n(); ++l)
        os << "h" << (l + 1) << " = " << render_detail::h_line(pres, l) << ";\n";
    os << "G-SYSTEM\n";
    for (int i = 0; i < pres.r(); ++i)
        os << "q" << (i + 1) << " = " << pres.q[static_cast<size_t>(i)].str() << ";\n";
    for (int i = 0; i < pres.r(); ++i) {
        const GEntry& ge = pres.g[static_cast<size_t>(i)];
        os << "g" << (i + 1) << " = [(" << ge.a.num().str() << ") / (" << ge.a.den().str()
           << ")] + " << ge.tpart.str() << ";\n";
    }
    os << "UNITS\n";
    os << "s = " << pres.s.str() << ";\n";
    os << "sprime = " << pres.s_prime.str() << ";\n";
    os << "CERTIFICATES\n";
    for (const auto& c : verify.checks)
        os << c.name << " = " << (c.pass ? "pass" : "fail") << ";\n";
    os << "END\n";
    return os.str();
}

struct ReadPresentation {
    SmoothPresentation pres;
    VerifyReport certificates;  // the summary stored in the file
};

// Parses the rendered format back. Statement lines reuse the problem-DSL
// lexer; section headers are matched verbatim.
inline ReadPresentation read_presentation(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> sections;  // (header, body)
    {
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        std::string current;
        bool seen_magic = false;
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (!seen_magic) {
                if (line != "NERON PRESENTATION v1")
                    throw ParseError("not a presentation file (missing magic line)", lineno, 1);
                seen_magic = true;
                continue;
            }
            if (line == "RING" || line == "IDEAL-I" || line == "PERM" || line == "MATRICES" ||
                line == "H-SYSTEM" || line == "G-SYSTEM" || line == "UNITS" ||
                line == "CERTIFICATES" || line == "END") {
                sections.emplace_back(line, "");
                current = line;
                continue;
            }
            if (current.empty())
                throw ParseError("statement before first section header", lineno, 1);
            for (auto& [hdr, body] : sections)
                if (hdr == current) body += line + "\n";
        }
        if (!seen_magic) throw ParseError("empty presentation file", 1, 1);
    }
    auto section = [&](const std::string& name) -> const std::string& {
        for (const auto& [hdr, body] : sections)
            if (hdr == name) return body;
        throw ParseError("missing section " + name, 1, 1);
    };

    // Each section body is a list of `key = value;` statements keyed by name.
    struct Stmt {
        std::string key;
        std::string value;
    };
    auto statements_of = [](const std::string& body) {
        std::vector<Stmt> out;
        std::istringstream is(body);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            auto eq = line.find('=');
            auto semi = line.rfind(';');
            if (eq == std::string::npos) {
                // "vars x, z;" style: key is the first word
                auto sp = line.find(' ');
                if (sp == std::string::npos || semi == std::string::npos)
                    throw ParseError("malformed presentation line: " + line, 1, 1);
                out.push_back({line.substr(0, sp), line.substr(sp + 1, semi - sp - 1)});
            } else {
                if (semi == std::string::npos || semi < eq)
                    throw ParseError("missing ';' in presentation line: " + line, 1, 1);
                std::string key = line.substr(0, eq);
                while (!key.empty() && key.back() == ' ') key.pop_back();
                std::string value = line.substr(eq + 1, semi - eq - 1);
                out.push_back({key, value});
            }
        }
        return out;
    };
    auto find_stmt = [](const std::vector<Stmt>& ss, const std::string& key) -> const Stmt& {
        for (const auto& s : ss)
            if (s.key == key) return s;
        throw ParseError("missing presentation entry '" + key + "'", 1, 1);
    };
    auto split_names = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',' || ch == ' ') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };

    ReadPresentation out;
    SmoothPresentation& pres = out.pres;

    auto ring_stmts = statements_of(section("RING"));
    std::vector<std::string> x_names = split_names(find_stmt(ring_stmts, "vars").value);
    std::vector<std::string> y_names = split_names(find_stmt(ring_stmts, "Yvars").value);
    std::vector<std::string> t_names = split_names(find_stmt(ring_stmts, "Tvars").value);
    pres.sv = make_session(x_names, y_names, t_names);
    const SharedUniverse& u = pres.sv.u;

    auto parse_poly = [&](const std::string& s) { return parse_polynomial(u, s); };
    auto parse_poly_list = [&](const std::string& s) {
        std::vector<Polynomial> ps;
        dsl::Lexer lx(s);
        dsl::ExprParser ep(lx, u);
        for (;;) {
            ps.push_back(ep.parse_expr());
            if (dsl::is_symbol(lx.peek(), ",")) {
                lx.next();
                continue;
            }
            break;
        }
        return ps;
    };
    auto parse_indices = [&](const std::string& s) {
        std::vector<int> is;
        dsl::Lexer lx(s);
        dsl::expect_symbol(lx, "[");
        for (;;) {
            const dsl::Token& t = lx.peek();
            if (t.type != dsl::Token::Type::integer) dsl::fail(t, "expected index");
            is.push_back(std::stoi(t.text) - 1);
            lx.next();
            if (dsl::is_symbol(lx.peek(), ",")) {
                lx.next();
                continue;
            }
            break;
        }
        dsl::expect_symbol(lx, "]");
        return is;
    };
    auto parse_matrix = [&](const std::string& s) {
        std::vector<std::vector<Polynomial>> m;
        dsl::Lexer lx(s);
        dsl::ExprParser ep(lx, u);
        dsl::expect_symbol(lx, "[");
        for (;;) {
            dsl::expect_symbol(lx, "[");
            std::vector<Polynomial> row;
            for (;;) {
                row.push_back(ep.parse_expr());
                if (dsl::is_symbol(lx.peek(), ",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            dsl::expect_symbol(lx, "]");
            m.push_back(std::move(row));
            if (dsl::is_symbol(lx.peek(), ",")) {
                lx.next();
                continue;
            }
            break;
        }
        dsl::expect_symbol(lx, "]");
        return m;
    };

    for (const auto& st : ring_stmts)
        if (st.key == "J") pres.j_gens = parse_poly_list(st.value);

    auto ideal_stmts = statements_of(section("IDEAL-I"));
    pres.i_gens = parse_poly_list(find_stmt(ideal_stmts, "I").value);
    pres.f_indices = parse_indices(find_stmt(ideal_stmts, "f").value);
    pres.n_poly = parse_poly(find_stmt(ideal_stmts, "N").value);
    {
        std::string v = find_stmt(ideal_stmts, "yprime").value;
        dsl::Lexer lx(v);
        dsl::ExprParser ep(lx, u);
        dsl::expect_symbol(lx, "[");
        for (;;) {
            pres.y_prime.push_back(ep.parse_expr());
            if (dsl::is_symbol(lx.peek(), ",")) {
                lx.next();
                continue;
            }
            break;
        }
        dsl::expect_symbol(lx, "]");
    }
    pres.k = std::stoi(find_stmt(ideal_stmts, "k").value);
    pres.c = std::stoi(find_stmt(ideal_stmts, "c").value);

    auto perm_stmts = statements_of(section("PERM"));
    pres.minor_cols = parse_indices(find_stmt(perm_stmts, "cols").value);
    pres.perm = parse_indices(find_stmt(perm_stmts, "perm").value);

    auto mat_stmts = statements_of(section("MATRICES"));
    pres.d = parse_poly(find_stmt(mat_stmts, "d").value);
    pres.e = std::stoi(find_stmt(mat_stmts, "e").value);
    pres.H = parse_matrix(find_stmt(mat_stmts, "H").value);
    pres.G = parse_matrix(find_stmt(mat_stmts, "G").value);
    pres.report.d = pres.d;
    pres.report.e = pres.e;

    auto h_stmts = statements_of(section("H-SYSTEM"));
    for (int l = 0; l < pres.n(); ++l)
        pres.h.push_back(parse_poly(find_stmt(h_stmts, "h" + std::to_string(l + 1)).value));

    auto g_stmts = statements_of(section("G-SYSTEM"));
    for (int i = 0; i < pres.r(); ++i)
        pres.q.push_back(parse_poly(find_stmt(g_stmts, "q" + std::to_string(i + 1)).value));
    for (int i = 0; i < pres.r(); ++i) {
        std::string v = find_stmt(g_stmts, "g" + std::to_string(i + 1)).value;
        // [(num) / (den)] + tpart
        auto lb = v.find('[');
        auto rb = v.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
            throw ParseError("malformed g entry: " + v, 1, 1);
        std::string frac = v.substr(lb + 1, rb - lb - 1);
        int depth = 0;
        size_t slash = std::string::npos;
        for (size_t p = 0; p < frac.size(); ++p) {
            if (frac[p] == '(') ++depth;
            if (frac[p] == ')') --depth;
            if (frac[p] == '/' && depth == 0) {
                slash = p;
                break;
            }
        }
        if (slash == std::string::npos) throw ParseError("malformed g fraction: " + frac, 1, 1);
        GEntry ge;
        ge.a = LocalFraction(parse_poly(frac.substr(0, slash)), parse_poly(frac.substr(slash + 1)));
        std::string rest = v.substr(rb + 1);
        auto plus = rest.find('+');
        if (plus == std::string::npos) throw ParseError("malformed g entry: " + v, 1, 1);
        ge.tpart = parse_poly(rest.substr(plus + 1));
        pres.g.push_back(std::move(ge));
    }

    auto unit_stmts = statements_of(section("UNITS"));
    pres.s = parse_poly(find_stmt(unit_stmts, "s").value);
    pres.s_prime = parse_poly(find_stmt(unit_stmts, "sprime").value);

    for (const auto& st : statements_of(section("CERTIFICATES"))) {
        std::string v = st.value;
        v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
        out.certificates.checks.push_back({st.key, v == "pass", ""});
    }
    return out;
}

}  // namespace neron

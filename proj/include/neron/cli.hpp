#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neron/desingularize.hpp"
#include "neron/newton.hpp"
#include "neron/problem.hpp"
#include "neron/render.hpp"

namespace neron {

// Exit codes are part of the contract: 0 success, 1 usage/parse errors,
// 2 for the step-4 rejection (which also prints the verbatim message on the
// error stream).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRejected = 2;

namespace cli_detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit(const std::string& text, const std::optional<std::string>& out_path,
                 std::ostream& out) {
    if (out_path) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) throw Error("cannot write file '" + *out_path + "'");
        f << text;
    } else {
        out << text;
    }
}

inline std::string report_text(const CheckReport& rep, bool verbose) {
    std::ostringstream os;
    os << "d = " << rep.d.str() << "\n";
    os << "e = " << rep.e << "\n";
    for (const auto& c : rep.conditions) {
        os << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
        if (!c.pass || verbose) {
            if (!c.witness.empty()) os << ": " << c.witness;
        }
        os << "\n";
    }
    if (rep.a_membership_warning)
        os << "[warn] " << *rep.a_membership_warning << "\n";
    return os.str();
}

inline std::string vector_text(const TruncatedRing& R, const SessionVars& sv,
                               const TruncatedVector& y) {
    std::ostringstream os;
    for (size_t i = 0; i < y.size(); ++i) {
        Polynomial p(sv.u);
        for (const auto& [m, c] : y[i]) p.add_term(m, c);
        os << sv.u->name(sv.y[i]) << " = " << p.str() << "  (mod (x)^"
           << R.truncation_order() << ")\n";
    }
    return os.str();
}

inline int default_trunc(const ProblemFile& pf, const SmoothPresentation& pres) {
    if (pf.trunc) return *pf.trunc;
    return 2 * required_precision(pres.e, pres.k, pres.c) + 4;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"General Neron desingularization toolkit for one-dimensional local rings"};
    app.require_subcommand(1);

    std::string in_path;
    std::optional<std::string> out_path;
    bool verbose = false;
    app.add_flag("--verbose", verbose, "print witnesses for passing checks too");

    auto add_common = [&](CLI::App* sub, bool wants_file = true) {
        if (wants_file) sub->add_option("file", in_path, "problem file (.nrn)")->required();
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
        sub->add_flag("--verbose", verbose, "print witnesses for passing checks too");
    };

    CLI::App* check = app.add_subcommand("check", "validate a problem (steps 1-4)");
    add_common(check);
    CLI::App* desing = app.add_subcommand("desingularize", "run the full construction");
    add_common(desing);
    CLI::App* verify = app.add_subcommand("verify", "re-check a rendered presentation");
    verify->add_option("file", in_path, "presentation file")->required();
    verify->add_option("--out", out_path, "write output to a file instead of stdout");
    CLI::App* lift = app.add_subcommand("lift", "lift y' to a solution at finite precision");
    add_common(lift);
    int trunc_flag = 0;
    lift->add_option("--trunc", trunc_flag, "truncation order D");
    CLI::App* param = app.add_subcommand("parametrize", "solve with a prescribed free block");
    add_common(param);
    std::string z_text;
    param->add_option("--z", z_text, "comma-separated free-block polynomials in x")->required();
    param->add_option("--trunc", trunc_flag, "truncation order D");
    CLI::App* precision = app.add_subcommand("precision", "print (2e+1)k + c");
    int pe = 1, pk = 1, pc = 0;
    precision->add_option("-e", pe, "annihilator exponent e")->required();
    precision->add_option("-k", pk, "containment exponent k")->required();
    precision->add_option("-c", pc, "target agreement order c")->required();
    precision->add_option("--out", out_path, "write output to a file instead of stdout");

    std::vector<const char*> argv;
    argv.push_back("neron");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (precision->parsed()) {
            cli_detail::emit(std::to_string(required_precision(pe, pk, pc)) + "\n", out_path, out);
            return kExitOk;
        }
        if (verify->parsed()) {
            ReadPresentation rp = read_presentation(cli_detail::slurp(in_path));
            VerifyReport rep = verify_presentation(rp.pres);
            std::ostringstream os;
            for (const auto& c : rep.checks) {
                os << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
                if (!c.pass && !c.detail.empty()) os << ": " << c.detail;
                os << "\n";
            }
            cli_detail::emit(os.str(), out_path, out);
            return rep.all_pass() ? kExitOk : kExitError;
        }

        ProblemFile pf = parse_problem(cli_detail::slurp(in_path));
        if (check->parsed()) {
            CheckReport rep = validate_input(pf.to_input());
            cli_detail::emit(cli_detail::report_text(rep, verbose), out_path, out);
            if (!rep.ok()) {
                err << kNotWellChosen << "\n" << rep.failures();
                return kExitRejected;
            }
            return kExitOk;
        }

        SmoothPresentation pres = desingularize(pf.to_input());
        if (desing->parsed()) {
            VerifyReport vr = verify_presentation(pres);
            cli_detail::emit(render_presentation(pres, vr), out_path, out);
            return vr.all_pass() ? kExitOk : kExitError;
        }
        if (lift->parsed()) {
            int D = trunc_flag > 0 ? trunc_flag : cli_detail::default_trunc(pf, pres);
            LiftResult lr = lift_solution(pres, D);
            std::ostringstream os;
            os << cli_detail::vector_text(lr.R, pres.sv, lr.y);
            os << "residual order = "
               << residual_order(pres.i_gens, pres.sv.y, lr.y, lr.R) << "\n";
            cli_detail::emit(os.str(), out_path, out);
            return kExitOk;
        }
        if (param->parsed()) {
            int D = trunc_flag > 0 ? trunc_flag : cli_detail::default_trunc(pf, pres);
            std::vector<Polynomial> z;
            dsl::Lexer lx(z_text);
            dsl::ExprParser ep(lx, pres.sv.u);
            for (;;) {
                z.push_back(ep.parse_expr());
                if (dsl::is_symbol(lx.peek(), ",")) {
                    lx.next();
                    continue;
                }
                break;
            }
            LiftResult lr = parametrize_solutions(pres, z, D);
            std::ostringstream os;
            os << cli_detail::vector_text(lr.R, pres.sv, lr.y);
            os << "residual order = "
               << residual_order(pres.i_gens, pres.sv.y, lr.y, lr.R) << "\n";
            cli_detail::emit(os.str(), out_path, out);
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        err << e.what() << "\n" << e.report.failures();
        return kExitRejected;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    err << "error: no subcommand selected\n";
    return kExitError;
}

}  // namespace neron

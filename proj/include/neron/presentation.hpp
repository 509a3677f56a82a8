#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neron/errors.hpp"
#include "neron/fraction.hpp"
#include "neron/local_ring.hpp"
#include "neron/polynomial.hpp"
#include "neron/variables.hpp"

namespace neron {

// The rejection message is part of the tool's contract, byte for byte.
inline constexpr const char* kNotWellChosen = "y', N, (f_1,...,f_r) are not well chosen";

// B = A[Y]/I with A = k[x]_(x)/J, plus the data selecting the construction:
// r generators of I, the Jacobian minor columns, the colon witness N, the
// approximate solution y', and the precision parameters k, c.
struct DesingularizationInput {
    SessionVars sv;
    std::vector<Polynomial> j_gens;   // in k[x], inside (x)
    std::vector<Polynomial> i_gens;   // in k[x, Y]
    std::vector<int> f_indices;       // 0-based into i_gens, size r
    std::vector<int> minor_cols;      // 0-based Y columns, size r
    Polynomial n_poly;                // N in k[x, Y]
    std::vector<Polynomial> y_prime;  // size n, in k[x]
    int k = 1;
    int c = 0;
    std::optional<int> trunc;

    int n() const { return static_cast<int>(sv.y.size()); }
    int r() const { return static_cast<int>(f_indices.size()); }
    LocalRing ring() const { return LocalRing(sv.u, sv.x, j_gens); }

    // minor_cols followed by the remaining Y columns in ascending order.
    std::vector<int> permutation() const {
        std::vector<int> perm = minor_cols;
        std::vector<char> used(static_cast<size_t>(n()), 0);
        for (int cidx : minor_cols) used[static_cast<size_t>(cidx)] = 1;
        for (int j = 0; j < n(); ++j)
            if (!used[static_cast<size_t>(j)]) perm.push_back(j);
        return perm;
    }
};

struct CheckCondition {
    std::string name;
    bool pass = false;
    std::string witness;  // failing monomial / nonzero normal form, empty on pass
};

struct CheckReport {
    Polynomial d;
    int e = 1;
    std::vector<CheckCondition> conditions;
    std::optional<std::string> a_membership_warning;

    bool ok() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }

    std::string failures() const {
        std::string out;
        for (const auto& c : conditions)
            if (!c.pass) {
                out += "  " + c.name + ": " + c.witness + "\n";
            }
        return out;
    }
};

// Thrown by the pipeline when step 4 (or one of the input promises) fails.
struct ValidationError : Error {
    CheckReport report;
    explicit ValidationError(CheckReport r) : Error(kNotWellChosen), report(std::move(r)) {}
};

// One equation g_i = a_i + T_i + d^{e-1} Q_i: the fraction constant is kept
// intact, and tpart = T_i + d^{e-1} Q_i is the polynomial remainder. The
// cleared form is the unit multiple den(a_i) * g_i.
struct GEntry {
    LocalFraction a;
    Polynomial tpart;

    Polynomial cleared() const { return a.num() + a.den() * tpart; }
};

// The certified output C = (A[Y,T]/(I, g, h))_{s s'}.
struct SmoothPresentation {
    SessionVars sv;
    std::vector<Polynomial> j_gens;
    std::vector<Polynomial> i_gens;
    std::vector<int> f_indices;
    std::vector<int> minor_cols;
    std::vector<int> perm;  // perm[l] = original Y index at permuted slot l
    Polynomial n_poly;
    std::vector<Polynomial> y_prime;  // original Y order
    int k = 1;
    int c = 0;
    int e = 1;
    Polynomial d;
    std::vector<std::vector<Polynomial>> H;  // n x n, permuted coordinates
    std::vector<std::vector<Polynomial>> G;
    std::vector<Polynomial> h;  // size n, slot l presents Y_{perm[l]}
    std::vector<Polynomial> q;  // Q_i per selected generator
    std::vector<GEntry> g;      // size r
    Polynomial s;
    Polynomial s_prime;
    CheckReport report;

    int n() const { return static_cast<int>(sv.y.size()); }
    int r() const { return static_cast<int>(f_indices.size()); }

    LocalRing ring() const { return LocalRing(sv.u, sv.x, j_gens); }

    std::vector<Polynomial> selected_f() const {
        std::vector<Polynomial> out;
        for (int i : f_indices) out.push_back(i_gens[static_cast<size_t>(i)]);
        return out;
    }

    std::vector<Polynomial> cleared_g() const {
        std::vector<Polynomial> out;
        for (const auto& gi : g) out.push_back(gi.cleared());
        return out;
    }
};

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Greenberg-style precision bound: approximating to order (2e+1)k + c
// guarantees a lift agreeing to order c.
inline int required_precision(int e, int k, int c) {
    if (e < 1 || k < 1) throw Error("required_precision needs e, k >= 1");
    if (c < 0) throw Error("required_precision needs c >= 0");
    return (2 * e + 1) * k + c;
}

}  // namespace neron

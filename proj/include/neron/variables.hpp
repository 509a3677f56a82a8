#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "neron/errors.hpp"

namespace neron {

using VarId = int;

// Local variables generate the maximal ideal we localize at (the x-block);
// everything else (Y, T, auxiliaries) is global.
enum class VarBlock { local, global };

// The variable universe is declared once per session and then frozen: every
// monomial in the session stores one exponent per universe entry, so mixing
// polynomials from different universes is a hard error.
class VariableUniverse {
public:
    VarId add(std::string name, VarBlock block) {
        if (index_.count(name))
            throw Error("duplicate variable name '" + name + "'");
        VarId id = static_cast<VarId>(names_.size());
        index_.emplace(name, id);
        names_.push_back(std::move(name));
        blocks_.push_back(block);
        if (block == VarBlock::local)
            local_.push_back(id);
        else
            global_.push_back(id);
        return id;
    }

    int size() const { return static_cast<int>(names_.size()); }

    const std::string& name(VarId v) const {
        if (v < 0 || v >= size()) throw Error("variable id out of range");
        return names_[static_cast<size_t>(v)];
    }

    VarBlock block(VarId v) const {
        if (v < 0 || v >= size()) throw Error("variable id out of range");
        return blocks_[static_cast<size_t>(v)];
    }

    std::optional<VarId> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<VarId>& local_vars() const { return local_; }
    const std::vector<VarId>& global_vars() const { return global_; }

private:
    std::vector<std::string> names_;
    std::vector<VarBlock> blocks_;
    std::vector<VarId> local_;
    std::vector<VarId> global_;
    std::map<std::string, VarId> index_;
};

using SharedUniverse = std::shared_ptr<const VariableUniverse>;

// A session universe: x-variables (local), Y-variables, one T per Y, and the
// three reserved auxiliaries (Taylor marker, Rabinowitsch variable,
// elimination variable). User-facing parsers reject names that would collide
// with the reserved block.
struct SessionVars {
    SharedUniverse u;
    std::vector<VarId> x;
    std::vector<VarId> y;
    std::vector<VarId> t;
    VarId marker = -1;
    VarId rabinowitsch = -1;
    VarId eliminator = -1;

    std::vector<std::string> t_names() const {
        std::vector<std::string> out;
        for (VarId v : t) out.push_back(u->name(v));
        return out;
    }
};

inline SessionVars make_session(const std::vector<std::string>& x_names,
                                const std::vector<std::string>& y_names,
                                std::vector<std::string> t_names = {}) {
    auto uni = std::make_shared<VariableUniverse>();
    SessionVars sv;
    for (const auto& n : x_names) sv.x.push_back(uni->add(n, VarBlock::local));
    for (const auto& n : y_names) sv.y.push_back(uni->add(n, VarBlock::global));
    if (t_names.empty()) {
        // Auto-named T-block: "T" for a single Y-variable, "T1..Tn" otherwise,
        // falling back to reserved names on collision.
        size_t n = y_names.size();
        for (size_t i = 0; i < n; ++i) {
            std::string cand = (n == 1) ? "T" : "T" + std::to_string(i + 1);
            if (uni->find(cand)) cand = "_" + cand;
            t_names.push_back(cand);
        }
    }
    for (const auto& n : t_names) sv.t.push_back(uni->add(n, VarBlock::global));
    sv.marker = uni->add("_D", VarBlock::global);
    sv.rabinowitsch = uni->add("_u", VarBlock::global);
    sv.eliminator = uni->add("_t", VarBlock::global);
    sv.u = uni;
    return sv;
}

}  // namespace neron

#pragma once

#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "neron/errors.hpp"
#include "neron/mora.hpp"
#include "neron/order.hpp"
#include "neron/polynomial.hpp"

namespace neron {

// Handle to an ideal of the (possibly extended) localized polynomial ring,
// with a lazily computed, write-once standard basis cache.
class IdealHandle {
public:
    IdealHandle(SharedUniverse u, std::vector<Polynomial> gens, MonomialOrder order)
        : u_(std::move(u)), order_(std::move(order)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens)
            if (!g.is_zero()) gens_.push_back(std::move(g));
    }

    const SharedUniverse& universe() const { return u_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    const MonomialOrder& order() const { return order_; }

    const std::vector<SBElement>& standard_basis() const {
        std::call_once(cache_->once, [this] { cache_->sb = standard_basis_of(gens_, order_); });
        return cache_->sb;
    }

    std::vector<Polynomial> standard_basis_polys() const {
        std::vector<Polynomial> out;
        for (const auto& e : standard_basis()) out.push_back(e.p);
        return out;
    }

private:
    // Copies of a handle share the write-once basis cache.
    struct Cache {
        std::once_flag once;
        std::vector<SBElement> sb;
    };

    SharedUniverse u_;
    std::vector<Polynomial> gens_;
    MonomialOrder order_;
    std::shared_ptr<Cache> cache_;
};

// A = k[x]_(x) / J. The dimension hypothesis on A is the caller's promise
// and is not checked here.
class LocalRing {
public:
    LocalRing(SharedUniverse u, std::vector<VarId> x_vars, std::vector<Polynomial> j_gens)
        : u_(std::move(u)), x_(std::move(x_vars)) {
        for (auto& g : j_gens) {
            if (g.is_zero()) continue;
            if (g.constant_term() != 0)
                throw Error("ideal J has a generator with nonzero constant term (a unit)");
            if (!g.supported_on(x_))
                throw Error("ideal J has a generator outside k[x]");
            j_.push_back(std::move(g));
        }
        j_handle_ = std::make_shared<IdealHandle>(u_, j_, MonomialOrder::local(u_));
    }

    const SharedUniverse& universe() const { return u_; }
    const std::vector<VarId>& x_vars() const { return x_; }
    const std::vector<Polynomial>& j_gens() const { return j_; }
    const IdealHandle& j_handle() const { return *j_handle_; }

private:
    SharedUniverse u_;
    std::vector<VarId> x_;
    std::vector<Polynomial> j_;
    std::shared_ptr<IdealHandle> j_handle_;
};

}  // namespace neron

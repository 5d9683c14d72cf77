#pragma once

#include <map>
#include <vector>

#include "wigner/rational.hpp"

namespace wigner {

/// Basis element of the truncated limit space: either an interval indicator
/// 1_{P_i} or a field slice psi_{l,i}, with intervals drawn from a
/// registered finite family and psi levels bounded by the truncation.
struct BasisElement {
    enum class Kind { Indicator, Psi };
    Kind kind = Kind::Indicator;
    int interval = 0;  // index into the registry
    int level = 0;     // 0 for indicators, >= 1 for psi

    static BasisElement indicator(int interval_idx) { return {Kind::Indicator, interval_idx, 0}; }
    static BasisElement psi(int level, int interval_idx) { return {Kind::Psi, interval_idx, level}; }

    bool operator<(const BasisElement& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (level != o.level) return level < o.level;
        return interval < o.interval;
    }
    bool operator==(const BasisElement& o) const {
        return kind == o.kind && interval == o.interval && level == o.level;
    }
};

/// Finite linear combination over the registered basis, exact rational
/// coefficients, no explicit zeros stored.
class SymbolicVector {
public:
    SymbolicVector() = default;

    static SymbolicVector basis(const BasisElement& e) {
        SymbolicVector v;
        v.coef_[e] = Rational(1);
        return v;
    }

    void add(const BasisElement& e, const Rational& c) {
        if (c == Rational(0)) return;
        auto it = coef_.find(e);
        if (it == coef_.end()) {
            coef_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second == Rational(0)) coef_.erase(it);
        }
    }

    SymbolicVector& operator+=(const SymbolicVector& o) {
        for (const auto& [e, c] : o.coef_) add(e, c);
        return *this;
    }

    SymbolicVector scaled(const Rational& c) const {
        SymbolicVector v;
        if (c == Rational(0)) return v;
        for (const auto& [e, k] : coef_) v.coef_[e] = k * c;
        return v;
    }

    bool zero() const { return coef_.empty(); }
    const std::map<BasisElement, Rational>& coefficients() const { return coef_; }

private:
    std::map<BasisElement, Rational> coef_;
};

/// Registered intervals plus the psi-level truncation; caches all Gram
/// entries as exact rationals:
///   <1_{P_i}, 1_{P_j}> = |P_i cap P_j|, <1, psi> = 0,
///   <psi_{l1,i}, psi_{l2,j}> = (sum over shared stems of a a) |P_i cap P_j|.
/// Built once, read-only afterwards.
class GramContext {
public:
    GramContext(std::vector<IntervalQ> intervals, int max_level);

    const std::vector<IntervalQ>& intervals() const { return intervals_; }
    int max_level() const { return max_level_; }

    /// All registered basis elements, indicators first then psi by level.
    const std::vector<BasisElement>& basis() const { return basis_; }

    Rational entry(const BasisElement& a, const BasisElement& b) const;

private:
    std::size_t index_of(const BasisElement& e) const;

    std::vector<IntervalQ> intervals_;
    int max_level_;
    std::vector<BasisElement> basis_;
    std::vector<std::vector<Rational>> gram_;
};

/// Bilinear extension of the Gram entries; throws on unregistered elements.
Rational gram(const SymbolicVector& u, const SymbolicVector& v, const GramContext& ctx);

/// The operator action: W(1_{P_i}) = psi_{1,i},
/// W(psi_{k,i}) = beta_{k+1} 1_{P_i} + psi_{k+1,i} - beta_k psi_{1,i}.
/// Refuses when the image would leave the registered truncation.
SymbolicVector apply_w(const SymbolicVector& v, const GramContext& ctx);

/// W^l(1_P) - (beta_l 1_P + psi_{l,P}); must be exactly zero.
SymbolicVector power_identity_residual(int interval_idx, int l, const GramContext& ctx);

/// Moments <f, W^l f> for l = 1..l_max; f must be supported on indicators.
std::vector<Rational> spectral_moments(const SymbolicVector& f, int l_max, const GramContext& ctx);

/// Largest generalized singular value of the truncated action in the Gram
/// geometry (null directions of the Gram matrix quotiented out). `scale`
/// multiplies the operator. Throws if the Gram matrix fails PSD at -1e-9.
double operator_norm_symbolic(const GramContext& ctx, double scale = 1.0);

/// max |<u, Wv> - <Wu, v>| over registered basis pairs whose images stay in
/// the truncation; exact rational arithmetic, reported as double.
double self_adjointness_residual(const GramContext& ctx);

}  // namespace wigner

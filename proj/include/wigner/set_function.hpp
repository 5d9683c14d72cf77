#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wigner/rational.hpp"
#include "wigner/step_function.hpp"

namespace wigner {

enum class SetFunctionKind { EmbeddedL2, FractionalDerivative, LinearCombination };

/// A map from half-open rational subintervals of (0,1] to reals. This is the
/// house for objects that are not pointwise functions (white-noise-like
/// fractional increments) next to ordinary embedded L^2 functions.
class SetFunction {
public:
    using Evaluator = std::function<double(const IntervalQ&)>;

    SetFunction(SetFunctionKind kind, Evaluator eval) : kind_(kind), eval_(std::move(eval)) {}

    SetFunctionKind kind() const { return kind_; }

    double operator()(const IntervalQ& p) const { return eval_(p); }

    /// (c1 F + c2 G)((a,b]) = c1 F((a,b]) + c2 G((a,b]), exact in the
    /// evaluations.
    static SetFunction combine(double c1, SetFunction f, double c2, SetFunction g) {
        return SetFunction(SetFunctionKind::LinearCombination,
                           [c1, f = std::move(f), c2, g = std::move(g)](const IntervalQ& p) {
                               return c1 * f(p) + c2 * g(p);
                           });
    }

private:
    SetFunctionKind kind_;
    Evaluator eval_;
};

/// Averaged-increment embedding of an L^2 function:
/// f~((a,b]) = (integral of f over (a,b]) / (b-a).
///
/// For a step function the integral is exact grid geometry: value v_i on the
/// cell ((i-1)/n, i/n], overlap lengths computed in rational arithmetic.
inline SetFunction embed_l2(const StepFunction& f) {
    auto data = std::make_shared<StepFunction>(f);
    return SetFunction(SetFunctionKind::EmbeddedL2, [data](const IntervalQ& p) {
        const long long n = data->n();
        // cells with nonzero overlap: i/n > a and (i-1)/n < b
        long long lo = p.a.floor_mul(n) + 1;
        long long hi = p.b.floor_mul(n) + 1;
        if (hi > n) hi = n;
        double acc = 0.0;
        for (long long i = std::max(1LL, lo); i <= hi; ++i) {
            IntervalQ cell(Rational(i - 1, n), Rational(i, n));
            Rational len = cell.overlap_length(p);
            if (len > Rational(0)) acc += data->at(i) * len.to_double();
        }
        return acc / p.length().to_double();
    });
}

inline SetFunction embed_constant(double c) {
    return SetFunction(SetFunctionKind::EmbeddedL2, [c](const IntervalQ&) { return c; });
}

/// dF/(dx)^alpha((a,b]) = (F(b)-F(a)) / (b-a)^alpha for 0 < alpha <= 1;
/// alpha = 1 reproduces the plain averaged increment.
inline SetFunction alpha_derivative(std::function<double(const Rational&)> point_fn, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha_derivative: need 0 < alpha <= 1");
    return SetFunction(SetFunctionKind::FractionalDerivative,
                       [point_fn = std::move(point_fn), alpha](const IntervalQ& p) {
                           double num = point_fn(p.b) - point_fn(p.a);
                           double len = p.length().to_double();
                           return num / std::pow(len, alpha);
                       });
}

/// Per-partition estimates of a partition-limit quantity, plus a convergence
/// verdict under the configured rule.
struct ConvergenceReport {
    std::vector<double> estimates;        // one per partition, coarse to fine
    std::vector<double> meshes;
    double limit = 0.0;                   // last estimate
    bool converged = false;               // |last - previous| < tol_abs
    double decay_exponent = 0.0;          // slope of log|estimate| vs log(mesh)
};

struct ConvergenceOptions {
    double tol_abs = 1e-3;
    double zero_decay_min = 0.4;   // fitted exponent threshold for zero-equivalence
};

namespace detail {

inline void require_refining(const std::vector<Partition>& parts) {
    if (parts.empty()) throw std::invalid_argument("need at least one partition");
    for (std::size_t k = 1; k < parts.size(); ++k)
        if (!(parts[k].mesh() < parts[k - 1].mesh()))
            throw std::invalid_argument("partition meshes must be strictly decreasing");
}

inline double fit_decay_exponent(const std::vector<double>& estimates, const std::vector<double>& meshes) {
    // least-squares slope of log|e| against log(mesh), over usable points
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        double e = std::fabs(estimates[k]);
        if (e > 1e-300) {
            xs.push_back(std::log(meshes[k]));
            ys.push_back(std::log(e));
        }
    }
    if (xs.size() < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) { mx += xs[k]; my += ys[k]; }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace detail

/// Partition-limit inner product sum_j F(cell_j) G(cell_j) |cell_j| for each
/// partition of a refining sequence. Mixed pairs whose limit does not settle
/// are reported with converged = false rather than guessed.
inline ConvergenceReport setfunc_inner(const SetFunction& f, const SetFunction& g,
                                       const std::vector<Partition>& parts,
                                       const ConvergenceOptions& opts = {}) {
    detail::require_refining(parts);
    ConvergenceReport rep;
    rep.estimates.reserve(parts.size());
    rep.meshes.reserve(parts.size());
    for (const Partition& part : parts) {
        double s = 0.0;
        for (std::size_t j = 0; j < part.cells(); ++j) {
            IntervalQ cell = part.cell(j);
            s += f(cell) * g(cell) * cell.length().to_double();
        }
        rep.estimates.push_back(s);
        rep.meshes.push_back(part.mesh().to_double());
    }
    rep.limit = rep.estimates.back();
    if (rep.estimates.size() >= 2) {
        double last = rep.estimates[rep.estimates.size() - 1];
        double prev = rep.estimates[rep.estimates.size() - 2];
        rep.converged = std::fabs(last - prev) < opts.tol_abs;
    }
    rep.decay_exponent = detail::fit_decay_exponent(rep.estimates, rep.meshes);
    return rep;
}

/// Plain partition sums sum_j F(cell_j) |cell_j| (the alpha = 1 integral of a
/// set function over the partitions' target interval).
inline std::vector<double> setfunc_integral(const SetFunction& f, const std::vector<Partition>& parts) {
    detail::require_refining(parts);
    std::vector<double> out;
    out.reserve(parts.size());
    for (const Partition& part : parts) {
        double s = 0.0;
        for (std::size_t j = 0; j < part.cells(); ++j) {
            IntervalQ cell = part.cell(j);
            s += f(cell) * cell.length().to_double();
        }
        out.push_back(s);
    }
    return out;
}

struct ZeroEquivalenceReport {
    ConvergenceReport norm;    // estimates of <F,F>
    bool zero_equivalent = false;
};

/// Diagnoses whether F is equivalent to the zero vector: the squared-
/// increment sums must decay. Verdict: fitted decay exponent above the
/// configured threshold, or estimates already at zero.
inline ZeroEquivalenceReport is_equivalent_zero(const SetFunction& f,
                                                const std::vector<Partition>& parts,
                                                const ConvergenceOptions& opts = {}) {
    ZeroEquivalenceReport rep;
    rep.norm = setfunc_inner(f, f, parts, opts);
    double last = std::fabs(rep.norm.estimates.back());
    bool identically_zero = last < 1e-15;
    bool decays = rep.norm.decay_exponent >= opts.zero_decay_min &&
                  last < std::fabs(rep.norm.estimates.front()) + 1e-15;
    rep.zero_equivalent = identically_zero || decays;
    return rep;
}

}  // namespace wigner

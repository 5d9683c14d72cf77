#include "wigner/limit_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "wigner/catalan.hpp"
#include "wigner/linalg.hpp"

namespace wigner {

GramContext::GramContext(std::vector<IntervalQ> intervals, int max_level)
    : intervals_(std::move(intervals)), max_level_(max_level) {
    if (intervals_.empty()) throw std::invalid_argument("GramContext: no intervals registered");
    if (max_level_ < 1) throw std::invalid_argument("GramContext: max_level >= 1 required");

    for (int i = 0; i < static_cast<int>(intervals_.size()); ++i)
        basis_.push_back(BasisElement::indicator(i));
    for (int l = 1; l <= max_level_; ++l)
        for (int i = 0; i < static_cast<int>(intervals_.size()); ++i)
            basis_.push_back(BasisElement::psi(l, i));

    const std::size_t f = basis_.size();
    gram_.assign(f, std::vector<Rational>(f, Rational(0)));
    for (std::size_t a = 0; a < f; ++a) {
        for (std::size_t b = a; b < f; ++b) {
            const BasisElement& ea = basis_[a];
            const BasisElement& eb = basis_[b];
            Rational value(0);
            Rational overlap = intervals_[static_cast<std::size_t>(ea.interval)].overlap_length(
                intervals_[static_cast<std::size_t>(eb.interval)]);
            if (ea.kind == BasisElement::Kind::Indicator && eb.kind == BasisElement::Kind::Indicator) {
                value = overlap;
            } else if (ea.kind == BasisElement::Kind::Psi && eb.kind == BasisElement::Kind::Psi) {
                if ((ea.level - eb.level) % 2 == 0) {
                    long long acc = 0;
                    int lo = std::min(ea.level, eb.level);
                    for (int m = (lo % 2 == 0) ? 2 : 1; m <= lo; m += 2)
                        acc += stem_coeff(ea.level, m) * stem_coeff(eb.level, m);
                    value = Rational(acc) * overlap;
                }
            }
            // indicator-psi pairs stay zero: slice fields are orthogonal to
            // every measurable function
            gram_[a][b] = value;
            gram_[b][a] = value;
        }
    }
}

std::size_t GramContext::index_of(const BasisElement& e) const {
    if (e.interval < 0 || e.interval >= static_cast<int>(intervals_.size()))
        throw std::invalid_argument("GramContext: unregistered interval index");
    if (e.kind == BasisElement::Kind::Indicator) {
        if (e.level != 0) throw std::invalid_argument("GramContext: indicator with nonzero level");
        return static_cast<std::size_t>(e.interval);
    }
    if (e.level < 1 || e.level > max_level_)
        throw std::invalid_argument("GramContext: psi level outside truncation");
    return intervals_.size() * static_cast<std::size_t>(e.level - 1) + intervals_.size() +
           static_cast<std::size_t>(e.interval);
}

Rational GramContext::entry(const BasisElement& a, const BasisElement& b) const {
    return gram_[index_of(a)][index_of(b)];
}

Rational gram(const SymbolicVector& u, const SymbolicVector& v, const GramContext& ctx) {
    Rational s(0);
    for (const auto& [ea, ca] : u.coefficients())
        for (const auto& [eb, cb] : v.coefficients()) s = s + ca * cb * ctx.entry(ea, eb);
    return s;
}

SymbolicVector apply_w(const SymbolicVector& v, const GramContext& ctx) {
    SymbolicVector out;
    for (const auto& [e, c] : v.coefficients()) {
        if (e.kind == BasisElement::Kind::Indicator) {
            if (ctx.max_level() < 1) throw std::invalid_argument("apply_w: level overflow");
            out.add(BasisElement::psi(1, e.interval), c);
        } else {
            if (e.level + 1 > ctx.max_level())
                throw std::invalid_argument(
                    "apply_w: image would leave the registered truncation (psi level " +
                    std::to_string(e.level + 1) + " > " + std::to_string(ctx.max_level()) + ")");
            out.add(BasisElement::indicator(e.interval), c * Rational(beta_moment(e.level + 1)));
            out.add(BasisElement::psi(e.level + 1, e.interval), c);
            out.add(BasisElement::psi(1, e.interval), -(c * Rational(beta_moment(e.level))));
        }
    }
    return out;
}

SymbolicVector power_identity_residual(int interval_idx, int l, const GramContext& ctx) {
    if (l < 1 || l > ctx.max_level())
        throw std::invalid_argument("power_identity_residual: l outside truncation");
    SymbolicVector v = SymbolicVector::basis(BasisElement::indicator(interval_idx));
    for (int t = 0; t < l; ++t) v = apply_w(v, ctx);
    SymbolicVector expected;
    expected.add(BasisElement::indicator(interval_idx), Rational(beta_moment(l)));
    expected.add(BasisElement::psi(l, interval_idx), Rational(1));
    v += expected.scaled(Rational(-1));
    return v;
}

std::vector<Rational> spectral_moments(const SymbolicVector& f, int l_max, const GramContext& ctx) {
    for (const auto& [e, c] : f.coefficients()) {
        (void)c;
        if (e.kind != BasisElement::Kind::Indicator)
            throw std::invalid_argument("spectral_moments: f must be supported on indicators");
    }
    if (l_max < 1 || l_max > ctx.max_level())
        throw std::invalid_argument("spectral_moments: l_max outside truncation");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(l_max));
    SymbolicVector wf = f;
    for (int l = 1; l <= l_max; ++l) {
        wf = apply_w(wf, ctx);
        out.push_back(gram(f, wf, ctx));
    }
    return out;
}

namespace {

Mat gram_as_double(const GramContext& ctx, const std::vector<BasisElement>& elems) {
    Mat g(elems.size(), elems.size());
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b)
            g.at(a, b) = ctx.entry(elems[a], elems[b]).to_double();
    return g;
}

}  // namespace

double operator_norm_symbolic(const GramContext& ctx, double scale) {
    if (ctx.max_level() < 2)
        throw std::invalid_argument("operator_norm_symbolic: truncation level >= 2 required");

    // domain: everything whose image stays registered (psi levels <= L-1)
    std::vector<BasisElement> domain;
    for (const BasisElement& e : ctx.basis())
        if (e.kind == BasisElement::Kind::Indicator || e.level <= ctx.max_level() - 1)
            domain.push_back(e);
    const std::vector<BasisElement>& full = ctx.basis();

    Mat gd = gram_as_double(ctx, domain);
    Mat gf = gram_as_double(ctx, full);

    double gscale = 0.0;
    for (std::size_t i = 0; i < gf.rows(); ++i) gscale = std::max(gscale, std::fabs(gf.at(i, i)));
    SymEigen ef = sym_eigen(gf);
    if (ef.values.front() < -1e-9 * std::max(1.0, gscale))
        throw std::invalid_argument("operator_norm_symbolic: Gram matrix not PSD at tolerance");

    // action matrix: columns = images of domain elements in the full basis
    Mat action(full.size(), domain.size(), 0.0);
    for (std::size_t c = 0; c < domain.size(); ++c) {
        SymbolicVector img = apply_w(SymbolicVector::basis(domain[c]), ctx);
        for (const auto& [e, coef] : img.coefficients()) {
            for (std::size_t r = 0; r < full.size(); ++r)
                if (full[r] == e) action.at(r, c) = coef.to_double() * scale;
        }
    }

    // quotient out the Gram null space of the domain: u = S w with
    // S = Q_+ Lambda_+^{-1/2}, then the norm is the top eigenvalue of
    // S^T A^T G_F A S.
    SymEigen ed = sym_eigen(gd);
    std::vector<std::size_t> keep;
    double dmax = std::fabs(ed.values.back());
    for (std::size_t i = 0; i < ed.values.size(); ++i)
        if (ed.values[i] > 1e-12 * std::max(1.0, dmax)) keep.push_back(i);
    if (keep.empty()) return 0.0;

    Mat s(domain.size(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) {
        double inv_sqrt = 1.0 / std::sqrt(ed.values[keep[c]]);
        for (std::size_t r = 0; r < domain.size(); ++r)
            s.at(r, c) = ed.vectors.at(r, keep[c]) * inv_sqrt;
    }
    Mat as = matmul(action, s);             // full x r
    Mat gfas = matmul(gf, as);              // full x r
    Mat quad(keep.size(), keep.size());     // r x r: (AS)^T G_F (AS)
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < full.size(); ++k) acc += as.at(k, i) * gfas.at(k, j);
            quad.at(i, j) = acc;
        }
    SymEigen eq = sym_eigen(quad);
    return std::sqrt(std::max(0.0, eq.values.back()));
}

double self_adjointness_residual(const GramContext& ctx) {
    std::vector<BasisElement> domain;
    for (const BasisElement& e : ctx.basis())
        if (e.kind == BasisElement::Kind::Indicator || e.level <= ctx.max_level() - 1)
            domain.push_back(e);
    Rational worst(0);
    for (const BasisElement& a : domain) {
        SymbolicVector wa = apply_w(SymbolicVector::basis(a), ctx);
        for (const BasisElement& b : domain) {
            SymbolicVector wb = apply_w(SymbolicVector::basis(b), ctx);
            Rational lhs = gram(SymbolicVector::basis(a), wb, ctx);
            Rational rhs = gram(wa, SymbolicVector::basis(b), ctx);
            Rational diff = lhs - rhs;
            if (diff < Rational(0)) diff = -diff;
            if (diff > worst) worst = diff;
        }
    }
    return worst.to_double();
}

}  // namespace wigner

#include "wigner/gamma_fields.hpp"

#include <cmath>
#include <stdexcept>

#include "wigner/parallel.hpp"
#include "wigner/step_function.hpp"

namespace wigner {

double psi_increment(const GammaSpec& spec, const IntervalQ& p, const IntervalQ& q,
                     const SheetBank& bank) {
    double s = 0.0;
    for (const auto& [m, coeff] : spec.terms) {
        const GridSheet& sheet = bank.sheet(m);
        s += static_cast<double>(coeff) * (sheet.rect(q, p) + sheet.rect(p, q));
    }
    return s / std::sqrt(2.0);
}

double psi_cov(int l1, const IntervalQ& p1, int l2, const IntervalQ& p2) {
    if (l1 < 1 || l2 < 1) throw std::invalid_argument("psi_cov: levels >= 1 required");
    if ((l1 - l2) % 2 != 0) return 0.0;
    long long acc = 0;
    int lo = std::min(l1, l2);
    for (int m = (lo % 2 == 0) ? 2 : 1; m <= lo; m += 2) acc += stem_coeff(l1, m) * stem_coeff(l2, m);
    return static_cast<double>(acc) * p1.overlap_length(p2).to_double();
}

double psi_pairing_cov(int l1, const IntervalQ& p1, const IntervalQ& q1, int l2,
                       const IntervalQ& p2, const IntervalQ& q2) {
    if (l1 < 1 || l2 < 1) throw std::invalid_argument("psi_pairing_cov: levels >= 1 required");
    if ((l1 - l2) % 2 != 0) return 0.0;
    long long acc = 0;
    int lo = std::min(l1, l2);
    for (int m = (lo % 2 == 0) ? 2 : 1; m <= lo; m += 2) acc += stem_coeff(l1, m) * stem_coeff(l2, m);
    double direct = q1.overlap_length(q2).to_double() * p1.overlap_length(p2).to_double();
    double transposed = q1.overlap_length(p2).to_double() * p1.overlap_length(q2).to_double();
    return static_cast<double>(acc) * (direct + transposed);
}

double bnl_pairing_cov(int l1, const IntervalQ& p1, const IntervalQ& q1, int l2,
                       const IntervalQ& p2, const IntervalQ& q2) {
    if (l1 < 1 || l2 < 1) throw std::invalid_argument("bnl_pairing_cov: levels >= 1 required");
    if (l1 != l2) return 0.0;
    double direct = q1.overlap_length(q2).to_double() * p1.overlap_length(p2).to_double();
    double transposed = q1.overlap_length(p2).to_double() * p1.overlap_length(q2).to_double();
    return direct + transposed;
}

namespace {

/// Row- and column-aggregated cell masses of one sheet against an interval:
/// u(j) = mass(cell_j x P), v(j) = mass(P x cell_j). Computed from the raw
/// cell matrix so the diagonal coupling between the direct and transposed
/// slices is kept exactly.
struct SliceAggregates {
    Vec u;
    Vec v;
};

SliceAggregates aggregate(const Vec& cells, long long n, const IndexRange& pidx) {
    SliceAggregates out;
    out.u.assign(static_cast<std::size_t>(n), 0.0);
    out.v.assign(static_cast<std::size_t>(n), 0.0);
    for (long long i = 0; i < n; ++i) {
        const double* row = cells.data() + i * n;
        double su = 0.0;
        for (long long j = pidx.lo; j <= pidx.hi; ++j) su += row[j - 1];
        out.u[static_cast<std::size_t>(i)] = su;
    }
    for (long long i = pidx.lo; i <= pidx.hi; ++i) {
        const double* row = cells.data() + (i - 1) * n;
        for (long long j = 0; j < n; ++j) out.v[static_cast<std::size_t>(j)] += row[j];
    }
    return out;
}

}  // namespace

PsiCovMc psi_cov_mc(const std::vector<int>& levels, const std::vector<IntervalQ>& intervals,
                    long long resolution, long long replicas, std::uint64_t seed) {
    if (levels.empty() || intervals.empty()) throw std::invalid_argument("psi_cov_mc: empty basis");
    if (resolution < 2 || replicas < 2) throw std::invalid_argument("psi_cov_mc: need resolution and replicas");

    int max_m = 0;
    for (int l : levels) max_m = std::max(max_m, l);
    std::vector<GammaSpec> specs;
    specs.reserve(levels.size());
    for (int l : levels) specs.push_back(GammaSpec::for_level(l));

    const std::size_t d = levels.size() * intervals.size();
    const long long n = resolution;
    Rng base = Rng(seed).stream(0x7073690ULL);

    // one QV matrix per replica, reduced in replica order afterwards
    std::vector<std::vector<double>> qv(static_cast<std::size_t>(replicas),
                                        std::vector<double>(d * d, 0.0));

    parallel_for(replicas, [&](long long r) {
        Rng rep = base.stream(static_cast<std::uint64_t>(r));
        // raw cell masses per sheet
        std::vector<Vec> cells(static_cast<std::size_t>(max_m) + 1);
        const double sd = 1.0 / static_cast<double>(n);
        for (int m = 1; m <= max_m; ++m) {
            Rng g = rep.stream(static_cast<std::uint64_t>(m));
            Vec& c = cells[static_cast<std::size_t>(m)];
            c.resize(static_cast<std::size_t>(n * n));
            for (double& x : c) x = sd * g.gaussian();
        }
        // slice increments Delta G_{l,P}(j) over the n x-cells
        std::vector<Vec> dg(d, Vec(static_cast<std::size_t>(n), 0.0));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t pi = 0; pi < intervals.size(); ++pi) {
            IndexRange pidx = grid_indices(intervals[pi], n);
            if (pidx.empty()) continue;
            for (int m = 1; m <= max_m; ++m) {
                SliceAggregates agg = aggregate(cells[static_cast<std::size_t>(m)], n, pidx);
                for (std::size_t li = 0; li < levels.size(); ++li) {
                    long long coeff = 0;
                    for (const auto& [mm, a] : specs[li].terms)
                        if (mm == m) coeff = a;
                    if (coeff == 0) continue;
                    Vec& target = dg[li * intervals.size() + pi];
                    const double c = inv_sqrt2 * static_cast<double>(coeff);
                    for (long long j = 0; j < n; ++j)
                        target[static_cast<std::size_t>(j)] +=
                            c * (agg.u[static_cast<std::size_t>(j)] + agg.v[static_cast<std::size_t>(j)]);
                }
            }
        }
        std::vector<double>& out = qv[static_cast<std::size_t>(r)];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) {
                double s = dot(dg[a], dg[b]);
                out[a * d + b] = s;
                out[b * d + a] = s;
            }
    });

    PsiCovMc res;
    res.replicas = replicas;
    res.resolution = resolution;
    res.mean = Mat(d, d, 0.0);
    res.se = Mat(d, d, 0.0);
    for (long long r = 0; r < replicas; ++r)
        for (std::size_t i = 0; i < d * d; ++i)
            res.mean.data()[i] += qv[static_cast<std::size_t>(r)][i];
    for (double& x : res.mean.data()) x /= static_cast<double>(replicas);
    for (long long r = 0; r < replicas; ++r)
        for (std::size_t i = 0; i < d * d; ++i) {
            double dev = qv[static_cast<std::size_t>(r)][i] - res.mean.data()[i];
            res.se.data()[i] += dev * dev;
        }
    for (double& x : res.se.data())
        x = std::sqrt(x / (static_cast<double>(replicas - 1) * static_cast<double>(replicas)));
    return res;
}

}  // namespace wigner

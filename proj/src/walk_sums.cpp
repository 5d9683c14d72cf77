#include "wigner/walk_sums.hpp"

#include <cmath>

namespace wigner {

namespace {

/// E[prod of entries along the walk]: entries are independent per unordered
/// pair, so the expectation factors over edges with their multiplicities.
double walk_expectation(const long long* verts, int l, const EntryLaw& law) {
    long long ea[4], eb[4];
    int cnt[4];
    int ne = 0;
    for (int t = 0; t < l; ++t) {
        long long a = verts[t], b = verts[t + 1];
        if (a > b) std::swap(a, b);
        int k = 0;
        for (; k < ne; ++k)
            if (ea[k] == a && eb[k] == b) { ++cnt[k]; break; }
        if (k == ne) {
            ea[ne] = a;
            eb[ne] = b;
            cnt[ne] = 1;
            ++ne;
        }
    }
    double m = 1.0;
    for (int k = 0; k < ne; ++k) {
        if (cnt[k] % 2 == 1) return 0.0;  // all bundled laws are symmetric, but be exact anyway
        m *= law.moment(cnt[k]);
    }
    return m;
}

struct OpenClosedSums {
    double closed = 0.0;
    double open_raw = 0.0;
    double open_mean = 0.0;
};

/// Enumerates all walks j_0 = i, j_1..j_{l-1} free, j_l in P, splitting by
/// whether the walk closes at i.
void enumerate_walks(const WignerSample& w, long long i, int l, const IndexRange& pidx,
                     const EntryLaw& law, OpenClosedSums& out) {
    const long long n = w.n;
    long long verts[5];
    verts[0] = i;

    // depth-first over the l steps with a small explicit stack
    double prod[5];
    prod[0] = 1.0;
    long long choice[5];
    int depth = 1;
    choice[1] = (l == 1) ? pidx.lo : 1;
    while (depth >= 1) {
        const bool last = (depth == l);
        const long long hi = last ? pidx.hi : n;
        long long j = choice[depth];
        if (j > hi || (last && pidx.empty())) {
            --depth;
            if (depth >= 1) ++choice[depth];
            continue;
        }
        verts[depth] = j;
        prod[depth] = prod[depth - 1] * w.x(verts[depth - 1], j);
        if (last) {
            if (j == i) {
                out.closed += prod[depth];
            } else {
                out.open_raw += prod[depth];
                out.open_mean += walk_expectation(verts, l, law);
            }
            ++choice[depth];
        } else {
            ++depth;
            choice[depth] = (depth == l) ? pidx.lo : 1;
        }
    }
}

}  // namespace

StepFunction apply_power(const KernelOp& k, const StepFunction& f, int l) {
    if (l < 0) throw std::invalid_argument("apply_power: l >= 0 required");
    StepFunction g = f;
    for (int t = 0; t < l; ++t) g = apply_kernel(k, g);
    return g;
}

VDecomposition v_decompose(const WignerSample& w, const EntryLaw& law, const IntervalQ& p, int l,
                           const WalkBudget& budget) {
    budget.check(w.n, l);
    const long long n = w.n;
    const IndexRange pidx = grid_indices(p, n);
    const double scale = std::pow(static_cast<double>(n), -0.5 * l);

    VDecomposition d{StepFunction(n), StepFunction(n), StepFunction(n)};
    for (long long i = 1; i <= n; ++i) {
        OpenClosedSums sums;
        if (!pidx.empty()) enumerate_walks(w, i, l, pidx, law, sums);
        d.v1.at(i) = scale * sums.closed;
        d.v3.at(i) = scale * sums.open_mean;
        d.v2.at(i) = scale * sums.open_raw - d.v3.at(i);
    }
    return d;
}

StepFunction v3_exact(const EntryLaw& law, long long n, const IntervalQ& p, int l,
                      const WalkBudget& budget) {
    budget.check(n, l);
    const IndexRange pidx = grid_indices(p, n);
    const double scale = std::pow(static_cast<double>(n), -0.5 * l);
    StepFunction v3(n);
    if (pidx.empty()) return v3;

    long long verts[5];
    long long choice[5];
    for (long long i = 1; i <= n; ++i) {
        verts[0] = i;
        double mean = 0.0;
        int depth = 1;
        choice[1] = (l == 1) ? pidx.lo : 1;
        while (depth >= 1) {
            const bool last = (depth == l);
            const long long hi = last ? pidx.hi : n;
            long long j = choice[depth];
            if (j > hi) {
                --depth;
                if (depth >= 1) ++choice[depth];
                continue;
            }
            verts[depth] = j;
            if (last) {
                if (j != i) mean += walk_expectation(verts, l, law);
                ++choice[depth];
            } else {
                ++depth;
                choice[depth] = (depth == l) ? pidx.lo : 1;
            }
        }
        v3.at(i) = scale * mean;
    }
    return v3;
}

namespace {

/// Sum over all-distinct-vertex paths of length l from start, ending inside
/// end_range (or at the exact vertex `end_at` when end_at > 0).
double simple_path_sum_from(const WignerSample& w, long long start, int l,
                            const IndexRange& end_range, long long end_at,
                            std::vector<char>& visited) {
    const long long n = w.n;
    double total = 0.0;
    long long verts[6];
    double prod[6];
    long long choice[6];
    verts[0] = start;
    prod[0] = 1.0;
    visited[static_cast<std::size_t>(start)] = 1;
    int depth = 1;
    choice[1] = 1;
    while (depth >= 1) {
        const bool last = (depth == l);
        long long j = choice[depth];
        bool descend = false;
        for (; j <= n; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            if (last) {
                if (end_at > 0 ? (j == end_at) : end_range.contains(j))
                    total += prod[depth - 1] * w.x(verts[depth - 1], j);
            } else {
                descend = true;
                break;
            }
        }
        if (descend) {
            verts[depth] = j;
            prod[depth] = prod[depth - 1] * w.x(verts[depth - 1], j);
            visited[static_cast<std::size_t>(j)] = 1;
            choice[depth] = j + 1;
            ++depth;
            choice[depth] = 1;
        } else {
            --depth;
            if (depth >= 1) {
                long long v = verts[depth];
                visited[static_cast<std::size_t>(v)] = 0;
            }
        }
    }
    visited[static_cast<std::size_t>(start)] = 0;
    return total;
}

}  // namespace

double xi_nb(const WignerSample& w, long long i, long long j, int l, const WalkBudget& budget) {
    budget.check(w.n, l);
    if (i < 1 || i > w.n || j < 1 || j > w.n)
        throw std::invalid_argument("xi_nb: vertex out of range");
    if (i == j) return 0.0;
    // path reversal is a bijection on the summands, so enumerating from the
    // smaller endpoint makes the symmetry xi(i,j) == xi(j,i) bit-exact
    if (i > j) std::swap(i, j);
    std::vector<char> visited(static_cast<std::size_t>(w.n) + 1, 0);
    double s = simple_path_sum_from(w, i, l, IndexRange{0, -1}, j, visited);
    return s * std::pow(static_cast<double>(w.n), -0.5 * l);
}

StepFunction b_nl_apply(const WignerSample& w, int l, const IntervalQ& p, const WalkBudget& budget) {
    budget.check(w.n, l);
    const long long n = w.n;
    const IndexRange pidx = grid_indices(p, n);
    const double scale = std::pow(static_cast<double>(n), -0.5 * l);
    StepFunction out(n);
    if (pidx.empty()) return out;
    std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
    for (long long i = 1; i <= n; ++i)
        out.at(i) = scale * simple_path_sum_from(w, i, l, pidx, 0, visited);
    return out;
}

double aggregated_x(const WignerSample& w, const IntervalQ& q, const IntervalQ& p, int l,
                    const WalkBudget& budget) {
    StepFunction b = b_nl_apply(w, l, p, budget);
    const IndexRange qidx = grid_indices(q, w.n);
    double s = 0.0;
    for (long long i = qidx.lo; i <= qidx.hi; ++i) s += b.at(i);
    return s / std::sqrt(static_cast<double>(w.n));
}

namespace {

Vec indicator_vec(const IntervalQ& p, long long n) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    IndexRange r = grid_indices(p, n);
    for (long long i = r.lo; i <= r.hi; ++i) v[static_cast<std::size_t>(i - 1)] = 1.0;
    return v;
}

Vec hadamard(const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
    return c;
}

Vec diagonal(const Mat& m) {
    Vec d(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) d[i] = m.at(i, i);
    return d;
}

}  // namespace

double fast_simple_path_sum(const WignerSample& w, const IntervalQ& q, const IntervalQ& p, int l) {
    if (l < 1 || l > 3)
        throw std::invalid_argument("fast_simple_path_sum: closed forms cover l in {1,2,3}");
    const long long n = w.n;
    const Mat& a = w.entries;
    const Vec u = indicator_vec(q, n);
    const Vec v = indicator_vec(p, n);
    const Vec d = diagonal(a);
    const Vec uv = hadamard(u, v);

    double s = 0.0;
    if (l == 1) {
        const Vec av = matvec(a, v);
        s = dot(u, av) - dot(uv, d);
    } else if (l == 2) {
        const Mat a2 = matmul(a, a);
        const Vec av = matvec(a, v);
        const Vec au = matvec(a, u);
        s = dot(u, matvec(a2, v))
            - dot(hadamard(u, d), av)
            - dot(au, hadamard(d, v))
            - dot(uv, diagonal(a2))
            + 2.0 * dot(uv, hadamard(d, d));
    } else {
        const Mat a2 = matmul(a, a);
        const Mat a3 = matmul(a2, a);
        Mat b(a.rows(), a.cols());   // entrywise square
        Mat c3(a.rows(), a.cols());  // entrywise cube
        for (std::size_t idx = 0; idx < a.data().size(); ++idx) {
            double x = a.data()[idx];
            b.data()[idx] = x * x;
            c3.data()[idx] = x * x * x;
        }
        Vec ones(static_cast<std::size_t>(n), 1.0);
        const Vec r = matvec(b, ones);  // r_i = sum_j x_ij^2
        const Vec av = matvec(a, v);
        const Vec au = matvec(a, u);
        const Vec dd = hadamard(d, d);

        const double t0 = dot(u, matvec(a3, v));
        const double t01 = dot(hadamard(u, d), matvec(a2, v));
        const double t12 = dot(hadamard(au, d), av);
        const double t23 = dot(matvec(a2, u), hadamard(d, v));
        const double t02 = dot(hadamard(u, r), av);
        const double t13 = dot(hadamard(v, r), au);
        const double t03 = dot(uv, diagonal(a3));
        const double t01_23 = dot(hadamard(u, d), matvec(a, hadamard(d, v)));
        const double t02_13 = dot(u, matvec(c3, v));
        const double t03_12 = dot(uv, matvec(b, d));
        const double t012 = dot(hadamard(u, dd), av);
        const double t013 = dot(hadamard(uv, d), r);
        const double t023 = t013;
        const double t123 = dot(hadamard(v, dd), au);
        const double t0123 = dot(uv, hadamard(dd, d));

        s = t0 - (t01 + t12 + t23 + t02 + t13 + t03)
            + (t01_23 + t02_13 + t03_12)
            + 2.0 * (t012 + t013 + t023 + t123)
            - 6.0 * t0123;
    }
    return s * std::pow(static_cast<double>(n), -0.5 * (l + 1));
}

}  // namespace wigner

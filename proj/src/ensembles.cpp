#include "wigner/ensembles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wigner {

WignerSample sample_wigner(long long n, const EntryLaw& law, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_wigner: n >= 1 required");
    WignerSample w;
    w.n = n;
    w.seed = seed;
    w.law = law.name();
    w.entries = Mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    Rng rng = Rng(seed).stream(0x5749474eULL);  // entry stream
    for (long long i = 0; i < n; ++i) {
        for (long long j = i; j < n; ++j) {
            double v = law.sample(rng);
            w.entries.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            w.entries.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return w;
}

WignerSample wigner_from_entries(Mat entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw std::invalid_argument("wigner_from_entries: square non-empty matrix required");
    for (std::size_t i = 0; i < entries.rows(); ++i)
        for (std::size_t j = i + 1; j < entries.cols(); ++j)
            if (entries.at(i, j) != entries.at(j, i))
                throw std::invalid_argument("wigner_from_entries: matrix must be symmetric");
    WignerSample w;
    w.n = static_cast<long long>(entries.rows());
    w.entries = std::move(entries);
    return w;
}

Mat scaled_matrix(const WignerSample& w) {
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(w.n));
    Mat m = w.entries;
    for (double& v : m.data()) v *= inv_sqrt_n;
    return m;
}

StepFunction apply_kernel(const KernelOp& k, const StepFunction& f) {
    const WignerSample& w = k.sample();
    if (f.n() != w.n) throw std::invalid_argument("apply_kernel: dimension mismatch");
    const long long n = w.n;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    StepFunction out(n);
    for (long long i = 1; i <= n; ++i) {
        const double* row = w.entries.row(static_cast<std::size_t>(i - 1));
        double s = 0.0;
        for (long long j = 1; j <= n; ++j) s += row[j - 1] * f.at(j);
        out.at(i) = s * inv_sqrt_n;
    }
    return out;
}

std::vector<double> trace_moments(const WignerSample& w, int l_max) {
    if (l_max < 1) throw std::invalid_argument("trace_moments: l >= 1 required");
    const double n = static_cast<double>(w.n);
    Mat m1 = scaled_matrix(w);

    // powers W^1 .. W^ceil(l_max/2); tr W^{p+q} = <W^p, W^q>_F by symmetry
    int half = (l_max + 1) / 2;
    std::vector<Mat> powers;
    powers.reserve(static_cast<std::size_t>(half));
    powers.push_back(std::move(m1));
    for (int p = 2; p <= half; ++p) powers.push_back(matmul(powers.back(), powers[0]));

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(l_max));
    for (int l = 1; l <= l_max; ++l) {
        double t;
        if (l == 1) {
            t = trace(powers[0]);
        } else {
            int p = l / 2;
            int q = l - p;
            t = frobenius_dot(powers[static_cast<std::size_t>(p - 1)],
                              powers[static_cast<std::size_t>(q - 1)]);
        }
        out.push_back(t / n);
    }
    return out;
}

double operator_norm_estimate(const KernelOp& k, int iterations) {
    if (iterations < 1) throw std::invalid_argument("operator_norm_estimate: iterations >= 1");
    const WignerSample& w = k.sample();
    const long long n = w.n;
    const double inv_n = 1.0 / static_cast<double>(n);  // two kernel hops: (1/sqrt n)^2

    double norm_entries = 0.0;
    for (double v : w.entries.data()) norm_entries += v * v;
    if (norm_entries == 0.0) return 0.0;

    // deterministic start vector from the sample's seed
    Rng rng = Rng(w.seed ^ 0x6f706e6f726dULL).stream(1);
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.gaussian();

    Vec tmp(static_cast<std::size_t>(n));
    double rayleigh = 0.0;
    for (int it = 0; it < iterations; ++it) {
        // u = W^2 v via two symmetric matvecs
        for (long long i = 0; i < n; ++i) {
            const double* row = w.entries.row(static_cast<std::size_t>(i));
            double s = 0.0;
            for (long long j = 0; j < n; ++j) s += row[j] * v[static_cast<std::size_t>(j)];
            tmp[static_cast<std::size_t>(i)] = s;
        }
        Vec u(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            const double* row = w.entries.row(static_cast<std::size_t>(i));
            double s = 0.0;
            for (long long j = 0; j < n; ++j) s += row[j] * tmp[static_cast<std::size_t>(j)];
            u[static_cast<std::size_t>(i)] = s * inv_n;
        }
        double vv = dot(v, v);
        rayleigh = dot(v, u) / vv;
        double un = std::sqrt(dot(u, u));
        if (un == 0.0) return 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / un;
    }
    return std::sqrt(std::max(0.0, rayleigh));
}

void save_sample_csv(const WignerSample& w, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_sample_csv: cannot open " + path);
    os << "# n=" << w.n << ",law=" << w.law << ",seed=" << w.seed << "\n";
    os.precision(17);
    for (long long i = 0; i < w.n; ++i) {
        const double* row = w.entries.row(static_cast<std::size_t>(i));
        for (long long j = 0; j < w.n; ++j) {
            if (j) os << ",";
            os << row[j];
        }
        os << "\n";
    }
}

WignerSample load_sample_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_sample_csv: cannot open " + path);
    std::string header;
    std::getline(is, header);
    if (header.rfind("# n=", 0) != 0) throw std::runtime_error("load_sample_csv: bad header");
    WignerSample w;
    {
        std::string rest = header.substr(4);
        std::size_t c1 = rest.find(",law=");
        std::size_t c2 = rest.find(",seed=");
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("load_sample_csv: bad header fields");
        w.n = std::stoll(rest.substr(0, c1));
        w.law = rest.substr(c1 + 5, c2 - c1 - 5);
        w.seed = std::stoull(rest.substr(c2 + 6));
    }
    if (w.n < 1) throw std::runtime_error("load_sample_csv: bad dimension");
    w.entries = Mat(static_cast<std::size_t>(w.n), static_cast<std::size_t>(w.n));
    std::string line;
    for (long long i = 0; i < w.n; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("load_sample_csv: truncated file");
        std::istringstream ls(line);
        std::string cell;
        for (long long j = 0; j < w.n; ++j) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("load_sample_csv: short row");
            w.entries.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::stod(cell);
        }
    }
    return w;
}

}  // namespace wigner

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "wigner/rng.hpp"

namespace wigner {

/// Mean-0 variance-1 entry laws for the matrix ensembles. All bundled laws
/// have sub-factorial moment growth E|x|^d <= (C1 d)^{C2 d}, so the trace
/// and walk statistics computed downstream are covered by their moment
/// hypotheses; the certificate flag records that.
class EntryLaw {
public:
    enum class Kind { Gaussian, Rademacher, UniformScaled };

    static EntryLaw gaussian() { return EntryLaw(Kind::Gaussian); }
    static EntryLaw rademacher() { return EntryLaw(Kind::Rademacher); }
    static EntryLaw uniform_scaled() { return EntryLaw(Kind::UniformScaled); }

    static EntryLaw from_name(const std::string& name) {
        if (name == "gaussian") return gaussian();
        if (name == "rademacher") return rademacher();
        if (name == "uniform" || name == "uniform-scaled") return uniform_scaled();
        throw std::invalid_argument("unknown entry law: " + name);
    }

    Kind kind() const { return kind_; }

    std::string name() const {
        switch (kind_) {
            case Kind::Gaussian: return "gaussian";
            case Kind::Rademacher: return "rademacher";
            case Kind::UniformScaled: return "uniform-scaled";
        }
        return "?";
    }

    bool moment_growth_certified() const { return true; }

    double sample(Rng& rng) const {
        switch (kind_) {
            case Kind::Gaussian: return rng.gaussian();
            case Kind::Rademacher: return rng.rademacher();
            case Kind::UniformScaled: return rng.uniform(-kSqrt3, kSqrt3);
        }
        return 0.0;
    }

    /// Exact E[x^k]. Needed by the walk-sum decompositions, where products of
    /// entries are integrated out edge by edge.
    double moment(int k) const {
        if (k < 0) throw std::invalid_argument("moment: k >= 0 required");
        if (k == 0) return 1.0;
        if (k % 2 == 1) return 0.0;  // all bundled laws are symmetric
        switch (kind_) {
            case Kind::Gaussian: {
                double m = 1.0;  // (k-1)!!
                for (int j = k - 1; j >= 1; j -= 2) m *= static_cast<double>(j);
                return m;
            }
            case Kind::Rademacher:
                return 1.0;
            case Kind::UniformScaled:
                // uniform on [-sqrt(3), sqrt(3)]: E[x^k] = 3^{k/2} / (k+1)
                return std::pow(3.0, k / 2) / static_cast<double>(k + 1);
        }
        return 0.0;
    }

private:
    explicit EntryLaw(Kind kind) : kind_(kind) {}
    static constexpr double kSqrt3 = 1.7320508075688772935;
    Kind kind_;
};

}  // namespace wigner

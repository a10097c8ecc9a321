#pragma once

#include "rgc/cochain.hpp"
#include "rgc/coefficients.hpp"

#include <random>

namespace rgc::test {

inline Integer small_int(std::mt19937& rng, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    return d(rng);
}

// Random element of S (free coordinates bounded).
inline IntVector random_element(std::mt19937& rng, const RealCoefficientGroup& s)
{
    IntVector v(s.dim());
    for (auto& x : v)
        x = small_int(rng, 4);
    return s.reduce(v);
}

inline IntVector random_fixed_element(std::mt19937& rng, const RealCoefficientGroup& s)
{
    Lattice f = s.fixed_lattice();
    IntVector v(s.dim());
    for (const auto& b : f.basis()) {
        Integer k = small_int(rng, 3);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += k * b[i];
    }
    return s.reduce(v);
}

inline RealCochain random_real_cochain(std::mt19937& rng, const RealCochainComplex& c, std::size_t n)
{
    RealCochain out = c.zero(n);
    const auto& b = c.basis(n);
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        out.values[o] = b.fixed[o] ? random_fixed_element(rng, c.coefficients()) : random_element(rng, c.coefficients());
    return out;
}

// Random coefficient group with a valid involution, found by rejection.
inline RealCoefficientGroup random_tau_group(std::mt19937& rng)
{
    static const std::vector<std::vector<long>> torsions{{}, {2}, {3}, {4}, {6}, {2, 2}, {2, 4}, {3, 6}, {12}, {5}};
    for (;;) {
        std::size_t r = rng() % 3;
        const auto& tl = torsions[rng() % torsions.size()];
        std::vector<Integer> tors(tl.begin(), tl.end());
        const std::size_t d = r + tors.size();
        if (d == 0)
            continue;
        // free block P D P^-1 with P unimodular
        IntMatrix dmat(r, r), p = IntMatrix::identity(r), pinv = IntMatrix::identity(r);
        for (std::size_t i = 0; i < r; ++i)
            dmat(i, i) = rng() % 2 ? 1 : -1;
        if (r == 2) {
            Integer k = small_int(rng, 2);
            p(0, 1) = k;
            pinv(0, 1) = -k;
            if (rng() % 2) {
                std::swap(dmat(0, 0), dmat(1, 1));
            }
            if (rng() % 3 == 0) {
                // the swap involution
                dmat = IntMatrix(2, 2);
                dmat(0, 1) = 1;
                dmat(1, 0) = 1;
            }
        }
        IntMatrix free_block = p * dmat * pinv;
        for (int attempt = 0; attempt < 200; ++attempt) {
            IntMatrix tau(d, d);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    tau(i, j) = free_block(i, j);
            for (std::size_t i = r; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    long m = tl[i - r];
                    tau(i, j) = static_cast<long>(rng() % static_cast<unsigned long>(m));
                }
            try {
                return RealCoefficientGroup::integral(r, tors, tau);
            } catch (const Error&) {
            }
        }
    }
}

}  // namespace rgc::test

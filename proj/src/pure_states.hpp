#pragma once

#include <numbers>
#include <vector>

#include "qeve/linalg.hpp"

namespace qeve::detail {

inline std::vector<cplx> singlet_ket() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {0.0, cplx{r, 0.0}, cplx{-r, 0.0}, 0.0};
}

// Reduced 2x2 state of one factor of a pure state over `factors` qubits.
inline Mat reduce_one(const std::vector<cplx>& psi, int factors, int keep) {
    Mat r(2, 2);
    const int shift = factors - 1 - keep;
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) {
            if ((i & ~(std::size_t{1} << shift)) != (j & ~(std::size_t{1} << shift))) continue;
            r((i >> shift) & 1, (j >> shift) & 1) += psi[i] * std::conj(psi[j]);
        }
    return r;
}

// Reduced 4x4 state of the ordered factor pair (keep1, keep2).
inline Mat reduce_pair(const std::vector<cplx>& psi, int factors, int keep1, int keep2) {
    Mat r(4, 4);
    const int s1 = factors - 1 - keep1;
    const int s2 = factors - 1 - keep2;
    const std::size_t mask = ~((std::size_t{1} << s1) | (std::size_t{1} << s2));
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) {
            if ((i & mask) != (j & mask)) continue;
            const std::size_t a = ((i >> s1) & 1) * 2 + ((i >> s2) & 1);
            const std::size_t b = ((j >> s1) & 1) * 2 + ((j >> s2) & 1);
            r(a, b) += psi[i] * std::conj(psi[j]);
        }
    return r;
}

// 2x2 operator placed at `factor` of a `factors`-qubit space, identity
// elsewhere.
inline Mat expand_at(const Mat& op, int factors, int factor) {
    Mat r = factor == 0 ? op : Mat::identity(2);
    for (int f = 1; f < factors; ++f) r = kron(r, f == factor ? op : Mat::identity(2));
    return r;
}

inline double quadratic_form(const std::vector<cplx>& psi, const Mat& m) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < psi.size(); ++j) row += m(i, j) * psi[j];
        s += std::conj(psi[i]) * row;
    }
    return s.real();
}

}  // namespace qeve::detail

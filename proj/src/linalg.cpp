#include "qeve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qeve {

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::adjoint() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx Mat::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Mat& Mat::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) {
    a += b;
    return a;
}

Mat operator-(const Mat& a, const Mat& b) {
    Mat r = a;
    r += cplx{-1.0, 0.0} * b;
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat operator*(cplx s, Mat a) {
    a *= s;
    return a;
}

std::vector<cplx> operator*(const Mat& a, const std::vector<cplx>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<cplx> r(a.rows(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

Mat outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    Mat r(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

bool is_unitary(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Mat p = m.adjoint() * m;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(p(i, j) - want) > tol) return false;
        }
    return true;
}

namespace {

double off_diagonal_norm(const Mat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
    if (!is_hermitian(m, 1e-9 * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("eigenvalues need a Hermitian matrix");
    const std::size_t n = m.rows();

    if (n == 1) return {m(0, 0).real()};
    if (n == 2) {
        const double a = m(0, 0).real(), d = m(1, 1).real();
        const double r = std::abs(m(0, 1));
        const double mid = 0.5 * (a + d);
        const double disc = std::hypot(0.5 * (a - d), r);
        return {mid - disc, mid + disc};
    }

    Mat a = m;
    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-13 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r;
                double theta = 0.5 * std::atan2(2.0 * r, a(p, p).real() - a(q, q).real());
                if (theta > std::numbers::pi / 4.0) theta -= std::numbers::pi / 2.0;
                const double c = std::cos(theta), s = std::sin(theta);
                // columns: col_p' = c*col_p + s*conj(phase)*col_q,
                //          col_q' = -s*phase*col_p + c*col_q; then rows alike.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = a(k, p), vq = a(k, q);
                    a(k, p) = c * vp + s * std::conj(phase) * vq;
                    a(k, q) = -s * phase * vp + c * vq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = a(p, k), vq = a(q, k);
                    a(p, k) = c * vp + s * phase * vq;
                    a(q, k) = -s * std::conj(phase) * vp + c * vq;
                }
            }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

Mat complete_unitary(const Mat& m, const std::vector<bool>& given) {
    const std::size_t n = m.rows();
    if (m.cols() != n || given.size() != n) throw std::invalid_argument("complete_unitary shape mismatch");

    std::vector<std::vector<cplx>> cols;
    for (std::size_t j = 0; j < n; ++j)
        if (given[j]) {
            std::vector<cplx> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = m(i, j);
            cols.push_back(std::move(c));
        }

    Mat u = m;
    for (std::size_t j = 0; j < n; ++j) {
        if (given[j]) continue;
        std::vector<cplx> v;
        for (std::size_t seed = 0; seed < n; ++seed) {
            v.assign(n, cplx{0.0, 0.0});
            v[seed] = 1.0;
            for (const auto& c : cols) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(c[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * c[i];
            }
            double norm = 0.0;
            for (const cplx& x : v) norm += std::norm(x);
            norm = std::sqrt(norm);
            if (norm > 1e-6) {
                for (cplx& x : v) x /= norm;
                break;
            }
            v.clear();
        }
        if (v.empty()) throw std::invalid_argument("complete_unitary: given columns are degenerate");
        for (std::size_t i = 0; i < n; ++i) u(i, j) = v[i];
        cols.push_back(std::move(v));
    }
    return u;
}

}  // namespace qeve

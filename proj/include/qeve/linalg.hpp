#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qeve {

using cplx = std::complex<double>;

// Small dense complex matrix, row major.  Everything in this library lives
// in dimension 2..16, so no attempt is made to be clever about storage.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat adjoint() const;
    cplx trace() const;
    double max_abs() const;

    Mat& operator+=(const Mat& o);
    Mat& operator*=(cplx s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);

std::vector<cplx> operator*(const Mat& a, const std::vector<cplx>& v);

// Tensor (Kronecker) product.
Mat kron(const Mat& a, const Mat& b);
std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b);

// |u><v|
Mat outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

bool is_hermitian(const Mat& m, double tol);
bool is_unitary(const Mat& m, double tol);

// Eigenvalues of a Hermitian matrix, ascending.  2x2 by closed form,
// larger sizes by cyclic Jacobi iteration driven to off-diagonal 1e-13.
std::vector<double> hermitian_eigenvalues(const Mat& m);

// Fills the unspecified columns of a partial isometry so the result is
// unitary.  `m` holds the given columns; `given[j]` marks which ones.
// Completion is by Gram-Schmidt against standard basis vectors taken in
// a fixed order, so the result is deterministic.
Mat complete_unitary(const Mat& m, const std::vector<bool>& given);

}  // namespace qeve

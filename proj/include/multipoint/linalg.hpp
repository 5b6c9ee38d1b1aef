#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace multipoint {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix stored row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws ValidationError if the entry count does not match or an entry is not finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    CVector column(std::size_t c) const;

    ComplexMatrix adjoint() const;
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;
    /// Maximum absolute column sum.
    double one_norm() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
CVector operator*(const ComplexMatrix& a, std::span<const Complex> x);

/// (x, y) = sum_j x_j conj(y_j); linear in the first argument.
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{j,k} |M[j][k] - conj(M[k][j])|; infinity for non-square input.
double hermitian_defect(const ComplexMatrix& m);
/// ||M^* M - I||_max; infinity for non-square input.
double unitary_defect(const ComplexMatrix& m);

class HermitianMatrix {
public:
    HermitianMatrix() = default;
    /// Validates squareness and max|M - M^*| <= tol * (1 + max|M|). The stored
    /// matrix is the exact Hermitian part (M + M^*)/2.
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-12);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

    bool operator==(const HermitianMatrix&) const = default;

private:
    ComplexMatrix m_;
};

class UnitaryMatrix {
public:
    UnitaryMatrix() = default;
    /// Validates squareness and ||U^*U - I||_max <= tol.
    explicit UnitaryMatrix(ComplexMatrix m, double tol = 1e-10);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

    bool operator==(const UnitaryMatrix&) const = default;

private:
    ComplexMatrix m_;
};

struct HermitianEig {
    std::vector<double> eigenvalues;  ///< ascending
    ComplexMatrix vectors;            ///< eigenvectors as columns
};

struct UnitaryEig {
    CVector eigenvalues;    ///< unit modulus, ascending by arg in [0, 2pi)
    ComplexMatrix vectors;  ///< eigenvectors as columns
};

/// LU factorization with partial pivoting.
class LuDecomposition {
public:
    explicit LuDecomposition(ComplexMatrix m);

    std::size_t dim() const noexcept { return lu_.rows(); }
    /// Smallest |U_kk|.
    double min_pivot() const noexcept;
    Complex determinant() const;
    CVector solve(std::span<const Complex> b) const;
    ComplexMatrix solve(const ComplexMatrix& b) const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

/// Cyclic complex Jacobi. Throws ConvergenceError (carrying the relative
/// off-diagonal mass) if max_sweeps is exhausted.
HermitianEig herm_eig(const HermitianMatrix& a, double eig_tol = 1e-13, int max_sweeps = 64);

/// Eigendecomposition of a unitary matrix through its Cayley transform.
UnitaryEig unitary_eig(const UnitaryMatrix& u, double eig_tol = 1e-13);

/// e^{iAt} = V diag(e^{i lambda_j t}) V^*.
UnitaryMatrix expm_i_hermitian(const HermitianMatrix& a, double t);

/// V diag(e^{i (lambda_j - shift) t}) V^* from a precomputed decomposition.
/// Unitary only when shift is real.
ComplexMatrix shifted_propagator(const HermitianEig& eig, Complex shift, double t);

/// Pade scaling-and-squaring exponential of a general square matrix.
ComplexMatrix expm_scaling_squaring(const ComplexMatrix& m);

/// Solves M x = b. Throws SingularMatrixError when a pivot falls below
/// 1e-13 * max|M| (or the matrix is zero).
CVector solve_linear(const ComplexMatrix& m, std::span<const Complex> b);
/// Same, with an explicit absolute pivot floor.
CVector solve_linear(const ComplexMatrix& m, std::span<const Complex> b, double pivot_floor);

Complex det(const ComplexMatrix& m);

namespace detail {

/// Cayley route with a forced pre-rotation e^{i phi}; exposed for tests.
UnitaryEig unitary_eig_rotated(const ComplexMatrix& u, double phi, double eig_tol);

/// Makes the first component with modulus above 1e-10 real positive.
void normalize_phase(std::span<Complex> v);

}  // namespace detail

}  // namespace multipoint

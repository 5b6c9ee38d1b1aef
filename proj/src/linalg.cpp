#include "multipoint/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "multipoint/errors.hpp"

namespace multipoint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) {
        std::ostringstream os;
        os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
}

bool lex_less(std::span<const Complex> a, std::span<const Complex> b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return false;
}

// Sorts eigenpairs by key; keys within tie_tol of their run start are ordered
// by the lexicographic order of the phase-normalized eigenvector.
template <typename Value>
void sort_eigenpairs(std::vector<double>& keys, std::vector<Value>& values, ComplexMatrix& vectors,
                     double tie_tol) {
    const std::size_t n = keys.size();
    std::vector<CVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        cols[j] = vectors.column(j);
        detail::normalize_phase(cols[j]);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && keys[order[end]] - keys[order[start]] <= tie_tol) ++end;
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                  order.begin() + static_cast<std::ptrdiff_t>(end),
                  [&](std::size_t a, std::size_t b) { return lex_less(cols[a], cols[b]); });
        start = end;
    }
    std::vector<double> sorted_keys(n);
    std::vector<Value> sorted_values(n);
    ComplexMatrix sorted_vectors(vectors.rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_keys[j] = keys[order[j]];
        sorted_values[j] = values[order[j]];
        for (std::size_t r = 0; r < vectors.rows(); ++r) sorted_vectors(r, j) = cols[order[j]][r];
    }
    keys = std::move(sorted_keys);
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

double principal_arg(Complex mu) {
    double theta = std::arg(mu);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi - 1e-14) theta = 0.0;
    return theta;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        std::ostringstream os;
        os << "matrix " << rows_ << "x" << cols_ << " given " << data_.size() << " entries";
        throw ValidationError(os.str());
    }
    for (const Complex& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError("matrix entry is not finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) m(k, k) = diag[k];
    return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
    CVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::one_norm() const noexcept {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix difference: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product: shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CVector operator*(const ComplexMatrix& a, std::span<const Complex> x) {
    if (a.cols() != x.size()) throw ValidationError("matrix-vector product: shape mismatch");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
        out[i] = s;
    }
    return out;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    // Written out in real arithmetic so that dot(x, y) == conj(dot(y, x)) bit for bit.
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xr = x[k].real(), xi = x[k].imag();
        const double yr = y[k].real(), yi = y[k].imag();
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
    }
    return {re, im};
}

double norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const Complex& z : x) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

double hermitian_defect(const ComplexMatrix& m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t j = 0; j < m.rows(); ++j)
        for (std::size_t k = j; k < m.cols(); ++k) d = std::max(d, std::abs(m(j, k) - std::conj(m(k, j))));
    return d;
}

double unitary_defect(const ComplexMatrix& m) {
    if (!m.is_square()) return std::numeric_limits<double>::infinity();
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
}

// ---------------------------------------------------------------------------
// Strong types

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
    require_square(m, "HermitianMatrix");
    const double defect = hermitian_defect(m);
    if (!(defect <= tol * (1.0 + m.max_abs()))) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max|M - M^*| = " << defect;
        throw ValidationError(os.str());
    }
    m_ = ComplexMatrix(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        m_(j, j) = m(j, j).real();
        for (std::size_t k = j + 1; k < m.cols(); ++k) {
            const Complex z = 0.5 * (m(j, k) + std::conj(m(k, j)));
            m_(j, k) = z;
            m_(k, j) = std::conj(z);
        }
    }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    require_square(m_, "UnitaryMatrix");
    const double defect = unitary_defect(m_);
    if (!(defect <= tol)) {
        std::ostringstream os;
        os << "matrix is not unitary: ||U^*U - I||_max = " << defect;
        throw ValidationError(os.str());
    }
}

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(ComplexMatrix m) : lu_(std::move(m)) {
    require_square(lu_, "LU");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(lu_(r, k)) > best) {
                best = std::abs(lu_(r, k));
                p = r;
            }
        }
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(p, c));
            std::swap(perm_[k], perm_[p]);
            sign_ = -sign_;
        }
        const Complex pivot = lu_(k, k);
        if (pivot == Complex{}) continue;
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = lu_(r, k) / pivot;
            lu_(r, k) = f;
            if (f == Complex{}) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
        }
    }
}

double LuDecomposition::min_pivot() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lu_.rows(); ++k) m = std::min(m, std::abs(lu_(k, k)));
    return m;
}

Complex LuDecomposition::determinant() const {
    Complex d = static_cast<double>(sign_);
    for (std::size_t k = 0; k < lu_.rows(); ++k) d *= lu_(k, k);
    return d;
}

CVector LuDecomposition::solve(std::span<const Complex> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw ValidationError("LU solve: right-hand side has wrong length");
    CVector x(n);
    for (std::size_t r = 0; r < n; ++r) {
        Complex s = b[perm_[r]];
        for (std::size_t c = 0; c < r; ++c) s -= lu_(r, c) * x[c];
        x[r] = s;
    }
    for (std::size_t r = n; r-- > 0;) {
        Complex s = x[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= lu_(r, c) * x[c];
        x[r] = s / lu_(r, r);
    }
    return x;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
    if (b.rows() != lu_.rows()) throw ValidationError("LU solve: right-hand side has wrong shape");
    ComplexMatrix out(b.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        const CVector x = solve(b.column(c));
        for (std::size_t r = 0; r < b.rows(); ++r) out(r, c) = x[r];
    }
    return out;
}

CVector solve_linear(const ComplexMatrix& m, std::span<const Complex> b) {
    require_square(m, "solve_linear");
    return solve_linear(m, b, 1e-13 * m.max_abs());
}

CVector solve_linear(const ComplexMatrix& m, std::span<const Complex> b, double pivot_floor) {
    require_square(m, "solve_linear");
    if (b.size() != m.rows()) throw ValidationError("solve_linear: right-hand side has wrong length");
    LuDecomposition lu(m);
    const double pivot = lu.min_pivot();
    if (m.rows() > 0 && (pivot <= pivot_floor || pivot == 0.0)) {
        std::ostringstream os;
        os << "singular matrix: pivot " << pivot << " below floor " << pivot_floor;
        throw SingularMatrixError(os.str(), pivot);
    }
    return lu.solve(b);
}

Complex det(const ComplexMatrix& m) {
    require_square(m, "det");
    return LuDecomposition(m).determinant();
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem

HermitianEig herm_eig(const HermitianMatrix& h, double eig_tol, int max_sweeps) {
    const std::size_t n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = a.frobenius_norm();

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
        return std::sqrt(s);
    };

    bool converged = false;
    for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
        if (off_mass() <= eig_tol * scale) {
            converged = true;
            break;
        }
        if (sweep == max_sweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex e = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                const Complex se = s * e;
                const Complex sec = s * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sec * akq;
                    a(k, q) = se * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - se * aqk;
                    a(q, k) = sec * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sec * vkq;
                    v(k, q) = se * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        const double rel = scale > 0.0 ? off_mass() / scale : 0.0;
        std::ostringstream os;
        os << "Jacobi eigensolver did not converge in " << max_sweeps << " sweeps (relative off-diagonal mass "
           << rel << ")";
        throw ConvergenceError(os.str(), rel);
    }

    HermitianEig out;
    out.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a(k, k).real();
    std::vector<double> keys = out.eigenvalues;
    std::vector<double> values = out.eigenvalues;
    sort_eigenpairs(keys, values, v, 1e-12 * (1.0 + h.matrix().max_abs()));
    out.eigenvalues = std::move(values);
    out.vectors = std::move(v);
    return out;
}

// ---------------------------------------------------------------------------
// Unitary eigenproblem

namespace detail {

void normalize_phase(std::span<Complex> v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double m = std::abs(v[k]);
        if (m > 1e-10) {
            const Complex phase = std::conj(v[k]) / m;
            for (Complex& w : v) w *= phase;
            v[k] = Complex{std::abs(v[k]), 0.0};
            return;
        }
    }
}

namespace {

// i (I - U)(I + U)^{-1} for an already rotated U; nullopt-like flag via empty matrix.
ComplexMatrix cayley(const ComplexMatrix& u, bool& ok) {
    const std::size_t n = u.rows();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    LuDecomposition lu(id + u);
    if (!(std::abs(lu.determinant()) >= 1e-10)) {
        ok = false;
        return {};
    }
    ok = true;
    ComplexMatrix h = Complex{0.0, 1.0} * ((id - u) * lu.solve(id));
    // Exact Hermitian part.
    for (std::size_t j = 0; j < n; ++j) {
        h(j, j) = h(j, j).real();
        for (std::size_t k = j + 1; k < n; ++k) {
            const Complex z = 0.5 * (h(j, k) + std::conj(h(k, j)));
            h(j, k) = z;
            h(k, j) = std::conj(z);
        }
    }
    return h;
}

UnitaryEig finish_unitary_eig(const ComplexMatrix& u, const ComplexMatrix& h, double eig_tol) {
    const std::size_t n = u.rows();
    const HermitianEig he = herm_eig(HermitianMatrix(h, 1e-8), eig_tol);
    ComplexMatrix vecs = he.vectors;
    CVector mus(n);
    std::vector<double> keys(n);
    for (std::size_t j = 0; j < n; ++j) {
        const CVector vj = vecs.column(j);
        // Rayleigh quotient on the original matrix; insensitive to the Cayley conditioning.
        Complex mu = dot(u * vj, vj);
        mu /= std::abs(mu);
        mus[j] = mu;
        keys[j] = principal_arg(mu);
    }
    sort_eigenpairs(keys, mus, vecs, 1e-12);
    return UnitaryEig{std::move(mus), std::move(vecs)};
}

}  // namespace

UnitaryEig unitary_eig_rotated(const ComplexMatrix& u, double phi, double eig_tol) {
    bool ok = false;
    const ComplexMatrix h = cayley(std::polar(1.0, phi) * u, ok);
    if (!ok) throw NumericalError("Cayley transform undefined: -1 is an eigenvalue of the rotated matrix");
    return finish_unitary_eig(u, h, eig_tol);
}

}  // namespace detail

UnitaryEig unitary_eig(const UnitaryMatrix& um, double eig_tol) {
    const ComplexMatrix& u = um.matrix();
    const std::size_t n = u.rows();
    if (n == 0) return {};
    // Among d+1 equally spaced rotations at least one keeps every rotated
    // eigenvalue at angular distance >= pi/(2(d+1)) from -1, which bounds
    // ||H||_F by sqrt(d) * cot(pi/(4(d+1))) <= sqrt(d) * 4(d+1)/pi.
    const double accept = std::sqrt(static_cast<double>(n)) * 4.0 * static_cast<double>(n + 1) / std::numbers::pi;
    ComplexMatrix best;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= n; ++k) {
        const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n + 1);
        bool ok = false;
        ComplexMatrix h = detail::cayley(std::polar(1.0, phi) * u, ok);
        if (!ok) continue;
        const double hn = h.frobenius_norm();
        if (hn <= accept) return detail::finish_unitary_eig(u, h, eig_tol);
        if (hn < best_norm) {
            best_norm = hn;
            best = std::move(h);
        }
    }
    if (best.rows() == 0) throw NumericalError("Cayley transform failed for every pre-rotation");
    return detail::finish_unitary_eig(u, best, eig_tol);
}

// ---------------------------------------------------------------------------
// Exponentials

ComplexMatrix shifted_propagator(const HermitianEig& eig, Complex shift, double t) {
    const std::size_t n = eig.eigenvalues.size();
    const ComplexMatrix& v = eig.vectors;
    CVector phase(n);
    for (std::size_t j = 0; j < n; ++j) phase[j] = std::exp(Complex{0.0, 1.0} * (eig.eigenvalues[j] - shift) * t);
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex s{};
            for (std::size_t j = 0; j < n; ++j) s += v(r, j) * phase[j] * std::conj(v(c, j));
            out(r, c) = s;
        }
    }
    return out;
}

UnitaryMatrix expm_i_hermitian(const HermitianMatrix& a, double t) {
    return UnitaryMatrix(shifted_propagator(herm_eig(a), 0.0, t), 1e-10);
}

namespace {

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                           2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {64764752532480000.0,
                                            32382376266240000.0,
                                            7771770303897600.0,
                                            1187353796428800.0,
                                            129060195264000.0,
                                            10559470521600.0,
                                            670442572800.0,
                                            33522128640.0,
                                            1323241920.0,
                                            40840800.0,
                                            960960.0,
                                            16380.0,
                                            182.0,
                                            1.0};

// One-norm bounds below which the degree-m approximant is accurate to unit roundoff.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                          2.097847961257068e0, 5.371920351148152e0};

ComplexMatrix pade_ratio(const ComplexMatrix& u, const ComplexMatrix& v) {
    return LuDecomposition(v - u).solve(v + u);
}

ComplexMatrix pade_low(const ComplexMatrix& a, std::span<const double> b) {
    const std::size_t n = a.rows();
    const ComplexMatrix a2 = a * a;
    ComplexMatrix odd = b[1] * ComplexMatrix::identity(n);
    ComplexMatrix even = b[0] * ComplexMatrix::identity(n);
    ComplexMatrix power = ComplexMatrix::identity(n);
    for (std::size_t k = 2; k < b.size(); k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < b.size()) odd += b[k + 1] * power;
    }
    return pade_ratio(a * odd, even);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
    const auto& b = kPade13;
    const ComplexMatrix id = ComplexMatrix::identity(a.rows());
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;
    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
    const ComplexMatrix u = a * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const ComplexMatrix v_inner = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
    const ComplexMatrix v = v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_ratio(u, v);
}

}  // namespace

ComplexMatrix expm_scaling_squaring(const ComplexMatrix& m) {
    require_square(m, "expm_scaling_squaring");
    const double norm1 = m.one_norm();
    if (norm1 <= kTheta[0]) return pade_low(m, kPade3);
    if (norm1 <= kTheta[1]) return pade_low(m, kPade5);
    if (norm1 <= kTheta[2]) return pade_low(m, kPade7);
    if (norm1 <= kTheta[3]) return pade_low(m, kPade9);
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4]))));
    ComplexMatrix x = pade13(std::ldexp(1.0, -s) * m);
    for (int k = 0; k < s; ++k) x = x * x;
    return x;
}

}  // namespace multipoint

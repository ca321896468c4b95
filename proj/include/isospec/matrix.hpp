#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace isospec {

/// Dense real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    /// Pointer to the start of row i.
    double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);
/// Aᵀ · B without forming the transpose.
Matrix multiply_at_b(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double trace(const Matrix& a);

/// Real symmetric matrix. Full dense storage; the two triangles are kept
/// bitwise identical by construction (set() writes both entries).
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

    static SymmetricMatrix identity(int n);
    static SymmetricMatrix diagonal(const std::vector<double>& d);
    /// (A + Aᵀ)/2, exactly symmetric.
    static SymmetricMatrix symmetrized(const Matrix& a);
    /// Adopts `a` after checking |a_ij - a_ji| <= tol; stores the average.
    static SymmetricMatrix checked(const Matrix& a, double tol = 0.0);

    int n() const { return n_; }

    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<size_t>(i) * n_ + j] = v;
        a_[static_cast<size_t>(j) * n_ + i] = v;
    }

    const double* data() const { return a_.data(); }
    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * n_; }

    Matrix to_matrix() const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

double frobenius_norm(const SymmetricMatrix& a);
double trace(const SymmetricMatrix& a);
/// tr(M²) computed directly from entries (no eigensolve).
double trace_of_square(const SymmetricMatrix& a);
/// QᵀMQ symmetrized exactly (used by every conjugation-based flow step).
SymmetricMatrix conjugate_by_orthogonal(const SymmetricMatrix& m, const Matrix& q);

/// Jacobi/tridiagonal matrix: diagonal a (length n), off-diagonal b (length n-1).
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> off;

    int n() const { return static_cast<int>(diag.size()); }
    SymmetricMatrix to_symmetric() const;
};

/// True when every entry outside the three central diagonals is below tol.
bool is_tridiagonal(const SymmetricMatrix& m, double tol);
/// Extracts the three central diagonals (entries outside must be < tol).
TridiagonalMatrix extract_tridiagonal(const SymmetricMatrix& m, double tol = 1e-12);

/// Complex Hermitian matrix (row-major). Used for GUE samples; eigenvalues
/// are computed through the real 2n x 2n embedding.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, {0.0, 0.0}) {}

    int n() const { return n_; }
    std::complex<double> operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, std::complex<double> v) {
        a_[static_cast<size_t>(i) * n_ + j] = v;
        a_[static_cast<size_t>(j) * n_ + i] = std::conj(v);
    }

    /// [[A, -B], [B, A]] for M = A + iB; real symmetric, each eigenvalue of M doubled.
    SymmetricMatrix embed_real() const;

private:
    int n_ = 0;
    std::vector<std::complex<double>> a_;
};

/// Eigenvalues sorted ascending; optional orthonormal eigenvector matrix
/// (columns are eigenvectors, in the same order as values).
struct Spectrum {
    std::vector<double> values;
    std::optional<Matrix> vectors;
};

// CSV fixtures: first line is the dimension n, then n comma-separated rows,
// 17 significant digits.
void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

} // namespace isospec

#include "isospec/matrix.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "isospec/errors.hpp"

namespace isospec {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    Matrix c(a.rows(), b.cols());
    const int n = a.rows(), k_max = a.cols(), m = b.cols();
    // i-k-j order: unit-stride inner loop over both b and c.
    for (int i = 0; i < n; ++i) {
        double* ci = c.row(i);
        for (int k = 0; k < k_max; ++k) {
            const double aik = a(i, k);
            const double* bk = b.row(k);
            for (int j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix c(a.rows(), a.cols());
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) pc[i] = pa[i] + pb[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix c(a.rows(), a.cols());
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) pc[i] = pa[i] - pb[i];
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    const double* pa = a.data();
    double* pc = c.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) pc[i] = s * pa[i];
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix multiply_at_b(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows());
    Matrix c(a.cols(), b.cols());
    const int n = a.cols(), k_max = a.rows(), m = b.cols();
    for (int k = 0; k < k_max; ++k) {
        const double* ak = a.row(k);
        const double* bk = b.row(k);
        for (int i = 0; i < n; ++i) {
            const double aki = ak[i];
            double* ci = c.row(i);
            for (int j = 0; j < m; ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    const double* p = a.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

double max_abs(const Matrix& a) {
    double s = 0.0;
    const double* p = a.data();
    const size_t n = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < n; ++i) s = std::max(s, std::fabs(p[i]));
    return s;
}

double trace(const Matrix& a) {
    double s = 0.0;
    const int n = std::min(a.rows(), a.cols());
    for (int i = 0; i < n; ++i) s += a(i, i);
    return s;
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
    SymmetricMatrix m(static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
    return m;
}

SymmetricMatrix SymmetricMatrix::symmetrized(const Matrix& a) {
    assert(a.rows() == a.cols());
    SymmetricMatrix m(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j) m.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    return m;
}

SymmetricMatrix SymmetricMatrix::checked(const Matrix& a, double tol) {
    assert(a.rows() == a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j)
            if (std::fabs(a(i, j) - a(j, i)) > tol)
                throw DomainError("matrix is not symmetric at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    return symmetrized(a);
}

Matrix SymmetricMatrix::to_matrix() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double frobenius_norm(const SymmetricMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

double trace(const SymmetricMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i) s += a(i, i);
    return s;
}

double trace_of_square(const SymmetricMatrix& a) {
    // tr(M²) = Σ_ij M_ij² for symmetric M.
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) s += a(i, j) * a(i, j);
    return s;
}

SymmetricMatrix conjugate_by_orthogonal(const SymmetricMatrix& m, const Matrix& q) {
    Matrix mq = m.to_matrix() * q;
    Matrix qtmq = multiply_at_b(q, mq);
    return SymmetricMatrix::symmetrized(qtmq);
}

SymmetricMatrix TridiagonalMatrix::to_symmetric() const {
    const int m = n();
    SymmetricMatrix s(m);
    for (int i = 0; i < m; ++i) s.set(i, i, diag[i]);
    for (int i = 0; i + 1 < m; ++i) s.set(i, i + 1, off[i]);
    return s;
}

bool is_tridiagonal(const SymmetricMatrix& m, double tol) {
    for (int i = 0; i < m.n(); ++i)
        for (int j = i + 2; j < m.n(); ++j)
            if (std::fabs(m(i, j)) > tol) return false;
    return true;
}

TridiagonalMatrix extract_tridiagonal(const SymmetricMatrix& m, double tol) {
    if (!is_tridiagonal(m, tol))
        throw DomainError("matrix has entries outside the tridiagonal band");
    TridiagonalMatrix t;
    t.diag.resize(m.n());
    t.off.resize(m.n() > 0 ? m.n() - 1 : 0);
    for (int i = 0; i < m.n(); ++i) t.diag[i] = m(i, i);
    for (int i = 0; i + 1 < m.n(); ++i) t.off[i] = m(i, i + 1);
    return t;
}

SymmetricMatrix HermitianMatrix::embed_real() const {
    // [[A, -B], [B, A]] for M = A + iB; symmetric because Aᵀ = A, Bᵀ = -B.
    // Writing the (i, n+j) entries via set() also fills the mirror (n+j, i)
    // with the same value, which matches B's antisymmetry.
    SymmetricMatrix s(2 * n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const std::complex<double> v = (*this)(i, j);
            if (j >= i) {
                s.set(i, j, v.real());
                s.set(n_ + i, n_ + j, v.real());
            }
            s.set(i, n_ + j, -v.imag());
        }
    }
    return s;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    f << m.rows() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) f << ",";
            f << format_g17(m(i, j));
        }
        f << "\n";
    }
    if (!f) throw Error("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line)) throw Error("empty matrix file: " + path);
    const int n = std::stoi(line);
    if (n <= 0) throw Error("bad dimension in " + path);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(f, line)) throw Error("truncated matrix file: " + path);
        std::stringstream ss(line);
        std::string cell;
        for (int j = 0; j < n; ++j) {
            if (!std::getline(ss, cell, ',')) throw Error("short row in " + path);
            m(i, j) = std::stod(cell);
        }
    }
    return m;
}

} // namespace isospec

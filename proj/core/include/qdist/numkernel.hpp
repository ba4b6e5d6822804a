#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qdist/errors.hpp"
#include "qdist/tolerances.hpp"

namespace qdist {

using Complex = std::complex<double>;

bool is_finite(Complex z);

// Dense row-major complex matrix. The arithmetic here is deliberately
// plain: dimensions stay small (d <= 16 for the library's use cases) and
// determinism matters more than throughput.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);
    // Validates that every entry is finite.
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

    ComplexMatrix dagger() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(Complex s) const;
    ComplexMatrix& operator+=(const ComplexMatrix& o);

    // max entrywise |M - M^dag|
    double hermiticity_defect() const;
    bool is_hermitian(double tolerance = tol::hermitian) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Probability weights. Construction clips entries in [-1e-12, 0) to zero,
// rejects anything more negative, and requires the sum to be within
// tol::prob_sum of one.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> weights);
    static ProbVector uniform(int n);

    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_[static_cast<size_t>(i)]; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> w_;
};

// Eigendecomposition of a Hermitian matrix: values descending, vectors
// stored as columns in matching order.
struct Spectrum {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic Jacobi diagonalization. Deterministic sweep order, converges to
// off-diagonal Frobenius mass <= tol::jacobi * max(1, |input|_F).
Spectrum hermitian_eig(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Principal square root of a PSD Hermitian matrix. Eigenvalues in
// [-tol::psd, 0) clip to zero; below that throws NotPSD.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

// Partial trace of an operator on C^dim_a (x) C^dim_b, index layout
// (i, j) -> i * dim_b + j. Returns the reduced operator on `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep);

// Transpose of the `which` factor only; separability witness plumbing.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem which);

// True when p majorizes q: descending prefix sums of p dominate those of q
// within `slack`, after zero-padding to equal length. Totals must agree
// within the same slack.
bool majorizes(std::vector<double> p, std::vector<double> q, double slack = tol::majorization);
bool majorizes(const ProbVector& p, const ProbVector& q, double slack = tol::majorization);

// Base-2 entropy of nonnegative values. Entries in [-tol::psd, 0) clip to
// zero, more negative throws NotPSD. Result is clamped at zero.
double entropy_of_values(const std::vector<double>& values);
double shannon_entropy(const ProbVector& p);

// Deterministic random stream: mt19937_64 under a splitmix64-mixed seed,
// Gaussians via Box-Muller. Identical across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    // Independent substream; stream(seed, i) != Rng(seed) for typical use.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    double uniform01();             // (0, 1]
    double gaussian();              // standard normal
    Complex complex_gaussian();     // (g1 + i g2) / sqrt(2)
    int below(int n);               // uniform in [0, n)

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Modified Gram-Schmidt onto orthonormal columns (requires rows >= cols).
// The triangular factor's diagonal stays positive; columns that collapse
// fall back deterministically to canonical basis vectors.
void orthonormalize_columns(ComplexMatrix& m);

// Haar-distributed unitary: orthonormalization of a complex Gaussian
// matrix; the triangular factor's diagonal is kept positive so the result
// carries no residual phase bias.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

// Eigenvalues of a unitary matrix, projected onto the unit circle and
// sorted by principal argument. Uses the commuting Hermitian pair
// (U + U^dag)/2, (U - U^dag)/2i.
std::vector<Complex> unitary_eigenvalues(const ComplexMatrix& u);

// Shortest distance from the origin to the convex hull of a point set in
// the complex plane. Zero when the hull contains the origin.
double convex_hull_origin_distance(const std::vector<Complex>& points);

} // namespace qdist

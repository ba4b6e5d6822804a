#include "qdist/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdist {

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InvalidState("matrix dimensions must be nonnegative");
    a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Complex(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    const int r = static_cast<int>(rows.size());
    if (r == 0) throw InvalidState("empty matrix");
    const int c = static_cast<int>(rows[0].size());
    ComplexMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
            throw InvalidState("ragged matrix rows");
        for (int j = 0; j < c; ++j) {
            Complex z = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!is_finite(z)) throw InvalidState("non-finite matrix entry");
            m(i, j) = z;
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw NonSquare("trace of non-square matrix");
    Complex t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : a_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const Complex& z : a_)
        if (!is_finite(z)) return false;
    return true;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix addition shape");
    ComplexMatrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix subtraction shape");
    ComplexMatrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
    ComplexMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
    ComplexMatrix m = *this;
    for (Complex& z : m.a_) z *= s;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix addition shape");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) throw NonSquare("hermiticity check on non-square matrix");
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
    return is_square() && hermiticity_defect() <= tolerance;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix comparison shape");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

ProbVector::ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw InvalidState("empty probability vector");
    double sum = 0.0;
    for (double& x : w_) {
        if (!std::isfinite(x)) throw InvalidState("non-finite probability weight");
        if (x < 0.0) {
            if (x < -tol::prob_clip) throw InvalidState("negative probability weight");
            x = 0.0;
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol::prob_sum) throw InvalidState("probability weights do not sum to one");
}

ProbVector ProbVector::uniform(int n) {
    if (n <= 0) throw InvalidState("uniform weights need a positive count");
    return ProbVector(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic Jacobi pass; accumulate is null when only values are needed.
Spectrum jacobi_eig(const ComplexMatrix& m, bool accumulate) {
    if (!m.is_square()) throw NonSquare("eigendecomposition of non-square matrix");
    if (!m.all_finite()) throw InvalidState("non-finite matrix entry");
    if (!m.is_hermitian()) throw NotHermitian("eigendecomposition of non-Hermitian matrix");

    const int n = m.rows();
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = accumulate ? ComplexMatrix::identity(n) : ComplexMatrix();
    const double scale = std::max(1.0, a.frobenius_norm());
    const double target = tol::jacobi * scale;
    const int max_sweeps = 60;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_frobenius(a) <= target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const Complex u = apq / r;          // phase of the pivot
                const Complex uc = std::conj(u);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // columns p, q by R; rows restored from Hermitian symmetry
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * uc * akq;
                    a(k, q) = s * akp + c * uc * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                if (accumulate) {
                    for (int k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * uc * vkq;
                        v(k, q) = s * vkp + c * uc * vkq;
                    }
                }
            }
        }
    }
    if (sweep == max_sweeps && offdiag_frobenius(a) > target)
        throw NonConvergence("Jacobi eigensolver did not converge");

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum out;
    out.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = a(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
    if (accumulate) {
        out.vectors = ComplexMatrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[static_cast<size_t>(j)]);
    }
    return out;
}

} // namespace

Spectrum hermitian_eig(const ComplexMatrix& m) { return jacobi_eig(m, true); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return jacobi_eig(m, false).values;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    Spectrum s = hermitian_eig(m);
    const int n = m.rows();
    for (double& x : s.values) {
        if (x < -tol::psd) throw NotPSD("matrix square root of non-PSD input");
        if (x < 0.0) x = 0.0;
    }
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex z = 0.0;
            for (int k = 0; k < n; ++k)
                z += std::sqrt(s.values[static_cast<size_t>(k)]) * s.vectors(i, k) * std::conj(s.vectors(j, k));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
        out(i, i) = out(i, i).real();
    }
    return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep) {
    if (dim_a <= 0 || dim_b <= 0) throw InvalidState("partial trace needs positive dimensions");
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial trace dimensions do not factor the matrix");
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j) {
                Complex z = 0.0;
                for (int k = 0; k < dim_b; ++k) z += m(i * dim_b + k, j * dim_b + k);
                out(i, j) = z;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j) {
            Complex z = 0.0;
            for (int k = 0; k < dim_a; ++k) z += m(k * dim_b + i, k * dim_b + j);
            out(i, j) = z;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem which) {
    if (dim_a <= 0 || dim_b <= 0) throw InvalidState("partial transpose needs positive dimensions");
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial transpose dimensions do not factor the matrix");
    ComplexMatrix out(m.rows(), m.cols());
    for (int ia = 0; ia < dim_a; ++ia)
        for (int ib = 0; ib < dim_b; ++ib)
            for (int ja = 0; ja < dim_a; ++ja)
                for (int jb = 0; jb < dim_b; ++jb) {
                    const int r = ia * dim_b + ib;
                    const int c = ja * dim_b + jb;
                    const int rt = (which == Subsystem::A ? ja * dim_b + ib : ia * dim_b + jb);
                    const int ct = (which == Subsystem::A ? ia * dim_b + jb : ja * dim_b + ib);
                    out(rt, ct) = m(r, c);
                }
    return out;
}

bool majorizes(std::vector<double> p, std::vector<double> q, double slack) {
    const size_t n = std::max(p.size(), q.size());
    p.resize(n, 0.0);
    q.resize(n, 0.0);
    std::sort(p.begin(), p.end(), std::greater<double>());
    std::sort(q.begin(), q.end(), std::greater<double>());
    const double tp = std::accumulate(p.begin(), p.end(), 0.0);
    const double tq = std::accumulate(q.begin(), q.end(), 0.0);
    if (std::abs(tp - tq) > slack) return false;
    double sp = 0.0;
    double sq = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sp += p[i];
        sq += q[i];
        if (sp < sq - slack) return false;
    }
    return true;
}

bool majorizes(const ProbVector& p, const ProbVector& q, double slack) {
    return majorizes(p.weights(), q.weights(), slack);
}

double entropy_of_values(const std::vector<double>& values) {
    double h = 0.0;
    for (double x : values) {
        if (!std::isfinite(x)) throw InvalidState("non-finite value in entropy");
        if (x < -tol::psd) throw NotPSD("negative value in entropy");
        if (x > 0.0) h -= x * std::log2(x);
    }
    return std::max(h, 0.0);
}

double shannon_entropy(const ProbVector& p) { return entropy_of_values(p.weights()); }

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    gen_.seed(splitmix64(s));
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s = index + 0xD1B54A32D192ED03ULL;
    const std::uint64_t b = splitmix64(s);
    return Rng(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
}

double Rng::uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) * (1.0 / std::sqrt(2.0));
}

int Rng::below(int n) {
    if (n <= 0) throw InvalidState("Rng::below needs a positive bound");
    return static_cast<int>(static_cast<double>(n) * (uniform01() - 0x1.0p-54));
}

void orthonormalize_columns(ComplexMatrix& g) {
    if (g.rows() < g.cols()) throw DimensionMismatch("orthonormalization needs rows >= cols");
    const int n = g.rows();
    const int m = g.cols();
    for (int j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                Complex dot = 0.0;
                for (int i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            for (int fallback = 0; fallback < n; ++fallback) {
                for (int i = 0; i < n; ++i) g(i, j) = (i == fallback) ? 1.0 : 0.0;
                for (int k = 0; k < j; ++k) {
                    Complex dot = 0.0;
                    for (int i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
                    for (int i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
                }
                nrm = 0.0;
                for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
                nrm = std::sqrt(nrm);
                if (nrm >= 1e-6) break;
            }
        }
        for (int i = 0; i < n; ++i) g(i, j) *= (1.0 / nrm);
    }
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
    if (d <= 0) throw InvalidState("random unitary needs a positive dimension");
    Rng rng(seed);
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    orthonormalize_columns(g);
    return g;
}

std::vector<Complex> unitary_eigenvalues(const ComplexMatrix& u) {
    if (!u.is_square()) throw NonSquare("unitary eigenvalues of non-square matrix");
    const int n = u.rows();
    const ComplexMatrix ud = u.dagger();
    if (max_abs_diff(u * ud, ComplexMatrix::identity(n)) > tol::unitary)
        throw InvalidChannel("matrix is not unitary");

    // real and imaginary Hermitian parts commute for a normal matrix
    ComplexMatrix re(n, n);
    ComplexMatrix im(n, n);
    const Complex ihalf(0.0, -0.5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            re(i, j) = 0.5 * (u(i, j) + std::conj(u(j, i)));
            im(i, j) = ihalf * (u(i, j) - std::conj(u(j, i)));
        }

    Spectrum sa = hermitian_eig(re);
    std::vector<Complex> eigs;
    eigs.reserve(static_cast<size_t>(n));

    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && std::abs(sa.values[static_cast<size_t>(stop)] - sa.values[static_cast<size_t>(start)]) <= 1e-8)
            ++stop;
        const int m = stop - start;
        const double a_val = sa.values[static_cast<size_t>(start)];
        if (m == 1) {
            Complex b = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    b += std::conj(sa.vectors(i, start)) * im(i, j) * sa.vectors(j, start);
            eigs.emplace_back(a_val, b.real());
        } else {
            // diagonalize the imaginary part inside the degenerate block
            ComplexMatrix bc(m, m);
            for (int r = 0; r < m; ++r)
                for (int c = r; c < m; ++c) {
                    Complex z = 0.0;
                    for (int i = 0; i < n; ++i) {
                        Complex t = 0.0;
                        for (int j = 0; j < n; ++j) t += im(i, j) * sa.vectors(j, start + c);
                        z += std::conj(sa.vectors(i, start + r)) * t;
                    }
                    bc(r, c) = z;
                    bc(c, r) = std::conj(z);
                }
            for (double bval : hermitian_eigenvalues(bc)) eigs.emplace_back(a_val, bval);
        }
        start = stop;
    }

    for (Complex& z : eigs) {
        const double mag = std::abs(z);
        if (mag > 1e-12) z /= mag;
    }
    std::stable_sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
        return std::arg(a) < std::arg(b);
    });
    return eigs;
}

namespace {

double segment_origin_distance(Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 <= 1e-30) return std::abs(a);
    double t = -(a.real() * ab.real() + a.imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * ab);
}

} // namespace

double convex_hull_origin_distance(const std::vector<Complex>& points) {
    if (points.empty()) throw InvalidState("hull distance of empty point set");
    for (Complex z : points) {
        if (!is_finite(z)) throw InvalidState("non-finite point");
        if (std::abs(z) <= 1e-15) return 0.0;
    }

    // the origin lies inside the hull exactly when no angular gap exceeds pi
    std::vector<double> args;
    args.reserve(points.size());
    for (Complex z : points) args.push_back(std::arg(z));
    std::sort(args.begin(), args.end());
    double max_gap = args.front() + 2.0 * 3.14159265358979323846 - args.back();
    for (size_t i = 1; i < args.size(); ++i) max_gap = std::max(max_gap, args[i] - args[i - 1]);
    if (max_gap <= 3.14159265358979323846 + 1e-12) return 0.0;

    double best = std::abs(points.front());
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i; j < points.size(); ++j)
            best = std::min(best, segment_origin_distance(points[i], points[j]));
    return best;
}

} // namespace qdist

#include "qdist/qchannel.hpp"

#include <algorithm>
#include <cmath>

namespace qdist {

namespace {

ComplexMatrix completeness_sum(const std::vector<ComplexMatrix>& ops) {
    ComplexMatrix s(ops.front().cols(), ops.front().cols());
    for (const ComplexMatrix& a : ops) s += a.dagger() * a;
    return s;
}

void check_ops_shape(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) throw InvalidChannel("channel needs at least one Kraus operator");
    for (const ComplexMatrix& a : ops) {
        if (!a.all_finite()) throw InvalidState("non-finite Kraus entry");
        if (a.rows() != ops.front().rows() || a.cols() != ops.front().cols())
            throw DimensionMismatch("Kraus operators have mixed shapes");
    }
}

void check_completeness(const std::vector<ComplexMatrix>& ops) {
    const ComplexMatrix r = completeness_sum(ops) - ComplexMatrix::identity(ops.front().cols());
    if (r.frobenius_norm() > tol::completeness)
        throw InvalidChannel("Kraus operators do not satisfy completeness");
}

} // namespace

Channel Channel::unitary(ComplexMatrix u) {
    if (!u.is_square()) throw NonSquare("unitary channel matrix must be square");
    if (!u.all_finite()) throw InvalidState("non-finite unitary entry");
    if (max_abs_diff(u * u.dagger(), ComplexMatrix::identity(u.rows())) > tol::unitary)
        throw InvalidChannel("matrix is not unitary");
    Channel ch;
    ch.dim_in_ = u.cols();
    ch.dim_out_ = u.rows();
    ch.kind_ = ChannelKind::unitary;
    ch.unitary_ = u;
    ch.ops_.push_back(std::move(u));
    return ch;
}

Channel Channel::kraus(std::vector<ComplexMatrix> ops) {
    check_ops_shape(ops);
    check_completeness(ops);
    Channel ch;
    ch.dim_in_ = ops.front().cols();
    ch.dim_out_ = ops.front().rows();
    ch.kind_ = ChannelKind::kraus;
    ch.ops_ = std::move(ops);
    return ch;
}

Channel Channel::entanglement_breaking(EbForm form) {
    Channel ch = eb_to_kraus(form);
    ch.kind_ = ChannelKind::entanglement_breaking;
    ch.eb_ = std::move(form);
    return ch;
}

Channel Channel::identity(int d) {
    return Channel::unitary(ComplexMatrix::identity(d));
}

ChannelValidation validate(const Channel& ch) {
    ChannelValidation v;
    const ComplexMatrix r = completeness_sum(ch.kraus_ops()) - ComplexMatrix::identity(ch.dim_in());
    v.completeness_frobenius = r.frobenius_norm();
    v.completeness_max = r.max_abs();
    v.pass = v.completeness_frobenius <= tol::completeness;
    return v;
}

ComplexMatrix apply_raw(const Channel& ch, const ComplexMatrix& m) {
    if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in())
        throw DimensionMismatch("channel input dimension");
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const ComplexMatrix& a : ch.kraus_ops()) out += a * m * a.dagger();
    return out;
}

namespace {

DensityMatrix renormalized_output(ComplexMatrix out) {
    const double tr = out.trace().real();
    if (std::abs(tr - 1.0) > tol::trace_residual)
        throw InvalidState("channel output trace drifted beyond tolerance");
    out = out * Complex(1.0 / tr, 0.0);
    for (int i = 0; i < out.rows(); ++i)
        for (int j = i; j < out.cols(); ++j) {
            const Complex z = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    return DensityMatrix::trusted(std::move(out));
}

} // namespace

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
    return renormalized_output(apply_raw(ch, rho.mat()));
}

DensityMatrix apply_extended(const Channel& ch, const DensityMatrix& rho) {
    if (rho.dim() % ch.dim_in() != 0)
        throw DimensionMismatch("state dimension is not a multiple of the channel input");
    const int k = rho.dim() / ch.dim_in();
    if (k == 1) return apply(ch, rho);
    const ComplexMatrix idk = ComplexMatrix::identity(k);
    ComplexMatrix out(ch.dim_out() * k, ch.dim_out() * k);
    for (const ComplexMatrix& a : ch.kraus_ops()) {
        const ComplexMatrix ext = tensor_product(a, idk);
        out += ext * rho.mat() * ext.dagger();
    }
    return renormalized_output(std::move(out));
}

Channel compose_sequential(const Channel& e, const Channel& f) {
    if (f.dim_out() != e.dim_in())
        throw DimensionMismatch("sequential composition dimensions do not chain");
    if (e.kind() == ChannelKind::unitary && f.kind() == ChannelKind::unitary)
        return Channel::unitary(*e.unitary_matrix() * *f.unitary_matrix());
    std::vector<ComplexMatrix> ops;
    ops.reserve(e.kraus_ops().size() * f.kraus_ops().size());
    for (const ComplexMatrix& a : e.kraus_ops())
        for (const ComplexMatrix& b : f.kraus_ops()) ops.push_back(a * b);
    return Channel::kraus(std::move(ops));
}

Channel compose_tensor(const Channel& e, const Channel& f) {
    if (e.kind() == ChannelKind::unitary && f.kind() == ChannelKind::unitary)
        return Channel::unitary(tensor_product(*e.unitary_matrix(), *f.unitary_matrix()));
    std::vector<ComplexMatrix> ops;
    ops.reserve(e.kraus_ops().size() * f.kraus_ops().size());
    for (const ComplexMatrix& a : e.kraus_ops())
        for (const ComplexMatrix& b : f.kraus_ops()) ops.push_back(tensor_product(a, b));
    return Channel::kraus(std::move(ops));
}

Channel eb_to_kraus(const EbForm& form) {
    if (form.phis.empty() || form.phis.size() != form.psis.size())
        throw InvalidState("measure-and-reprepare form needs matching phi/psi lists");
    const int n = static_cast<int>(form.phis.size());
    const int dim_out = static_cast<int>(form.phis.front().size());
    const int dim_in = static_cast<int>(form.psis.front().size());

    ComplexMatrix povm(dim_in, dim_in);
    for (int i = 0; i < n; ++i) {
        const auto& phi = form.phis[static_cast<size_t>(i)];
        const auto& psi = form.psis[static_cast<size_t>(i)];
        if (static_cast<int>(phi.size()) != dim_out || static_cast<int>(psi.size()) != dim_in)
            throw DimensionMismatch("measure-and-reprepare vectors have mixed dimensions");
        double nrm = 0.0;
        for (Complex z : phi) {
            if (!is_finite(z)) throw InvalidState("non-finite output state entry");
            nrm += std::norm(z);
        }
        if (std::abs(std::sqrt(nrm) - 1.0) > tol::unit_norm)
            throw InvalidState("output states must be normalized");
        for (int a = 0; a < dim_in; ++a) {
            if (!is_finite(psi[static_cast<size_t>(a)])) throw InvalidState("non-finite measurement entry");
            for (int b = 0; b < dim_in; ++b)
                povm(a, b) += psi[static_cast<size_t>(a)] * std::conj(psi[static_cast<size_t>(b)]);
        }
    }
    if ((povm - ComplexMatrix::identity(dim_in)).frobenius_norm() > tol::completeness)
        throw IncompletePOVM("measurement vectors do not resolve the identity");

    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        ComplexMatrix a(dim_out, dim_in);
        for (int r = 0; r < dim_out; ++r)
            for (int c = 0; c < dim_in; ++c)
                a(r, c) = form.phis[static_cast<size_t>(i)][static_cast<size_t>(r)] *
                          std::conj(form.psis[static_cast<size_t>(i)][static_cast<size_t>(c)]);
        ops.push_back(std::move(a));
    }
    return Channel::kraus(std::move(ops));
}

Dilation dilate(const Channel& ch) {
    if (ch.dim_out() != ch.dim_in())
        throw DimensionMismatch("dilation requires equal input and output dimensions");
    const int d = ch.dim_in();
    const int r = static_cast<int>(ch.kraus_ops().size());
    const int n = d * r;

    // columns for ancilla state |0> come from the stacked Kraus operators;
    // the rest is a deterministic orthonormal completion
    ComplexMatrix u(n, n);
    std::vector<int> fixed;
    fixed.reserve(static_cast<size_t>(d));
    for (int b = 0; b < d; ++b) fixed.push_back(b * r);
    for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < r; ++i)
                u(a * r + i, fixed[static_cast<size_t>(b)]) = ch.kraus_ops()[static_cast<size_t>(i)](a, b);

    // reorder so the fixed columns come first, orthonormalize, then restore
    ComplexMatrix work(n, n);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    for (int b : fixed) order.push_back(b);
    for (int col = 0; col < n; ++col)
        if (col % r != 0) order.push_back(col);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        if (j < d) {
            for (int i = 0; i < n; ++i) work(i, j) = u(i, src);
        } else {
            for (int i = 0; i < n; ++i) work(i, j) = (i == src) ? 1.0 : 0.0;
        }
    }
    orthonormalize_columns(work);
    Dilation out;
    out.unitary = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.unitary(i, order[static_cast<size_t>(j)]) = work(i, j);
    out.ancilla_dim = r;
    return out;
}

Channel random_channel(int d, int rank, std::uint64_t seed) {
    if (d <= 0) throw InvalidState("random channel needs a positive dimension");
    if (rank <= 0 || rank > d * d) throw InvalidState("random channel rank out of range");
    Rng rng(seed);
    ComplexMatrix g(d * rank, d);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_gaussian();
    orthonormalize_columns(g);
    if (rank == 1) return Channel::unitary(std::move(g));
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<size_t>(rank));
    for (int k = 0; k < rank; ++k) {
        ComplexMatrix a(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) = g(k * d + i, j);
        ops.push_back(std::move(a));
    }
    return Channel::kraus(std::move(ops));
}

ChannelEnsemble::ChannelEnsemble(ProbVector w, std::vector<Channel> c)
    : weights(std::move(w)), channels(std::move(c)) {
    if (weights.size() != static_cast<int>(channels.size()))
        throw DimensionMismatch("ensemble weight and channel counts differ");
    for (const Channel& ch : channels) {
        if (ch.dim_in() != channels.front().dim_in() || ch.dim_out() != channels.front().dim_out())
            throw DimensionMismatch("ensemble channels have mixed dimensions");
    }
}

} // namespace qdist

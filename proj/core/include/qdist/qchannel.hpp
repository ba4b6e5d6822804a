#pragma once

#include <optional>
#include <vector>

#include "qdist/numkernel.hpp"
#include "qdist/qstate.hpp"

namespace qdist {

// Measure-and-reprepare data: output states phi_i and measurement vectors
// psi_i with sum_i |psi_i><psi_i| = I.
struct EbForm {
    std::vector<std::vector<Complex>> phis;
    std::vector<std::vector<Complex>> psis;
};

enum class ChannelKind { unitary, kraus, entanglement_breaking };

// Completely positive trace-preserving map held in operator-sum form.
// Unitary and measure-and-reprepare constructions lower to Kraus operators
// at construction and retain their original data for closed-form paths.
class Channel {
public:
    static Channel unitary(ComplexMatrix u);
    static Channel kraus(std::vector<ComplexMatrix> ops);
    static Channel entanglement_breaking(EbForm form);
    static Channel identity(int d);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    ChannelKind kind() const { return kind_; }
    const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
    // Present only for kind() == unitary.
    const std::optional<ComplexMatrix>& unitary_matrix() const { return unitary_; }
    const std::optional<EbForm>& eb_form() const { return eb_; }

private:
    Channel() = default;
    int dim_in_ = 0;
    int dim_out_ = 0;
    ChannelKind kind_ = ChannelKind::kraus;
    std::vector<ComplexMatrix> ops_;
    std::optional<ComplexMatrix> unitary_;
    std::optional<EbForm> eb_;
};

// Report-style validation; never throws on a well-formed but non-CPT set.
struct ChannelValidation {
    bool pass = false;
    double completeness_frobenius = 0.0;   // |sum A^dag A - I|_F
    double completeness_max = 0.0;         // max entrywise residual
};

ChannelValidation validate(const Channel& ch);

// sum_i A_i M A_i^dag without normalization or validity checks; the
// linear-action primitive behind apply/apply_extended.
ComplexMatrix apply_raw(const Channel& ch, const ComplexMatrix& m);

// Applies the channel and renormalizes the output trace. Trace drift
// beyond tol::trace_residual is an error.
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

// Applies ch (x) identity to a state on dim_in * k, acting on the leading
// factor of the (i, j) -> i * k + j index layout.
DensityMatrix apply_extended(const Channel& ch, const DensityMatrix& rho);

// e after f: (e . f)(rho) = e(f(rho)).
Channel compose_sequential(const Channel& e, const Channel& f);
Channel compose_tensor(const Channel& e, const Channel& f);

// Kraus operators |phi_i><psi_i| of a measure-and-reprepare form. Throws
// IncompletePOVM when the psis do not resolve the identity.
Channel eb_to_kraus(const EbForm& form);

// Isometric dilation: unitary U on dim * ancilla_dim with
// tr_B[U (rho (x) |0><0|) U^dag] = ch(rho), ancilla_dim = Kraus count.
// Requires dim_out == dim_in. The completion of the non-initial columns is
// a deterministic orthonormal extension.
struct Dilation {
    ComplexMatrix unitary;
    int ancilla_dim = 0;
};

Dilation dilate(const Channel& ch);

// Haar-style random channel from a Gaussian isometry with `rank` Kraus
// operators on C^d. rank == 1 yields a unitary channel.
Channel random_channel(int d, int rank, std::uint64_t seed);

// Weighted collection of channels with a common input dimension.
struct ChannelEnsemble {
    ProbVector weights;
    std::vector<Channel> channels;

    ChannelEnsemble(ProbVector w, std::vector<Channel> c);
    int size() const { return weights.size(); }
    int dim_in() const { return channels.front().dim_in(); }
    int dim_out() const { return channels.front().dim_out(); }
};

} // namespace qdist

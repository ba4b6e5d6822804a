// Regenerates the bundled fixture files from the library's own constructions.
// Usage: qdist_make_fixtures [output-dir]
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qdist/distinguish.hpp"
#include "qdist/fixtures.hpp"

namespace {

using qdist::Complex;
using qdist::ComplexMatrix;
using qdist::FixtureFile;
using qdist::FixtureOperation;
using qdist::FixtureState;

FixtureOperation unitary_op(ComplexMatrix u, double weight) {
    FixtureOperation op;
    op.type = "unitary";
    op.weight = weight;
    op.matrix = std::move(u);
    return op;
}

FixtureState pure_state(std::vector<Complex> v, double weight) {
    FixtureState st;
    st.type = "pure";
    st.weight = weight;
    st.vec = std::move(v);
    return st;
}

FixtureState density_state(ComplexMatrix m, double weight) {
    FixtureState st;
    st.type = "density";
    st.weight = weight;
    st.matrix = std::move(m);
    return st;
}

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix phase_unitary(double theta) {
    ComplexMatrix u(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = Complex(std::cos(theta), std::sin(theta));
    return u;
}

void write_file(const std::string& dir, const std::string& name, const FixtureFile& f) {
    const std::string path = dir + "/" + name + ".json";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << qdist::serialize_fixture(f);
    std::cout << path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "fixtures";
    const auto [ref_u, ref_v] = qdist::reference_su2_pair();

    {
        FixtureFile f;
        f.dimension = 2;
        f.comment =
            "Uniform triple of special unitaries: U1 = I; U2 = real rotation with "
            "cos(theta) = 1/sqrt(2); U3 = [[1/sqrt(3), sqrt(2/3) e^{-i a}], "
            "[-sqrt(2/3) e^{i a}, 1/sqrt(3)]] with cos(a) = sqrt(3)/4 - 1/sqrt(2), "
            "sin(a) >= 0. Pairwise overlaps |tr(Ui^dag Uj)|/2 are 1/sqrt(2), "
            "1/sqrt(3), 1/4: each exceeds its ex3_v counterpart, yet the triple is "
            "more distinguishable as a whole.";
        for (int i = 0; i < 3; ++i)
            f.operations.push_back(unitary_op(ref_u.unitaries[static_cast<size_t>(i)], ref_u.weights[i]));
        write_file(dir, "ex3_u", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment =
            "Uniform triple of special unitaries: V1 = I; V2 = real rotation with "
            "cos(theta) = 1/sqrt(2.1); V3 = [[1/sqrt(3.1), sqrt(2.1/3.1) e^{-i b}], "
            "[-sqrt(2.1/3.1) e^{i b}, 1/sqrt(3.1)]] with cos(b) = -1/sqrt(2.1*1.1), "
            "sin(b) >= 0. Pairwise overlaps |tr(Vi^dag Vj)|/2 are 1/sqrt(2.1), "
            "1/sqrt(3.1), 0: each lies below its ex3_u counterpart, yet the triple "
            "is less distinguishable as a whole.";
        for (int i = 0; i < 3; ++i)
            f.operations.push_back(unitary_op(ref_v.unitaries[static_cast<size_t>(i)], ref_v.weights[i]));
        write_file(dir, "ex3_v", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "The four Pauli unitaries with uniform weights; a maximally "
                    "entangled probe tells them apart perfectly (two bits).";
        ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
        x(0, 1) = 1.0;
        x(1, 0) = 1.0;
        y(0, 1) = Complex(0.0, -1.0);
        y(1, 0) = Complex(0.0, 1.0);
        z(0, 0) = 1.0;
        z(1, 1) = -1.0;
        f.operations.push_back(unitary_op(ComplexMatrix::identity(2), 0.25));
        f.operations.push_back(unitary_op(x, 0.25));
        f.operations.push_back(unitary_op(y, 0.25));
        f.operations.push_back(unitary_op(z, 0.25));
        write_file(dir, "pauli", f);
    }
    {
        FixtureFile f;
        f.dimension = 4;
        f.comment = "Single maximally entangled two-qubit state.";
        f.states.push_back(pure_state(qdist::PureState::max_entangled(2).amplitudes(), 1.0));
        write_file(dir, "bell_probe", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Uniform pair of computational basis states; the Holevo quantity is one bit.";
        f.states.push_back(pure_state({Complex(1.0, 0.0), Complex(0.0, 0.0)}, 0.5));
        f.states.push_back(pure_state({Complex(0.0, 0.0), Complex(1.0, 0.0)}, 0.5));
        write_file(dir, "basis_pair", f);
    }
    {
        const double r = 1.0 / std::sqrt(2.0);
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Two identical pure states; fidelity is exactly one.";
        f.states.push_back(pure_state({Complex(r, 0.0), Complex(r, 0.0)}, 0.5));
        f.states.push_back(pure_state({Complex(r, 0.0), Complex(r, 0.0)}, 0.5));
        write_file(dir, "identical_states", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Commuting diagonal mixed states; the fidelity reduces to sum_i sqrt(p_i q_i).";
        ComplexMatrix a(2, 2), b(2, 2);
        a(0, 0) = 0.5;
        a(1, 1) = 0.5;
        b(0, 0) = 0.8;
        b(1, 1) = 0.2;
        f.states.push_back(density_state(a, 0.5));
        f.states.push_back(density_state(b, 0.5));
        write_file(dir, "bhattacharyya_pair", f);
    }
    {
        const double r = 1.0 / std::sqrt(2.0);
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Uniform pair of |0> and |+>.";
        f.states.push_back(pure_state({Complex(1.0, 0.0), Complex(0.0, 0.0)}, 0.5));
        f.states.push_back(pure_state({Complex(r, 0.0), Complex(r, 0.0)}, 0.5));
        write_file(dir, "plus_zero", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Computational measure-and-reprepare channel next to the same "
                    "channel with a quarter-turn phase on the repreparation; both "
                    "entanglement breaking.";
        FixtureOperation e1;
        e1.type = "eb";
        e1.weight = 0.5;
        e1.eb.psis = {{Complex(1.0, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(1.0, 0.0)}};
        e1.eb.phis = e1.eb.psis;
        FixtureOperation e2 = e1;
        e2.eb.phis[1][1] = Complex(0.0, 1.0);
        f.operations.push_back(std::move(e1));
        f.operations.push_back(std::move(e2));
        write_file(dir, "eb_measure_reprepare", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Identity against sigma_z: eigenphase arc pi, separated in one use.";
        f.operations.push_back(unitary_op(ComplexMatrix::identity(2), 0.5));
        f.operations.push_back(unitary_op(phase_unitary(kPi), 0.5));
        write_file(dir, "pair_theta_pi", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Identity against diag(1, e^{i pi/2}): eigenphase arc pi/2, separated by two parallel uses.";
        f.operations.push_back(unitary_op(ComplexMatrix::identity(2), 0.5));
        f.operations.push_back(unitary_op(phase_unitary(kPi / 2.0), 0.5));
        write_file(dir, "pair_theta_half_pi", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        f.comment = "Identity against diag(1, e^{i pi/4}): eigenphase arc pi/4, separated by four parallel uses.";
        f.operations.push_back(unitary_op(ComplexMatrix::identity(2), 0.5));
        f.operations.push_back(unitary_op(phase_unitary(kPi / 4.0), 0.5));
        write_file(dir, "pair_theta_quarter_pi", f);
    }
    {
        FixtureFile f;
        f.dimension = 2;
        const double third = 1.0 / 3.0;
        f.comment = "Three phase unitaries; the two largest pairwise copy counts sum to eight.";
        f.operations.push_back(unitary_op(ComplexMatrix::identity(2), third));
        f.operations.push_back(unitary_op(phase_unitary(kPi / 2.0), third));
        f.operations.push_back(unitary_op(phase_unitary(kPi / 4.0), third));
        write_file(dir, "trio_copies_bound", f);
    }
    return 0;
}

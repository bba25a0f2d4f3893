#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qit/state.hpp"

namespace qit {
namespace gates {

/// A named unitary acting on `arity` sites of local dimension `local_dim`.
/// Matrix is row-major, basis index packed with gate-site 0 least
/// significant. NOTE: Y here is the real antisymmetric matrix
/// [[0,-1],[1,0]] (= -i sigma_y); the teleportation correction table and
/// the distillation twirl depend on this choice.
struct Gate {
    std::string name;
    int arity = 1;
    int local_dim = 2;
    std::vector<double> params;
    std::vector<cplx> matrix;

    std::size_t dim() const;
};

/// One circuit step: a gate bound to concrete sites. targets[i] carries
/// gate digit i (least significant first).
struct Step {
    Gate gate;
    std::vector<int> targets;
};

/// Ordered gate list over a fixed register width.
struct Circuit {
    int num_sites = 0;
    int local_dim = 2;
    std::vector<Step> steps;

    void add(Gate g, std::vector<int> targets);
    std::size_t size() const { return steps.size(); }
};

// -- gate library ------------------------------------------------------

/// Fixed-matrix gates: "I", "X", "Y", "Z", "H", "SQRT_NOT", "CNOT",
/// "SWAP", "SQRT_SWAP", "TOFFOLI", "FREDKIN".
/// Parametric gates (params = {angle}): "CPH", "RX", "RY", "RZ", "PH"
/// (global phase), "E" (diag(1, e^{i a})), "S" (i e^{-i a sigma_x / 2}),
/// "D" (Deutsch gate, controlled-controlled-S).
Gate standard_gate(const std::string& name, const std::vector<double>& params = {});

/// d-dimensional Fourier gate (reduces to H for d = 2) and d-dimensional
/// controlled phase diag over |ab>: exp(i theta a b).
Gate fourier_gate(int d);
Gate controlled_phase_d(int d, double theta);
Gate swap_gate_d(int d);

Gate adjoint(const Gate& g);

// -- decomposition -----------------------------------------------------

/// U = Ph(delta) Rz(alpha) Ry(beta) Rz(gamma); branch cuts
/// alpha, gamma in (-2pi, 2pi], beta in [0, pi].
struct EulerDecomposition {
    double delta, alpha, beta, gamma;
};

EulerDecomposition euler_decompose(const std::vector<cplx>& u);
std::vector<cplx> euler_reconstruct(const EulerDecomposition& e);

/// For Ubar in SU(2), factors with U1 U2 U3 = 1 and
/// U1 sigma_x U2 sigma_x U3 = Ubar.
struct AbcFactors {
    std::vector<cplx> u1, u2, u3;
};

AbcFactors abc_factors(const std::vector<cplx>& u_bar);

/// Exact synthesis of an (n+1)-site controlled-U (n controls, 2x2 U) over
/// {1-qubit gates, CNOT}. Sites 0..n-1 are the controls, site n the target.
Circuit synthesize_controlled_u(const std::vector<cplx>& u, int num_controls);

/// Gate count the synthesis recursion produces, computed without building
/// the circuit; synthesize_controlled_u(...).size() matches this exactly.
std::uint64_t controlled_u_gate_count(int num_controls);
std::uint64_t cnx_gate_count(int num_controls);

/// Dense (n+1)-qubit controlled-U matrix, the comparison oracle for the
/// synthesized circuit.
std::vector<cplx> dense_controlled_u(const std::vector<cplx>& u, int num_controls);

// -- QFT ---------------------------------------------------------------

/// Fourier-transform circuit on K qudits of dimension d: K Fourier gates,
/// K(K-1)/2 controlled phases with theta_j = 2 pi / d^{j+1}, and floor(K/2)
/// closing swaps (the output reversion is done with explicit SWAP gates).
Circuit qft_circuit(int K, int d = 2);

// -- execution ---------------------------------------------------------

/// Product of the lifted step matrices, last step leftmost. Dimension
/// capped (default 2^14).
std::vector<cplx> circuit_unitary(const Circuit& c, std::uint64_t dim_cap = 1ull << 14);

/// Apply the circuit to a state. `site_offset` shifts every target, so a
/// K-site circuit can run on a window of a wider register.
StateVector run(const Circuit& c, const StateVector& s, int site_offset = 0);

/// Frobenius distance min over a global phase; used for equality checks
/// of synthesized circuits against dense oracles.
double phase_aligned_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

// 2x2 helpers shared with the hardware models.
std::vector<cplx> mat_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t n);
std::vector<cplx> mat_sqrt_2x2_unitary(const std::vector<cplx>& u);

// -- JSON --------------------------------------------------------------

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace gates
}  // namespace qit

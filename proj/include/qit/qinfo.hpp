#pragma once

#include <string>
#include <vector>

#include "qit/density.hpp"
#include "qit/state.hpp"

namespace qit {
namespace qinfo {

/// Biorthonormal form |Psi> = sum_k sqrt(w_k) |u_k>|v_k> with weights
/// descending and positive.
struct SchmidtForm {
    std::vector<double> weights;              // sum to 1
    std::vector<std::vector<cplx>> left_basis;   // length-dA vectors
    std::vector<std::vector<cplx>> right_basis;  // length-dB vectors
    int rank = 0;
};

/// Schmidt decomposition of a bipartite pure state (subsystem A on the
/// high-significance side, matching tensor()).
SchmidtForm schmidt(const StateVector& psi, int dA, int dB);
std::vector<double> schmidt_weights(const StateVector& psi, int dA, int dB);

/// S(rho) = -tr(rho log2 rho) in bits. Eigenvalues in [-1e-8, 0) are
/// clipped to zero; anything below fails validation.
double von_neumann_entropy(const DensityMatrix& rho);
double entanglement_entropy(const StateVector& psi, int dA, int dB);

/// Ensemble {(p_i, rho_i)} for the Holevo bound.
struct Ensemble {
    std::vector<double> probabilities;
    std::vector<DensityMatrix> members;

    DensityMatrix average() const;
    bool is_valid(double tol = kAlgebraTol) const;
};

/// chi = S(rho_avg) - sum_i p_i S(rho_i)
double holevo_chi(const Ensemble& e);

/// True when x is majorized by y (x "more mixed"): partial sums of the
/// descending rearrangement of x never exceed y's and totals agree.
/// Shorter vectors are zero-padded.
bool majorizes(std::vector<double> x, std::vector<double> y, double tol = 1e-12);

/// psi -> phi reachable under LOCC iff schmidt weights of psi are
/// majorized by those of phi.
bool locc_convertible(const StateVector& psi, const StateVector& phi, int dA, int dB);

/// Positivity of every single-subsystem partial transpose.
bool peres_is_ppt(const DensityMatrix& rho, const std::vector<int>& dims);
/// Separability verdict; only 2x2 and 2x3 systems admit the converse.
bool is_separable_ppt(const DensityMatrix& rho, const std::vector<int>& dims);

// -- standard states ----------------------------------------------------

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

StateVector bell(BellKind kind);
StateVector ghz();

/// F |Psi-><Psi-| + (1-F)/3 (rest of the Bell projectors).
struct WernerState {
    double F = 1.0;
    DensityMatrix rho;
};

WernerState werner(double F);

// -- distillation ---------------------------------------------------------

enum class DistillMode { Analytic, Simulate };

struct DistillRound {
    double f_out = 0;
    double success_probability = 0;
};

/// One purification round on two shared Werner pairs of fidelity f_in >
/// 1/2. Analytic mode evaluates the fidelity map; simulate mode runs the
/// 16x16 two-pair protocol (twirl, bilateral CNOT, target measurement with
/// postselection, back-twirl, Werner replacement) and must agree to 1e-10.
DistillRound bbpssw_round(double f_in, DistillMode mode, Rng& rng);

/// Iterate the analytic map until fidelity >= target; returns per-round
/// fidelities starting at f_in.
std::vector<double> bbpssw_iterate(double f_in, double target, int max_rounds = 1000);

}  // namespace qinfo
}  // namespace qit

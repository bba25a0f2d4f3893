#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qit/state.hpp"

namespace qit {
namespace hw {

// -- Rabi pulses -----------------------------------------------------------

/// Rotating-field parameters (angular frequencies).
struct RabiField {
    double omega0 = 0;  // -gamma B0
    double omega1 = 0;  // -gamma B1
    double omega = 0;   // drive frequency

    double rabi_frequency() const;  // sqrt((omega0-omega)^2 + omega1^2)
    bool resonant(double tol = 1e-12) const;
};

/// Closed-form propagator of the rotating-field problem.
std::vector<cplx> rabi_propagator(const RabiField& f, double t);
double spin_flip_prob(const RabiField& f, double t);

// -- Ising two-spin model ----------------------------------------------------

struct IsingPair {
    double omega1 = 0, omega2 = 0;  // Zeeman frequencies (hbar = 1)
    double J = 0;                   // scalar coupling
};

/// E_{x1 x2} = ((-1)^{x1} w1 + (-1)^{x2} w2 + (-1)^{x1+x2} J) / 2,
/// indexed |x1 x2> = (00, 01, 10, 11).
std::array<double, 4> ising_levels(const IsingPair& p);

/// In the regime w1 < w2 < -J < 0, the |11> <-> |10> line sits alone at
/// |w2| + J; true when the four single-flip transition frequencies are
/// pairwise distinct so that a selective pi-pulse acts as a CNOT.
bool ising_cnot_check(const IsingPair& p, double tol = 1e-9);
std::array<double, 4> ising_transition_frequencies(const IsingPair& p);

/// exp(-i phi/2 [-1/2 + S1z + S2z - 2 S1z S2z]) = diag(1, 1, 1, e^{i phi}).
std::vector<cplx> ising_cphase(double phi);

// -- ion trap ------------------------------------------------------------------

/// Laser pulse on one ion of a register. Electronic space is a qutrit
/// {|0>, |1>, |2>} (|2> auxiliary); a single shared phonon mode is kept in
/// {|g>, |e>}. eta is recorded bookkeeping, not dynamics.
struct IonPulse {
    enum class Kind { V, U1, U2 };
    Kind kind = Kind::V;
    double angle = 0;  // theta for V, kappa for U
    double phase = 0;
    int ion = 0;
    double eta = 0.1;
};

/// Full unitary of the pulse on (C^3)^{num_ions} x C^2, phonon site least
/// significant; ion i occupies qutrit digit i of the electronic index.
std::vector<cplx> ion_pulse_unitary(const IonPulse& p, int num_ions);

struct IonTrapResult {
    std::vector<cplx> unitary;        // restricted to computational x |g>
    double max_leakage = 0;           // worst population left on |2> / |e>
};

/// U1^(i)(pi,0) U2^(j)(2pi,0) U1^(i)(pi,0): a pi controlled-phase on the
/// computational sector. Throws if leakage exceeds 1e-10.
IonTrapResult cz_cphase(int i, int j, int num_ions = 2);
/// The same sandwiched by pseudo-Hadamard V-pulses on the target: CNOT.
IonTrapResult cz_cnot(int i, int j, int num_ions = 2);

// -- NMR product operators ------------------------------------------------------

/// Deviation density matrix of a 2-spin ensemble expanded over tensor
/// products of {1, Sx, Sy, Sz} per spin (S = sigma/2). Keys name the
/// basis term: "z." means S1z, ".x" means S2x, "zz" means 2 S1z S2z, and
/// "1" the identity; coefficients follow the spectroscopists' convention
/// where each listed product term carries that 2^(k-1) normalization.
class ProductOperatorState {
  public:
    ProductOperatorState() = default;
    static ProductOperatorState thermal();  // S1z + S2z

    double coefficient(const std::string& term) const;
    void set(const std::string& term, double value);
    std::map<std::string, double> terms(double tol = 1e-12) const;

    /// 4x4 matrix realization (Hermitian by construction).
    std::vector<cplx> matrix() const;
    static ProductOperatorState from_matrix(const std::vector<cplx>& m);

    bool approx_equal(const ProductOperatorState& other, double tol = 1e-10) const;

  private:
    std::map<std::string, double> coeff_;
};

/// Pulse vocabulary: [phi]_i^x, [phi]_i^y, [phi]_i^z (chemical shift),
/// [phi]_12^J (scalar coupling), [grad]^z.
struct NmrPulse {
    enum class Kind { RotX, RotY, RotZ, Scalar, Gradient };
    Kind kind = Kind::RotX;
    double angle = 0;
    int spin = 1;  // 1 or 2; ignored for Scalar/Gradient
};

/// Apply one pulse. Unitary pulses conjugate the 4x4 deviation matrix;
/// the gradient zeroes every product term containing a transverse
/// single-spin factor.
ProductOperatorState nmr_pulse(const NmrPulse& pulse, const ProductOperatorState& state);

/// 4x4 propagator of a unitary pulse (gradient excluded).
std::vector<cplx> nmr_pulse_propagator(const NmrPulse& pulse);

/// Published pulse sequences; each returns every intermediate state,
/// initial state first.
std::vector<ProductOperatorState> nmr_prepare_pseudo_pure();
std::vector<ProductOperatorState> nmr_bell_sequence();
/// The CNOT sequence's pulses in application order.
std::vector<NmrPulse> nmr_cnot_sequence();

// -- Kane donor pairs ---------------------------------------------------------

/// Energies in frequency units (divide by h); B in tesla.
struct KaneParams {
    double A = 0;            // contact hyperfine energy
    double J = 0;            // electron exchange energy
    double gamma_e_bar = 0;  // electron moment energy per tesla (negative)
    double gamma_n_bar = 0;  // nuclear moment energy per tesla
    double B = 0;

    /// 31P:Si at the published operating point: A/2h = 58 MHz,
    /// g_e = 2, g_n = 2.26.
    static KaneParams phosphorus_silicon(double B, double J);
};

/// hbar omega_A = gamma_n B + A/2 - A^2 / (4 gamma_e B).
double kane_splitting(const KaneParams& p);
/// Exchange coupling of hydrogen-like donors at separation r (angstroms),
/// in eV: 1.6 e^2/(eps aB) (r/aB)^{5/2} exp(-2r/aB).
double kane_exchange(double r_angstrom, double bohr_radius_angstrom = 30.0,
                     double epsilon = 11.7);
/// Eigenvalues of the S_tot^z = -1 sector Hamiltonian (ascending).
std::array<double, 4> kane_sector_levels(const KaneParams& p);
/// Exact splitting E_{s,-} - E_{a,-} from the closed forms.
double kane_omega_j_exact(const KaneParams& p);
/// Perturbative splitting A^2/4 (1/(|ge|B - J) - 1/(|ge|B)); requires
/// A << |ge|B and J < |ge|B.
double kane_omega_j_perturbative(const KaneParams& p);

}  // namespace hw
}  // namespace qit

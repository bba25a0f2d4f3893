#include "qit/qinfo.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qit/gates.hpp"

namespace qit {
namespace qinfo {

namespace {

double entropy_bits(const std::vector<double>& eigenvalues) {
    double s = 0;
    for (double lam : eigenvalues) {
        if (lam < -kPsdTol)
            throw std::invalid_argument("density matrix has a negative eigenvalue beyond -1e-8");
        if (lam <= 0) continue;  // clip [-1e-8, 0) to zero; 0 log 0 := 0
        s -= lam * std::log2(lam);
    }
    return s;
}

}  // namespace

SchmidtForm schmidt(const StateVector& psi, int dA, int dB) {
    if (static_cast<std::uint64_t>(dA) * dB != psi.dim())
        throw std::invalid_argument("schmidt: dA * dB != state dimension");
    Matrix c(dA, dB);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j) c(i, j) = psi[static_cast<std::uint64_t>(i) * dB + j];

    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();

    SchmidtForm out;
    for (int k = 0; k < sv.size(); ++k) {
        const double w = sv(k) * sv(k);
        if (w < 1e-12) continue;
        out.weights.push_back(w);
        std::vector<cplx> u(dA), v(dB);
        for (int i = 0; i < dA; ++i) u[i] = svd.matrixU()(i, k);
        for (int j = 0; j < dB; ++j) v[j] = std::conj(svd.matrixV()(j, k));
        out.left_basis.push_back(std::move(u));
        out.right_basis.push_back(std::move(v));
    }
    out.rank = static_cast<int>(out.weights.size());
    return out;
}

std::vector<double> schmidt_weights(const StateVector& psi, int dA, int dB) {
    return schmidt(psi, dA, dB).weights;
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_bits(rho.eigenvalues()); }

double entanglement_entropy(const StateVector& psi, int dA, int dB) {
    return entropy_bits(schmidt_weights(psi, dA, dB));
}

DensityMatrix Ensemble::average() const {
    if (members.empty()) throw std::invalid_argument("ensemble is empty");
    Matrix m = Matrix::Zero(members[0].dim(), members[0].dim());
    for (std::size_t i = 0; i < members.size(); ++i) m += probabilities[i] * members[i].matrix();
    return DensityMatrix(std::move(m));
}

bool Ensemble::is_valid(double tol) const {
    if (probabilities.size() != members.size() || members.empty()) return false;
    double total = 0;
    for (double p : probabilities) {
        if (p < -tol) return false;
        total += p;
    }
    if (std::abs(total - 1.0) > tol) return false;
    for (const auto& m : members)
        if (!m.is_valid()) return false;
    return true;
}

double holevo_chi(const Ensemble& e) {
    if (!e.is_valid()) throw std::invalid_argument("holevo_chi: invalid ensemble");
    double chi = von_neumann_entropy(e.average());
    for (std::size_t i = 0; i < e.members.size(); ++i)
        chi -= e.probabilities[i] * von_neumann_entropy(e.members[i]);
    return chi;
}

bool majorizes(std::vector<double> x, std::vector<double> y, double tol) {
    const std::size_t n = std::max(x.size(), y.size());
    x.resize(n, 0.0);
    y.resize(n, 0.0);
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sx += x[k];
        sy += y[k];
        if (k + 1 < n && sx > sy + tol) return false;
    }
    return std::abs(sx - sy) <= tol;
}

bool locc_convertible(const StateVector& psi, const StateVector& phi, int dA, int dB) {
    return majorizes(schmidt_weights(psi, dA, dB), schmidt_weights(phi, dA, dB));
}

bool peres_is_ppt(const DensityMatrix& rho, const std::vector<int>& dims) {
    for (int j = 0; j < static_cast<int>(dims.size()); ++j) {
        const Matrix pt = partial_transpose(rho.matrix(), dims, j);
        Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kPsdTol) return false;
    }
    return true;
}

bool is_separable_ppt(const DensityMatrix& rho, const std::vector<int>& dims) {
    std::vector<int> sorted = dims;
    std::sort(sorted.begin(), sorted.end());
    const bool covered = (sorted == std::vector<int>{2, 2}) || (sorted == std::vector<int>{2, 3});
    if (!covered)
        throw std::invalid_argument(
            "PPT decides separability only for 2x2 and 2x3 systems; use peres_is_ppt");
    return peres_is_ppt(rho, dims);
}

StateVector bell(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> a(4, cplx(0, 0));
    switch (kind) {
        case BellKind::PhiPlus:  a[0] = s; a[3] = s;  break;
        case BellKind::PhiMinus: a[0] = s; a[3] = -s; break;
        case BellKind::PsiPlus:  a[1] = s; a[2] = s;  break;
        case BellKind::PsiMinus: a[1] = s; a[2] = -s; break;
    }
    return StateVector(2, 2, std::move(a));
}

StateVector ghz() {
    std::vector<cplx> a(8, cplx(0, 0));
    a[0] = a[7] = 1.0 / std::sqrt(2.0);
    return StateVector(2, 3, std::move(a));
}

WernerState werner(double F) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("werner: F must lie in [0, 1]");
    auto proj = [](BellKind k) { return DensityMatrix::from_state(bell(k)).matrix(); };
    Matrix m = F * proj(BellKind::PsiMinus) +
               (1.0 - F) / 3.0 *
                   (proj(BellKind::PsiPlus) + proj(BellKind::PhiPlus) + proj(BellKind::PhiMinus));
    return WernerState{F, DensityMatrix(std::move(m))};
}

// ---------------------------------------------------------------------
// BBPSSW entanglement distillation

namespace {

double fidelity_map(double f) {
    const double num = f * f + (1.0 - f) * (1.0 - f) / 9.0;
    const double den = f * f + 2.0 / 3.0 * f * (1.0 - f) + 5.0 / 9.0 * (1.0 - f) * (1.0 - f);
    return num / den;
}

double success_probability(double f) {
    return f * f + 2.0 / 3.0 * f * (1.0 - f) + 5.0 / 9.0 * (1.0 - f) * (1.0 - f);
}

Eigen::MatrixXcd circuit_matrix(const gates::Circuit& c) {
    const auto v = gates::circuit_unitary(c);
    const auto dim = static_cast<Eigen::Index>(std::sqrt(static_cast<double>(v.size())) + 0.5);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
    return m;
}

DistillRound simulate_round(double f_in) {
    // Sites (high to low): A1=3, B1=2, A2=1, B2=0. Pair 1 is the source,
    // pair 2 the target.
    const Matrix w = werner(f_in).rho.matrix();
    Matrix rho = Matrix::Zero(16, 16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) rho(i * 4 + k, j * 4 + l) = w(i, j) * w(k, l);

    gates::Circuit twirl;
    twirl.num_sites = 4;
    twirl.add(gates::standard_gate("Y"), {3});
    twirl.add(gates::standard_gate("Y"), {1});
    const Eigen::MatrixXcd u_twirl = circuit_matrix(twirl);
    rho = u_twirl * rho * u_twirl.adjoint();

    gates::Circuit bcnot;
    bcnot.num_sites = 4;
    bcnot.add(gates::standard_gate("CNOT"), {1, 3});  // Alice: A1 controls A2
    bcnot.add(gates::standard_gate("CNOT"), {0, 2});  // Bob:   B1 controls B2
    const Eigen::MatrixXcd u_bcnot = circuit_matrix(bcnot);
    rho = u_bcnot * rho * u_bcnot.adjoint();

    // Measure the target pair (sites 1, 0); keep the agreeing branches.
    Matrix kept = Matrix::Zero(4, 4);  // source pair (A1, B1)
    double p_agree = 0;
    for (int outcome : {0, 3}) {  // |00> and |11> on (A2, B2)
        Matrix branch = Matrix::Zero(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) branch(i, j) = rho(i * 4 + outcome, j * 4 + outcome);
        p_agree += branch.trace().real();
        kept += branch;
    }
    kept /= p_agree;

    // Undo the twirl on the surviving source pair and Werner-ize. The
    // depolarization step is realized as the Bell-diagonal -> Werner
    // replacement that preserves singlet fidelity.
    gates::Circuit untwirl;
    untwirl.num_sites = 2;
    untwirl.add(gates::standard_gate("Y"), {1});
    const Eigen::MatrixXcd u_back = circuit_matrix(untwirl);
    kept = u_back * kept * u_back.adjoint();

    const double f_out = fidelity_to_pure(DensityMatrix(kept), bell(BellKind::PsiMinus));
    return DistillRound{f_out, p_agree};
}

}  // namespace

DistillRound bbpssw_round(double f_in, DistillMode mode, Rng&) {
    if (!(f_in > 0.5) || f_in > 1.0)
        throw std::invalid_argument("bbpssw_round: map purifies only for F in (1/2, 1]");
    if (mode == DistillMode::Analytic)
        return DistillRound{fidelity_map(f_in), success_probability(f_in)};
    return simulate_round(f_in);
}

std::vector<double> bbpssw_iterate(double f_in, double target, int max_rounds) {
    if (!(f_in > 0.5)) throw std::invalid_argument("bbpssw_iterate: need F > 1/2");
    std::vector<double> traj{f_in};
    double f = f_in;
    for (int i = 0; i < max_rounds && f < target; ++i) {
        f = fidelity_map(f);
        traj.push_back(f);
    }
    return traj;
}

}  // namespace qinfo
}  // namespace qit

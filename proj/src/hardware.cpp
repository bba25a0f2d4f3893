#include "qit/hardware.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qit/gates.hpp"

namespace qit {
namespace hw {

namespace {

using std::numbers::pi;
const cplx I_(0.0, 1.0);

std::vector<cplx> kron(const std::vector<cplx>& a, std::size_t na, const std::vector<cplx>& b,
                       std::size_t nb) {
    std::vector<cplx> out(na * nb * na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out[(i * nb + k) * na * nb + (j * nb + l)] = a[i * na + j] * b[k * nb + l];
    return out;
}

const std::vector<cplx> kId2{1, 0, 0, 1};
const std::vector<cplx> kSx{0, 0.5, 0.5, 0};
const std::vector<cplx> kSy{0, -0.5 * I_, 0.5 * I_, 0};
const std::vector<cplx> kSz{0.5, 0, 0, -0.5};

}  // namespace

// ---------------------------------------------------------------------
// Rabi

double RabiField::rabi_frequency() const {
    return std::hypot(omega0 - omega, omega1);
}

bool RabiField::resonant(double tol) const { return std::abs(omega - omega0) <= tol; }

std::vector<cplx> rabi_propagator(const RabiField& f, double t) {
    if (t < 0) throw std::invalid_argument("rabi_propagator: t >= 0");
    const double cap_omega = f.rabi_frequency();
    // First factor: rotation about z at the drive frequency.
    const cplx c1 = std::cos(f.omega * t / 2), s1 = std::sin(f.omega * t / 2);
    std::vector<cplx> first{c1 - I_ * s1, 0, 0, c1 + I_ * s1};

    std::vector<cplx> second{1, 0, 0, 1};
    if (cap_omega > 0) {
        const double nz = (f.omega0 - f.omega) / cap_omega;
        const double nx = f.omega1 / cap_omega;
        const double c2 = std::cos(cap_omega * t / 2), s2 = std::sin(cap_omega * t / 2);
        second = {c2 - I_ * s2 * nz, -I_ * s2 * nx, -I_ * s2 * nx, c2 + I_ * s2 * nz};
    }
    return gates::mat_mul(first, second, 2);
}

double spin_flip_prob(const RabiField& f, double t) {
    const auto u = rabi_propagator(f, t);
    return std::norm(u[2]);  // |<1|U|0>|^2
}

// ---------------------------------------------------------------------
// Ising pair

std::array<double, 4> ising_levels(const IsingPair& p) {
    std::array<double, 4> e{};
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            e[x1 * 2 + x2] = 0.5 * ((x1 ? -1 : 1) * p.omega1 + (x2 ? -1 : 1) * p.omega2 +
                                    ((x1 + x2) % 2 ? -1 : 1) * p.J);
    return e;
}

std::array<double, 4> ising_transition_frequencies(const IsingPair& p) {
    const auto e = ising_levels(p);
    // Single-spin flips: |00>-|01>, |10>-|11> (second spin), |00>-|10>,
    // |01>-|11> (first spin).
    return {std::abs(e[0] - e[1]), std::abs(e[2] - e[3]), std::abs(e[0] - e[2]),
            std::abs(e[1] - e[3])};
}

bool ising_cnot_check(const IsingPair& p, double tol) {
    if (!(p.omega1 < p.omega2 && p.omega2 < -p.J && p.J > 0)) return false;
    const auto f = ising_transition_frequencies(p);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(f[i] - f[j]) <= tol) return false;
    // The addressed line |11> <-> |10> must sit at |omega2| + J.
    return std::abs(f[1] - (std::abs(p.omega2) + p.J)) <= tol;
}

std::vector<cplx> ising_cphase(double phi) {
    std::vector<cplx> m(16, cplx(0, 0));
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            const double s1 = x1 ? -0.5 : 0.5, s2 = x2 ? -0.5 : 0.5;
            const double gen = -0.5 + s1 + s2 - 2 * s1 * s2;
            m[(x1 * 2 + x2) * 4 + (x1 * 2 + x2)] = std::exp(-I_ * (phi / 2) * gen);
        }
    return m;
}

// ---------------------------------------------------------------------
// Ion trap

namespace {

std::uint64_t pow3(int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

int trit(std::uint64_t e, int ion) { return static_cast<int>(e / pow3(ion) % 3); }

}  // namespace

std::vector<cplx> ion_pulse_unitary(const IonPulse& p, int num_ions) {
    if (p.ion < 0 || p.ion >= num_ions) throw std::invalid_argument("pulse ion out of range");
    const std::uint64_t e_dim = pow3(num_ions);
    const std::uint64_t dim = e_dim * 2;  // phonon least significant
    std::vector<cplx> u(dim * dim, cplx(0, 0));
    for (std::uint64_t i = 0; i < dim; ++i) u[i * dim + i] = 1.0;

    const double c = std::cos(p.angle / 2), s = std::sin(p.angle / 2);
    const cplx down = -I_ * std::exp(-I_ * p.phase) * s;  // amplitude into the lower-energy slot
    const cplx up = -I_ * std::exp(I_ * p.phase) * s;

    if (p.kind == IonPulse::Kind::V) {
        // |0> <-> |1> on the addressed ion, phonon untouched.
        for (std::uint64_t e = 0; e < e_dim; ++e) {
            if (trit(e, p.ion) != 0) continue;
            const std::uint64_t e1 = e + pow3(p.ion);
            for (std::uint64_t ph = 0; ph < 2; ++ph) {
                const std::uint64_t a = e * 2 + ph, b = e1 * 2 + ph;
                u[a * dim + a] = c;
                u[b * dim + a] = down;
                u[b * dim + b] = c;
                u[a * dim + b] = up;
            }
        }
        return u;
    }

    // U-pulse: |0>|e> <-> |xhat>|g> on the addressed ion.
    const int xhat = p.kind == IonPulse::Kind::U1 ? 1 : 2;
    for (std::uint64_t e = 0; e < e_dim; ++e) {
        if (trit(e, p.ion) != 0) continue;
        const std::uint64_t a = e * 2 + 1;                                  // |0>|e>
        const std::uint64_t b = (e + xhat * pow3(p.ion)) * 2;               // |xhat>|g>
        u[a * dim + a] = c;
        u[b * dim + a] = down;
        u[b * dim + b] = c;
        u[a * dim + b] = up;
    }
    return u;
}

namespace {

IonTrapResult restrict_to_computational(const std::vector<cplx>& full, int i, int j,
                                        int num_ions) {
    const std::uint64_t dim = pow3(num_ions) * 2;
    IonTrapResult out;
    out.unitary.assign(16, cplx(0, 0));
    for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj) {
            const std::uint64_t col =
                (static_cast<std::uint64_t>(ci) * pow3(i) + static_cast<std::uint64_t>(cj) * pow3(j)) * 2;
            double inside = 0;
            for (int ri = 0; ri < 2; ++ri)
                for (int rj = 0; rj < 2; ++rj) {
                    const std::uint64_t row = (static_cast<std::uint64_t>(ri) * pow3(i) +
                                               static_cast<std::uint64_t>(rj) * pow3(j)) * 2;
                    const cplx v = full[row * dim + col];
                    out.unitary[(ri * 2 + rj) * 4 + (ci * 2 + cj)] = v;
                    inside += std::norm(v);
                }
            out.max_leakage = std::max(out.max_leakage, 1.0 - inside);
        }
    if (out.max_leakage > 1e-10)
        throw std::runtime_error("ion-trap gate leaks into |2> or the phonon mode");
    return out;
}

}  // namespace

IonTrapResult cz_cphase(int i, int j, int num_ions) {
    if (i == j) throw std::invalid_argument("cz_cphase: distinct ions required");
    const auto u1a = ion_pulse_unitary({IonPulse::Kind::U1, pi, 0, i}, num_ions);
    const auto u2 = ion_pulse_unitary({IonPulse::Kind::U2, 2 * pi, 0, j}, num_ions);
    const std::uint64_t dim = pow3(num_ions) * 2;
    auto total = gates::mat_mul(u1a, gates::mat_mul(u2, u1a, dim), dim);
    return restrict_to_computational(total, i, j, num_ions);
}

IonTrapResult cz_cnot(int i, int j, int num_ions) {
    // Pseudo-Hadamard flanks: opening V(pi/2, pi/2), closing V(pi/2,
    // -pi/2) (its inverse), which lands exactly on CNOT rather than CNOT
    // up to local phases.
    const auto v_open = ion_pulse_unitary({IonPulse::Kind::V, pi / 2, pi / 2, j}, num_ions);
    const auto v_close = ion_pulse_unitary({IonPulse::Kind::V, pi / 2, -pi / 2, j}, num_ions);
    const auto u1a = ion_pulse_unitary({IonPulse::Kind::U1, pi, 0, i}, num_ions);
    const auto u2 = ion_pulse_unitary({IonPulse::Kind::U2, 2 * pi, 0, j}, num_ions);
    const std::uint64_t dim = pow3(num_ions) * 2;
    auto cph = gates::mat_mul(u1a, gates::mat_mul(u2, u1a, dim), dim);
    auto total = gates::mat_mul(v_close, gates::mat_mul(cph, v_open, dim), dim);
    return restrict_to_computational(total, i, j, num_ions);
}

// ---------------------------------------------------------------------
// NMR product operators

namespace {

std::string normalize_term(std::string term) {
    if (term == "1") return "..";
    if (term.size() != 2) throw std::invalid_argument("term must name two spin factors");
    for (char c : term)
        if (c != '.' && c != 'x' && c != 'y' && c != 'z')
            throw std::invalid_argument("term characters must be '.', 'x', 'y' or 'z'");
    return term;
}

const std::vector<cplx>& spin_factor(char c) {
    switch (c) {
        case 'x': return kSx;
        case 'y': return kSy;
        case 'z': return kSz;
        default: return kId2;
    }
}

std::vector<cplx> term_matrix(const std::string& term) {
    auto m = kron(spin_factor(term[0]), 2, spin_factor(term[1]), 2);
    // Two-spin products carry the conventional factor 2; identity keeps 1.
    if (term[0] != '.' && term[1] != '.')
        for (auto& v : m) v *= 2.0;
    return m;
}

}  // namespace

ProductOperatorState ProductOperatorState::thermal() {
    ProductOperatorState s;
    s.set("z.", 1.0);
    s.set(".z", 1.0);
    return s;
}

double ProductOperatorState::coefficient(const std::string& term) const {
    const auto it = coeff_.find(normalize_term(term));
    return it == coeff_.end() ? 0.0 : it->second;
}

void ProductOperatorState::set(const std::string& term, double value) {
    coeff_[normalize_term(term)] = value;
}

std::map<std::string, double> ProductOperatorState::terms(double tol) const {
    std::map<std::string, double> out;
    for (const auto& [k, v] : coeff_)
        if (std::abs(v) > tol) out.emplace(k, v);
    return out;
}

std::vector<cplx> ProductOperatorState::matrix() const {
    std::vector<cplx> m(16, cplx(0, 0));
    for (const auto& [term, c] : coeff_) {
        const auto tm = term_matrix(term);
        for (int i = 0; i < 16; ++i) m[i] += c * tm[i];
    }
    return m;
}

ProductOperatorState ProductOperatorState::from_matrix(const std::vector<cplx>& m) {
    if (m.size() != 16) throw std::invalid_argument("deviation matrix must be 4x4");
    ProductOperatorState out;
    static const char kLetters[4] = {'.', 'x', 'y', 'z'};
    for (char a : kLetters)
        for (char b : kLetters) {
            const std::string term{a, b};
            const auto tm = term_matrix(term);
            // Basis operators are trace-orthogonal; norms: tr(1*1) = 4,
            // single-spin terms 1, double terms 1.
            cplx overlap(0, 0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) overlap += std::conj(tm[j * 4 + i]) * m[j * 4 + i];
            const double norm = (term == "..") ? 4.0 : 1.0;
            const double c = overlap.real() / norm;
            if (std::abs(c) > 1e-13) out.set(term, c);
        }
    return out;
}

bool ProductOperatorState::approx_equal(const ProductOperatorState& other, double tol) const {
    static const char kLetters[4] = {'.', 'x', 'y', 'z'};
    for (char a : kLetters)
        for (char b : kLetters) {
            const std::string term{a, b};
            if (std::abs(coefficient(term) - other.coefficient(term)) > tol) return false;
        }
    return true;
}

std::vector<cplx> nmr_pulse_propagator(const NmrPulse& pulse) {
    using gates::standard_gate;
    if (pulse.kind == NmrPulse::Kind::Gradient)
        throw std::invalid_argument("gradient pulse has no unitary propagator");
    if (pulse.kind == NmrPulse::Kind::Scalar) {
        // exp(-i 2 phi S1z S2z): diagonal phases e^{-i phi/2 (-1)^(x1+x2)}.
        std::vector<cplx> m(16, cplx(0, 0));
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2) {
                const double sign = (x1 + x2) % 2 ? -1.0 : 1.0;
                m[(x1 * 2 + x2) * 4 + (x1 * 2 + x2)] = std::exp(-I_ * (pulse.angle / 2) * sign);
            }
        return m;
    }
    const char* name = pulse.kind == NmrPulse::Kind::RotX   ? "RX"
                       : pulse.kind == NmrPulse::Kind::RotY ? "RY"
                                                            : "RZ";
    const auto u = standard_gate(name, {pulse.angle}).matrix;
    if (pulse.spin == 1) return kron(u, 2, kId2, 2);
    if (pulse.spin == 2) return kron(kId2, 2, u, 2);
    throw std::invalid_argument("pulse spin must be 1 or 2");
}

ProductOperatorState nmr_pulse(const NmrPulse& pulse, const ProductOperatorState& state) {
    if (pulse.kind == NmrPulse::Kind::Gradient) {
        ProductOperatorState out;
        for (const auto& [term, c] : state.terms(0.0)) {
            const bool transverse = term.find('x') != std::string::npos ||
                                    term.find('y') != std::string::npos;
            if (!transverse) out.set(term, c);
        }
        return out;
    }
    const auto u = nmr_pulse_propagator(pulse);
    const auto rho = state.matrix();
    // U rho U+
    std::vector<cplx> tmp = gates::mat_mul(u, rho, 4);
    std::vector<cplx> udag(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) udag[j * 4 + i] = std::conj(u[i * 4 + j]);
    return ProductOperatorState::from_matrix(gates::mat_mul(tmp, udag, 4));
}

std::vector<ProductOperatorState> nmr_prepare_pseudo_pure() {
    const std::vector<NmrPulse> pulses{
        {NmrPulse::Kind::RotX, pi / 3, 2},  {NmrPulse::Kind::Gradient, 0, 0},
        {NmrPulse::Kind::RotX, pi / 4, 1},  {NmrPulse::Kind::Scalar, pi / 2, 0},
        {NmrPulse::Kind::RotY, -pi / 4, 1}, {NmrPulse::Kind::Gradient, 0, 0},
    };
    std::vector<ProductOperatorState> states{ProductOperatorState::thermal()};
    for (const auto& p : pulses) states.push_back(nmr_pulse(p, states.back()));
    return states;
}

std::vector<ProductOperatorState> nmr_bell_sequence() {
    // Applied right to left as written: the x-pulse on spin 2 goes first.
    const std::vector<NmrPulse> pulses{
        {NmrPulse::Kind::RotX, -pi / 2, 2}, {NmrPulse::Kind::RotY, pi / 2, 1},
        {NmrPulse::Kind::Scalar, pi / 2, 0}, {NmrPulse::Kind::RotY, -pi / 2, 1},
        {NmrPulse::Kind::RotX, pi / 2, 2},
    };
    // Start from the pseudo-pure |00> reference.
    ProductOperatorState start;
    start.set("..", 0.25);
    start.set("z.", 0.5);
    start.set(".z", 0.5);
    start.set("zz", 0.5);
    std::vector<ProductOperatorState> states{start};
    for (const auto& p : pulses) states.push_back(nmr_pulse(p, states.back()));
    return states;
}

std::vector<NmrPulse> nmr_cnot_sequence() {
    return {
        {NmrPulse::Kind::RotY, pi / 2, 2},  {NmrPulse::Kind::Scalar, pi / 2, 0},
        {NmrPulse::Kind::RotZ, pi / 2, 1},  {NmrPulse::Kind::RotZ, -pi / 2, 2},
        {NmrPulse::Kind::RotY, -pi / 2, 2},
    };
}

// ---------------------------------------------------------------------
// Kane donor pair

KaneParams KaneParams::phosphorus_silicon(double B, double J) {
    // Frequency units (energy / h). mu_B/h = 13.996 GHz/T, mu_N/h =
    // 7.6226 MHz/T, g_e = 2, g_n = 2.26.
    KaneParams p;
    p.A = 2.0 * 58e6;
    p.J = J;
    p.gamma_e_bar = -2.0 * 13.996244936e9;
    p.gamma_n_bar = 2.26 * 7.6225932e6;
    p.B = B;
    return p;
}

double kane_splitting(const KaneParams& p) {
    return p.gamma_n_bar * p.B + p.A / 2.0 -
           p.A * p.A / (4.0 * p.gamma_e_bar * p.B);
}

double kane_exchange(double r_angstrom, double bohr_radius_angstrom, double epsilon) {
    if (r_angstrom <= 0 || bohr_radius_angstrom <= 0)
        throw std::invalid_argument("kane_exchange: positive distances required");
    const double coulomb_ev = 14.3996 / (epsilon * bohr_radius_angstrom);  // e^2/(eps aB)
    const double x = r_angstrom / bohr_radius_angstrom;
    return 1.6 * coulomb_ev * std::pow(x, 2.5) * std::exp(-2.0 * x);
}

std::array<double, 4> kane_sector_levels(const KaneParams& p) {
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    const double geb = p.gamma_e_bar * p.B, gnb = p.gamma_n_bar * p.B;
    h(0, 0) = p.J / 4 + geb;
    h(1, 1) = p.J / 4 + geb;
    h(2, 2) = -p.J / 4 + gnb;
    h(3, 3) = -p.J / 4 + gnb;
    h(0, 3) = h(3, 0) = p.A / 2;
    h(1, 2) = h(2, 1) = p.A / 2;
    h(2, 3) = h(3, 2) = p.J / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(h, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2), es.eigenvalues()(3)};
}

double kane_omega_j_exact(const KaneParams& p) {
    const double d = (p.gamma_n_bar - p.gamma_e_bar) * p.B;
    const double e_s_minus = p.J / 4 - 0.5 * std::hypot(d, p.A);
    const double e_a_minus = -p.J / 4 - 0.5 * std::hypot(d - p.J, p.A);
    return e_s_minus - e_a_minus;  // common Zeeman offset cancels
}

double kane_omega_j_perturbative(const KaneParams& p) {
    const double geb = std::abs(p.gamma_e_bar) * p.B;
    if (!(p.A < 0.25 * geb))
        throw std::invalid_argument("perturbative splitting requires A << |gamma_e| B");
    if (!(p.J < geb))
        throw std::invalid_argument("perturbative splitting requires J < |gamma_e| B");
    return p.A * p.A / 4.0 * (1.0 / (geb - p.J) - 1.0 / geb);
}

}  // namespace hw
}  // namespace qit

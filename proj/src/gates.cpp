#include "qit/gates.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qit {
namespace gates {

namespace {

using std::numbers::pi;
const cplx I_(0.0, 1.0);

std::vector<cplx> identity_matrix(std::size_t n) {
    std::vector<cplx> m(n * n, cplx(0, 0));
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    return m;
}

Gate make(std::string name, int arity, std::vector<cplx> m, std::vector<double> params = {},
          int local_dim = 2) {
    Gate g{std::move(name), arity, local_dim, std::move(params), std::move(m)};
    if (!is_unitary(g.matrix, g.dim()))
        throw std::invalid_argument("gate '" + g.name + "' is not unitary");
    return g;
}

std::vector<cplx> rz(double a) {
    return {std::exp(-I_ * a / 2.0), 0, 0, std::exp(I_ * a / 2.0)};
}
std::vector<cplx> ry(double a) {
    return {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)};
}
std::vector<cplx> rx(double a) {
    return {std::cos(a / 2), -I_ * std::sin(a / 2), -I_ * std::sin(a / 2), std::cos(a / 2)};
}

std::vector<cplx> s_theta(double a) {
    // i e^{-i a sigma_x / 2}: rotates about x then multiplies by i.
    return {I_ * std::cos(a / 2), std::sin(a / 2), std::sin(a / 2), I_ * std::cos(a / 2)};
}

}  // namespace

std::size_t Gate::dim() const {
    std::size_t d = 1;
    for (int i = 0; i < arity; ++i) d *= local_dim;
    return d;
}

void Circuit::add(Gate g, std::vector<int> targets) {
    if (static_cast<int>(targets.size()) != g.arity)
        throw std::invalid_argument("step target count != gate arity");
    for (int t : targets)
        if (t < 0 || t >= num_sites) throw std::invalid_argument("step target out of range");
    if (g.local_dim != local_dim) throw std::invalid_argument("gate local_dim mismatch");
    steps.push_back(Step{std::move(g), std::move(targets)});
}

Gate standard_gate(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("gate '" + name + "' expects " + std::to_string(n) +
                                        " parameter(s)");
    };
    const double rs2 = 1.0 / std::sqrt(2.0);

    if (name == "I") { want(0); return make("I", 1, identity_matrix(2)); }
    if (name == "X") { want(0); return make("X", 1, {0, 1, 1, 0}); }
    // Y is -i sigma_y, real antisymmetric. The teleportation correction
    // table keys on this convention.
    if (name == "Y") { want(0); return make("Y", 1, {0, -1, 1, 0}); }
    if (name == "Z") { want(0); return make("Z", 1, {1, 0, 0, -1}); }
    if (name == "H") { want(0); return make("H", 1, {rs2, rs2, rs2, -rs2}); }
    if (name == "SQRT_NOT") {
        want(0);
        const cplx p(0.5, 0.5), m(0.5, -0.5);
        return make("SQRT_NOT", 1, {p, m, m, p});
    }
    if (name == "RX") { want(1); return make("RX", 1, rx(params[0]), params); }
    if (name == "RY") { want(1); return make("RY", 1, ry(params[0]), params); }
    if (name == "RZ") { want(1); return make("RZ", 1, rz(params[0]), params); }
    if (name == "PH") {
        want(1);
        const cplx p = std::exp(I_ * params[0]);
        return make("PH", 1, {p, 0, 0, p}, params);
    }
    if (name == "E") {
        want(1);
        return make("E", 1, {1, 0, 0, std::exp(I_ * params[0])}, params);
    }
    if (name == "S") { want(1); return make("S", 1, s_theta(params[0]), params); }
    if (name == "U2") {
        want(4);
        EulerDecomposition e{params[0], params[1], params[2], params[3]};
        return make("U2", 1, euler_reconstruct(e), params);
    }
    if (name == "CNOT") {
        want(0);
        // Gate digit 1 is the control, digit 0 the target.
        auto m = identity_matrix(4);
        std::swap(m[2 * 4 + 2], m[3 * 4 + 2]);
        std::swap(m[2 * 4 + 3], m[3 * 4 + 3]);
        return make("CNOT", 2, std::move(m));
    }
    if (name == "CPH") {
        want(1);
        auto m = identity_matrix(4);
        m[3 * 4 + 3] = std::exp(I_ * params[0]);
        return make("CPH", 2, std::move(m), params);
    }
    if (name == "SWAP") {
        want(0);
        auto m = identity_matrix(4);
        std::swap(m[1 * 4 + 1], m[2 * 4 + 1]);
        std::swap(m[1 * 4 + 2], m[2 * 4 + 2]);
        return make("SWAP", 2, std::move(m));
    }
    if (name == "SQRT_SWAP") {
        want(0);
        const cplx p(0.5, 0.5), m(0.5, -0.5);
        return make("SQRT_SWAP", 2, {1, 0, 0, 0, 0, p, m, 0, 0, m, p, 0, 0, 0, 0, 1});
    }
    if (name == "TOFFOLI") {
        want(0);
        // Controls are digits 2 and 1, target digit 0.
        auto m = identity_matrix(8);
        std::swap(m[6 * 8 + 6], m[7 * 8 + 6]);
        std::swap(m[6 * 8 + 7], m[7 * 8 + 7]);
        return make("TOFFOLI", 3, std::move(m));
    }
    if (name == "FREDKIN") {
        want(0);
        // Control digit 2, swapped pair digits 1 and 0.
        auto m = identity_matrix(8);
        std::swap(m[5 * 8 + 5], m[6 * 8 + 5]);
        std::swap(m[5 * 8 + 6], m[6 * 8 + 6]);
        return make("FREDKIN", 3, std::move(m));
    }
    if (name == "D") {
        want(1);
        auto m = identity_matrix(8);
        auto s = s_theta(params[0]);
        m[6 * 8 + 6] = s[0];
        m[6 * 8 + 7] = s[1];
        m[7 * 8 + 6] = s[2];
        m[7 * 8 + 7] = s[3];
        return make("D", 3, std::move(m), params);
    }
    throw std::invalid_argument("unknown gate name '" + name + "'");
}

Gate fourier_gate(int d) {
    if (d == 2) return standard_gate("H");
    std::vector<cplx> m(static_cast<std::size_t>(d) * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            m[static_cast<std::size_t>(b) * d + a] = s * std::exp(I_ * (2.0 * pi * a * b / d));
    return make("F", 1, std::move(m), {}, d);
}

Gate controlled_phase_d(int d, double theta) {
    if (d == 2) return standard_gate("CPH", {theta});
    std::vector<cplx> m(static_cast<std::size_t>(d) * d * d * d, cplx(0, 0));
    const std::size_t dim = static_cast<std::size_t>(d) * d;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const std::size_t idx = static_cast<std::size_t>(b) * d + a;
            m[idx * dim + idx] = std::exp(I_ * (theta * a * b));
        }
    Gate g{"CPH", 2, d, {theta}, std::move(m)};
    return g;
}

Gate swap_gate_d(int d) {
    if (d == 2) return standard_gate("SWAP");
    const std::size_t dim = static_cast<std::size_t>(d) * d;
    std::vector<cplx> m(dim * dim, cplx(0, 0));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            m[(static_cast<std::size_t>(a) * d + b) * dim + (static_cast<std::size_t>(b) * d + a)] =
                1.0;
    Gate g{"SWAP", 2, d, {}, std::move(m)};
    return g;
}

Gate adjoint(const Gate& g) {
    Gate out = g;
    out.name = g.name + "_adj";
    out.params.clear();
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.matrix[j * n + i] = std::conj(g.matrix[i * n + j]);
    return out;
}

// ---------------------------------------------------------------------
// Euler / ABC decomposition

EulerDecomposition euler_decompose(const std::vector<cplx>& u) {
    if (u.size() != 4 || !is_unitary(u, 2))
        throw std::invalid_argument("euler_decompose: input is not a 2x2 unitary");
    const cplx det = u[0] * u[3] - u[1] * u[2];
    const double delta = std::arg(det) / 2.0;
    const cplx phase = std::exp(-I_ * delta);
    const cplx b00 = phase * u[0];
    const cplx b10 = phase * u[2];

    const double beta = 2.0 * std::atan2(std::abs(b10), std::abs(b00));
    double alpha = 0, gamma = 0;
    const double eps = 1e-12;
    if (std::abs(b00) > eps && std::abs(b10) > eps) {
        const double sum = -2.0 * std::arg(b00);
        const double diff = 2.0 * std::arg(b10);
        alpha = (sum + diff) / 2.0;
        gamma = (sum - diff) / 2.0;
    } else if (std::abs(b00) > eps) {  // beta ~ 0
        alpha = -2.0 * std::arg(b00);
    } else {  // beta ~ pi
        alpha = 2.0 * std::arg(b10);
    }
    return EulerDecomposition{delta, alpha, beta, gamma};
}

std::vector<cplx> euler_reconstruct(const EulerDecomposition& e) {
    auto m = mat_mul(mat_mul(rz(e.alpha), ry(e.beta), 2), rz(e.gamma), 2);
    const cplx p = std::exp(I_ * e.delta);
    for (cplx& v : m) v *= p;
    return m;
}

AbcFactors abc_factors(const std::vector<cplx>& u_bar) {
    if (u_bar.size() != 4 || !is_unitary(u_bar, 2))
        throw std::invalid_argument("abc_factors: input is not a 2x2 unitary");
    const cplx det = u_bar[0] * u_bar[3] - u_bar[1] * u_bar[2];
    if (std::abs(det - cplx(1, 0)) > kAlgebraTol)
        throw std::invalid_argument("abc_factors: determinant != 1 (not SU(2))");
    const EulerDecomposition e = euler_decompose(u_bar);
    AbcFactors f;
    f.u1 = mat_mul(rz(e.alpha), ry(e.beta / 2), 2);
    f.u2 = mat_mul(ry(-e.beta / 2), rz(-(e.alpha + e.gamma) / 2), 2);
    f.u3 = rz((-e.alpha + e.gamma) / 2);
    return f;
}

// ---------------------------------------------------------------------
// Controlled-U synthesis over {1-qubit gates, CNOT}

namespace {

Gate unary_gate(const std::vector<cplx>& m) {
    const EulerDecomposition e = euler_decompose(m);
    return standard_gate("U2", {e.delta, e.alpha, e.beta, e.gamma});
}

// Singly-controlled U: U3, CNOT, U2, CNOT, U1 on the target plus the phase
// gate E(delta) on the control. 6 gates.
void emit_cu(Circuit& c, const std::vector<cplx>& u, int control, int target) {
    const EulerDecomposition e = euler_decompose(u);
    const cplx ph = std::exp(-I_ * e.delta);
    std::vector<cplx> ubar = u;
    for (cplx& v : ubar) v *= ph;
    const AbcFactors f = abc_factors(ubar);
    c.add(unary_gate(f.u3), {target});
    c.add(standard_gate("CNOT"), {target, control});
    c.add(unary_gate(f.u2), {target});
    c.add(standard_gate("CNOT"), {target, control});
    c.add(unary_gate(f.u1), {target});
    c.add(standard_gate("E", {e.delta}), {control});
}

void emit_cnx(Circuit& c, std::vector<int> controls, int target, std::vector<int> borrowed);

void emit_cnu(Circuit& c, const std::vector<cplx>& u, std::vector<int> controls, int target,
              std::vector<int> borrowed) {
    const int n = static_cast<int>(controls.size());
    if (n == 0) {
        c.add(unary_gate(u), {target});
        return;
    }
    if (n == 1) {
        emit_cu(c, u, controls[0], target);
        return;
    }
    const std::vector<cplx> v = mat_sqrt_2x2_unitary(u);
    std::vector<cplx> v_dag(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v_dag[j * 2 + i] = std::conj(v[i * 2 + j]);

    const int last = controls.back();
    std::vector<int> rest(controls.begin(), controls.end() - 1);
    std::vector<int> cnx_borrowed = borrowed;
    cnx_borrowed.push_back(target);
    std::vector<int> rec_borrowed = borrowed;
    rec_borrowed.push_back(last);

    emit_cu(c, v, last, target);
    emit_cnx(c, rest, last, cnx_borrowed);
    emit_cu(c, v_dag, last, target);
    emit_cnx(c, rest, last, cnx_borrowed);
    emit_cnu(c, v, rest, target, rec_borrowed);
}

// m-controlled X with m-2 borrowed wires: the 4(m-2) Toffoli ladder, each
// Toffoli expanded through the generic recursion (20 basic gates).
void emit_cnx_ladder(Circuit& c, const std::vector<int>& controls, int target,
                     const std::vector<int>& work) {
    const int m = static_cast<int>(controls.size());
    auto toffoli = [&](int a, int b, int t) {
        emit_cnu(c, standard_gate("X").matrix, {a, b}, t, {});
    };
    auto half = [&]() {
        toffoli(controls[m - 1], work[m - 3], target);
        for (int k = m - 4; k >= 0; --k) toffoli(controls[k + 2], work[k], work[k + 1]);
        toffoli(controls[0], controls[1], work[0]);
        for (int k = 0; k <= m - 4; ++k) toffoli(controls[k + 2], work[k], work[k + 1]);
    };
    half();
    half();
}

void emit_cnx(Circuit& c, std::vector<int> controls, int target, std::vector<int> borrowed) {
    const int m = static_cast<int>(controls.size());
    if (m == 0) {
        c.add(standard_gate("X"), {target});
        return;
    }
    if (m == 1) {
        c.add(standard_gate("CNOT"), {target, controls[0]});
        return;
    }
    if (m == 2) {
        emit_cnu(c, standard_gate("X").matrix, controls, target, borrowed);
        return;
    }
    if (static_cast<int>(borrowed.size()) >= m - 2) {
        emit_cnx_ladder(c, controls, target,
                        std::vector<int>(borrowed.begin(), borrowed.begin() + (m - 2)));
        return;
    }
    if (borrowed.empty())
        throw std::invalid_argument("emit_cnx: need at least one spare wire");
    // Split through one borrowed wire; each half borrows the other half's
    // controls.
    const int h = (m + 1) / 2;
    const int b = borrowed[0];
    std::vector<int> g1(controls.begin(), controls.begin() + h);
    std::vector<int> g2(controls.begin() + h, controls.end());
    std::vector<int> borrow1 = g2;
    borrow1.push_back(target);
    std::vector<int> borrow2 = g1;
    std::vector<int> g2b = g2;
    g2b.push_back(b);
    for (int rep = 0; rep < 2; ++rep) {
        emit_cnx(c, g1, b, borrow1);
        emit_cnx(c, g2b, target, borrow2);
    }
}

std::uint64_t cnx_count_impl(int m, int borrowed) {
    if (m == 0) return 1;
    if (m == 1) return 1;
    if (m == 2) return 20;
    if (borrowed >= m - 2) return 80ull * (m - 2);
    const int h = (m + 1) / 2;
    return 2 * (cnx_count_impl(h, m - h + 1) + cnx_count_impl(m - h + 1, h));
}

}  // namespace

Circuit synthesize_controlled_u(const std::vector<cplx>& u, int num_controls) {
    if (num_controls < 1) throw std::invalid_argument("num_controls must be >= 1");
    if (u.size() != 4 || !is_unitary(u, 2))
        throw std::invalid_argument("synthesize_controlled_u: input is not a 2x2 unitary");
    Circuit c;
    c.num_sites = num_controls + 1;
    std::vector<int> controls(num_controls);
    for (int i = 0; i < num_controls; ++i) controls[i] = i;
    emit_cnu(c, u, controls, num_controls, {});
    return c;
}

std::uint64_t cnx_gate_count(int num_controls) { return cnx_count_impl(num_controls, 1); }

std::uint64_t controlled_u_gate_count(int num_controls) {
    if (num_controls < 1) throw std::invalid_argument("num_controls must be >= 1");
    if (num_controls == 1) return 6;
    return controlled_u_gate_count(num_controls - 1) + 12 +
           2 * cnx_count_impl(num_controls - 1, 1);
}

std::vector<cplx> dense_controlled_u(const std::vector<cplx>& u, int num_controls) {
    const std::uint64_t dim = 1ull << (num_controls + 1);
    const std::uint64_t all_ones = (1ull << num_controls) - 1;
    std::vector<cplx> m(dim * dim, cplx(0, 0));
    for (std::uint64_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
    const std::uint64_t i0 = all_ones;                          // target 0, controls all 1
    const std::uint64_t i1 = (1ull << num_controls) | all_ones;  // target 1
    m[i0 * dim + i0] = u[0];
    m[i0 * dim + i1] = u[1];
    m[i1 * dim + i0] = u[2];
    m[i1 * dim + i1] = u[3];
    return m;
}

// ---------------------------------------------------------------------
// QFT

Circuit qft_circuit(int K, int d) {
    if (K < 1 || d < 2) throw std::invalid_argument("qft_circuit: K >= 1, d >= 2 required");
    Circuit c;
    c.num_sites = K;
    c.local_dim = d;
    for (int l = K - 1; l >= 0; --l) {
        c.add(fourier_gate(d), {l});
        for (int j = l - 1; j >= 0; --j) {
            const double theta = 2.0 * pi / std::pow(static_cast<double>(d), l - j + 1);
            c.add(controlled_phase_d(d, theta), {j, l});
        }
    }
    for (int i = 0; i < K / 2; ++i) c.add(swap_gate_d(d), {i, K - 1 - i});
    return c;
}

// ---------------------------------------------------------------------
// Execution

StateVector run(const Circuit& c, const StateVector& s, int site_offset) {
    StateVector out = s;
    for (const Step& step : c.steps) {
        std::vector<int> targets = step.targets;
        for (int& t : targets) t += site_offset;
        out = apply_unitary(out, step.gate.matrix, targets);
    }
    return out;
}

std::vector<cplx> circuit_unitary(const Circuit& c, std::uint64_t dim_cap) {
    std::uint64_t dim = 1;
    for (int i = 0; i < c.num_sites; ++i) dim *= c.local_dim;
    if (dim > dim_cap) throw std::invalid_argument("circuit_unitary: dimension cap exceeded");
    std::vector<cplx> m(dim * dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        StateVector psi = run(c, StateVector::basis(c.local_dim, c.num_sites, col));
        for (std::uint64_t row = 0; row < dim; ++row) m[row * dim + col] = psi[row];
    }
    return m;
}

double phase_aligned_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("phase_aligned_distance: size mismatch");
    cplx tr(0, 0);
    for (std::size_t i = 0; i < a.size(); ++i) tr += std::conj(b[i]) * a[i];
    // Align b to a with the optimal global phase, then subtract directly;
    // this stays accurate down to machine precision where the norm-based
    // form cancels catastrophically.
    const cplx phase = std::abs(tr) > 0 ? tr / std::abs(tr) : cplx(1, 0);
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - phase * b[i]);
    return std::sqrt(sum);
}

std::vector<cplx> mat_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t n) {
    std::vector<cplx> out(n * n, cplx(0, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a[i * n + k] * b[k * n + j];
    return out;
}

std::vector<cplx> mat_sqrt_2x2_unitary(const std::vector<cplx>& u) {
    Eigen::Matrix2cd m;
    m << u[0], u[1], u[2], u[3];
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
    Eigen::Vector2cd ev = es.eigenvalues();
    Eigen::Matrix2cd v = es.eigenvectors();
    Eigen::Matrix2cd s = v *
                         Eigen::Vector2cd(std::sqrt(ev(0)), std::sqrt(ev(1))).asDiagonal() *
                         v.inverse();
    return {s(0, 0), s(0, 1), s(1, 0), s(1, 1)};
}

// ---------------------------------------------------------------------
// JSON

std::string circuit_to_json(const Circuit& c) {
    nlohmann::ordered_json j;
    j["sites"] = c.num_sites;
    j["local_dim"] = c.local_dim;
    j["steps"] = nlohmann::ordered_json::array();
    for (const Step& s : c.steps) {
        nlohmann::ordered_json step;
        step["gate"] = s.gate.name;
        step["params"] = s.gate.params;
        step["targets"] = s.targets;
        j["steps"].push_back(step);
    }
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Circuit c;
    c.num_sites = j.at("sites").get<int>();
    c.local_dim = j.value("local_dim", 2);
    for (const auto& step : j.at("steps")) {
        const std::string name = step.at("gate").get<std::string>();
        const std::vector<double> params =
            step.value("params", std::vector<double>{});
        Gate g = [&] {
            if (c.local_dim == 2) return standard_gate(name, params);
            if (name == "F") return fourier_gate(c.local_dim);
            if (name == "CPH") return controlled_phase_d(c.local_dim, params.at(0));
            if (name == "SWAP") return swap_gate_d(c.local_dim);
            throw std::invalid_argument("cannot rebuild gate '" + name + "' for local_dim " +
                                        std::to_string(c.local_dim));
        }();
        c.add(std::move(g), step.at("targets").get<std::vector<int>>());
    }
    return c;
}

}  // namespace gates
}  // namespace qit
